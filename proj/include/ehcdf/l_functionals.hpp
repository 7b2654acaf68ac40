#ifndef EHCDF_L_FUNCTIONALS_HPP
#define EHCDF_L_FUNCTIONALS_HPP

#include <optional>

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/weight_function.hpp"

namespace ehcdf {

/// T_w(G) = int_0^1 G^{-1}(u) w(u) du, summed exactly over the quantile steps.
double t_w(const StepCdf& g, const WeightFunction& w);

/// lambda_r(G) = T_{w_{r-1}}(G), r >= 1.
double l_moment(const StepCdf& g, int r);

/// MAD = 2 lambda_2, Sk = lambda_3 / lambda_2, Kurt = lambda_4 / lambda_2.
/// The ratios are empty when lambda_2 == 0.
struct LRatios {
  double mad = 0.0;
  std::optional<double> skew;
  std::optional<double> kurt;
};

LRatios l_ratios(const StepCdf& g);

}  // namespace ehcdf

#endif  // EHCDF_L_FUNCTIONALS_HPP
