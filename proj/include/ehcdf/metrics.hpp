#ifndef EHCDF_METRICS_HPP
#define EHCDF_METRICS_HPP

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/distributions.hpp"

namespace ehcdf {

/// Exact W_p between two step CDFs by merging their cumulative breakpoints.
double wasserstein_step_step(const StepCdf& g, const StepCdf& h, double p);

/// W_p(G, F) = (sum_k int_{c_{k-1}}^{c_k} |x_k - Q(t)|^p dt)^{1/p}, each
/// interval split at F(x_k). Throws QuadratureError when the tail diverges.
double wasserstein_step_cont(const StepCdf& g, const Distribution& f, double p);

}  // namespace ehcdf

#endif  // EHCDF_METRICS_HPP
