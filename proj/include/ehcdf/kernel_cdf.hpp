#ifndef EHCDF_KERNEL_CDF_HPP
#define EHCDF_KERNEL_CDF_HPP

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/distributions.hpp"

namespace ehcdf {

/// Sheather-Jones solve-the-equation bandwidth for a Gaussian kernel
/// density estimate (exact pairwise sums, no binning).
/// Throws std::invalid_argument for n < 3 or zero scale, std::runtime_error
/// when the pilot functionals are not usable.
double sj_bandwidth(const Sample& s);

/// (1/n) sum_i Phi((x - X_i)/h), summed over every observation.
double ekcdf_eval(const Sample& s, double h, double x);

/// Smoothed CDF with a +-10h window over the sorted sample; terms outside
/// the window are exactly 0 or 1 at double precision.
class KernelCdf {
 public:
  KernelCdf(const Sample& s, double h);
  double operator()(double x) const;
  double bandwidth() const { return h_; }
  const std::vector<double>& sorted() const { return x_; }

 private:
  std::vector<double> x_;
  double h_;
};

/// ||F_hat - F||_p for the kernel CDF; p may be kSupNorm.
double ekcdf_lp_error(const KernelCdf& fhat, const Distribution& f, double p);

}  // namespace ehcdf

#endif  // EHCDF_KERNEL_CDF_HPP
