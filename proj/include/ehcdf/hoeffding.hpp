#ifndef EHCDF_HOEFFDING_HPP
#define EHCDF_HOEFFDING_HPP

#include <functional>
#include <span>
#include <vector>

#include "ehcdf/cdf_model.hpp"
#include "ehcdf/distributions.hpp"
#include "ehcdf/quadrature.hpp"
#include "ehcdf/weight_function.hpp"

namespace ehcdf {

/// mu[j-1] = E X_{j:m}; nondecreasing in j.
struct ExpectedOrderStats {
  int m = 0;
  std::vector<double> mu;
};

/// mu_{j:m} of a discrete law given by sorted locations x and cumulative
/// probabilities c (c.back() == 1). Uses the summation-by-parts form
///   mu_j = x_1 + sum_k (x_{k+1} - x_k) P(Bin(m, c_k) <= j - 1)
/// with windowed binomial pmfs, so the result is monotone by construction.
ExpectedOrderStats expected_order_stats(std::span<const double> x, std::span<const double> c,
                                        int m);

/// mu_hat_{j:m} = sum_i X_{i:n} [F_B(i/n) - F_B((i-1)/n)].
ExpectedOrderStats mu_hat(const Sample& s, int m);

/// Same quantity from m*n incomplete-beta increments. Reference route.
/// Throws std::logic_error if the output decreases by more than 1e-9.
ExpectedOrderStats mu_hat_direct(const Sample& s, int m);

/// mu_{j:m}(G) for a step CDF.
ExpectedOrderStats expected_order_stats(const StepCdf& g, int m);

/// int_0^1 Q(p) f_{B_{j:m}}(p) dp, relative tolerance 1e-8.
ExpectedOrderStats mu_true(const Distribution& f, int m);

/// Mass 1/m at each mu_{j:m}, ties merged.
StepCdf hoeffding_cdf(const ExpectedOrderStats& mu);

/// H_m(G).
StepCdf hoeffding_cdf(const StepCdf& g, int m);

/// The EHCDF F_{n,m} = H_m(F_n).
StepCdf ehcdf(const Sample& s, int m);

/// m = round(n^gamma), at least 1.
int m_from_gamma(std::size_t n, double gamma);

/// Step function on (0,1] taking values[j-1] on ((j-1)/m, j/m].
class MStepFunction {
 public:
  explicit MStepFunction(std::vector<double> values);
  int m() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double operator()(double p) const;
  double lp_norm(double p) const;

 private:
  std::vector<double> values_;
};

/// I_m(h): values int_0^1 h(t) f_{B_{j:m}}(t) dt.
MStepFunction i_m_apply(const std::function<double(UnitPoint)>& h, int m,
                        const QuadratureOptions& opts = {});

/// P_m[w](p) = sum_j f_{B_{j:m}}(p) c_j(w), c_j(w) = int_{(j-1)/m}^{j/m} w.
WeightFunction p_m_weight(const WeightFunction& w, int m);

}  // namespace ehcdf

#endif  // EHCDF_HOEFFDING_HPP
