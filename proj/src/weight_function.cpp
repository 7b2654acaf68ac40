#include "ehcdf/weight_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ehcdf/special_fn.hpp"

namespace ehcdf {

namespace {

constexpr std::size_t kMaxDegree = 16;

double choose(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

void check_unit_interval(double a, double b) {
  if (!(a >= 0.0 && b <= 1.0 && a <= b)) {
    throw std::domain_error("WeightFunction::integral: need 0 <= a <= b <= 1");
  }
}

}  // namespace

WeightFunction WeightFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  if (coeffs.size() > kMaxDegree + 1) {
    throw std::invalid_argument("WeightFunction: polynomial degree above 16");
  }
  WeightFunction w(Kind::polynomial);
  w.a_ = std::move(coeffs);
  return w;
}

WeightFunction WeightFunction::tabulated(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() < 2 || grid.size() != values.size() || grid.front() != 0.0 ||
      grid.back() != 1.0 || !std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw std::invalid_argument(
        "WeightFunction: tabulated grid must increase strictly from 0 to 1");
  }
  WeightFunction w(Kind::tabulated);
  w.cum_.assign(grid.size(), 0.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    w.cum_[i] = w.cum_[i - 1] + 0.5 * (values[i - 1] + values[i]) * (grid[i] - grid[i - 1]);
  }
  w.grid_ = std::move(grid);
  w.a_ = std::move(values);
  return w;
}

WeightFunction WeightFunction::beta_mixture(std::vector<double> c) {
  if (c.empty()) throw std::invalid_argument("WeightFunction: empty beta mixture");
  WeightFunction w(Kind::beta_mixture);
  w.a_ = std::move(c);
  return w;
}

WeightFunction WeightFunction::shifted_legendre(int r) {
  if (r < 0 || static_cast<std::size_t>(r) > kMaxDegree) {
    throw std::invalid_argument("shifted_legendre: need 0 <= r <= 16");
  }
  std::vector<double> c(r + 1);
  for (int k = 0; k <= r; ++k) {
    const double sign = ((r - k) % 2 == 0) ? 1.0 : -1.0;
    c[k] = sign * choose(r, k) * choose(r + k, k);
  }
  return polynomial(std::move(c));
}

double WeightFunction::value(double u) const {
  switch (kind_) {
    case Kind::polynomial: {
      double s = 0.0;
      for (auto it = a_.rbegin(); it != a_.rend(); ++it) s = s * u + *it;
      return s;
    }
    case Kind::tabulated: {
      if (u <= grid_.front()) return a_.front();
      if (u >= grid_.back()) return a_.back();
      const auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
      const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
      const double t = (u - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
      return a_[i - 1] + t * (a_[i] - a_[i - 1]);
    }
    case Kind::beta_mixture: {
      const int m = static_cast<int>(a_.size());
      if (u <= 0.0) return m * a_.front();
      if (u >= 1.0) return m * a_.back();
      double s = 0.0;
      for (int j = 1; j <= m; ++j) s += a_[j - 1] * beta_pdf(BetaParams(j, m), u);
      return s;
    }
  }
  return 0.0;
}

double WeightFunction::antiderivative(double u) const {
  switch (kind_) {
    case Kind::polynomial: {
      double s = 0.0;
      for (std::size_t k = a_.size(); k-- > 0;) s = s * u + a_[k] / (k + 1.0);
      return s * u;
    }
    case Kind::tabulated: {
      const auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
      const std::size_t i = std::min<std::size_t>(
          std::max<std::size_t>(static_cast<std::size_t>(it - grid_.begin()), 1),
          grid_.size() - 1);
      const double x0 = grid_[i - 1];
      const double v0 = a_[i - 1];
      const double vu = value(u);
      return cum_[i - 1] + 0.5 * (v0 + vu) * (u - x0);
    }
    case Kind::beta_mixture: {
      const int m = static_cast<int>(a_.size());
      double s = 0.0;
      for (int j = 1; j <= m; ++j) s += a_[j - 1] * beta_cdf(BetaParams(j, m), u);
      return s;
    }
  }
  return 0.0;
}

double WeightFunction::integral(double a, double b) const {
  check_unit_interval(a, b);
  if (a == b) return 0.0;
  return antiderivative(b) - antiderivative(a);
}

}  // namespace ehcdf
