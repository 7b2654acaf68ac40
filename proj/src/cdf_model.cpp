#include "ehcdf/cdf_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ehcdf {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("Sample: empty sample");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Sample: non-finite value");
  }
  sorted_ = values_;
  std::sort(sorted_.begin(), sorted_.end());
}

double Sample::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / values_.size();
}

StepCdf::StepCdf(std::vector<double> locations, std::vector<double> masses) {
  if (locations.size() != masses.size() || locations.empty()) {
    throw std::invalid_argument("StepCdf: need equally many (>= 1) locations and masses");
  }
  std::vector<std::size_t> order(locations.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return locations[a] < locations[b]; });
  double total = 0.0;
  for (std::size_t idx : order) {
    const double x = locations[idx];
    const double w = masses[idx];
    if (!std::isfinite(x) || !(w >= 0.0)) {
      throw std::invalid_argument("StepCdf: locations must be finite and masses >= 0");
    }
    if (w == 0.0) continue;
    total += w;
    if (!loc_.empty() && loc_.back() == x) {
      mass_.back() += w;
      cum_.back() = total;
    } else {
      loc_.push_back(x);
      mass_.push_back(w);
      cum_.push_back(total);
    }
  }
  if (loc_.empty() || std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("StepCdf: masses sum to " + std::to_string(total) +
                                ", expected 1");
  }
  cum_.back() = 1.0;
}

StepCdf StepCdf::equal_mass(std::vector<double> points) {
  if (points.empty()) throw std::invalid_argument("StepCdf::equal_mass: no points");
  std::sort(points.begin(), points.end());
  const double m = static_cast<double>(points.size());
  StepCdf out;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (!std::isfinite(points[k])) {
      throw std::invalid_argument("StepCdf::equal_mass: non-finite point");
    }
    const double c = static_cast<double>(k + 1) / m;
    if (!out.loc_.empty() && out.loc_.back() == points[k]) {
      out.cum_.back() = c;
    } else {
      out.loc_.push_back(points[k]);
      out.cum_.push_back(c);
    }
  }
  out.mass_.resize(out.loc_.size());
  double prev = 0.0;
  for (std::size_t k = 0; k < out.loc_.size(); ++k) {
    out.mass_[k] = out.cum_[k] - prev;
    prev = out.cum_[k];
  }
  return out;
}

StepCdf StepCdf::point_mass(double x) { return StepCdf({x}, {1.0}); }

double StepCdf::eval(double x) const {
  const auto it = std::upper_bound(loc_.begin(), loc_.end(), x);
  return it == loc_.begin() ? 0.0 : cum_[static_cast<std::size_t>(it - loc_.begin()) - 1];
}

double StepCdf::eval_left(double x) const {
  const auto it = std::lower_bound(loc_.begin(), loc_.end(), x);
  return it == loc_.begin() ? 0.0 : cum_[static_cast<std::size_t>(it - loc_.begin()) - 1];
}

double StepCdf::quantile(double p) const {
  if (!(p > 0.0 && p <= 1.0)) {
    throw std::domain_error("StepCdf::quantile: p = " + std::to_string(p) +
                            " outside (0, 1]");
  }
  const auto it = std::lower_bound(cum_.begin(), cum_.end(), p);
  if (it == cum_.end()) return loc_.back();
  return loc_[static_cast<std::size_t>(it - cum_.begin())];
}

double StepCdf::mean() const {
  double s = 0.0;
  for (std::size_t k = 0; k < loc_.size(); ++k) s += loc_[k] * mass_[k];
  return s;
}

void StepCdf::write_csv(std::ostream& out) const {
  out << "location,mass\n";
  char buf[64];
  for (std::size_t k = 0; k < loc_.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", loc_[k], mass_[k]);
    out << buf;
  }
}

StepCdf StepCdf::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("StepCdf::read_csv: empty input");
  std::vector<double> loc;
  std::vector<double> mass;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("StepCdf::read_csv: malformed row \"" + line + "\"");
    }
    loc.push_back(std::stod(line.substr(0, comma)));
    mass.push_back(std::stod(line.substr(comma + 1)));
  }
  return StepCdf(std::move(loc), std::move(mass));
}

StepCdf ecdf(const Sample& s) { return StepCdf::equal_mass(s.sorted()); }

namespace {

std::vector<double> merged_locations(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> z;
  z.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(z));
  z.erase(std::unique(z.begin(), z.end()), z.end());
  return z;
}

double pow_p(double d, double p) { return p == 1.0 ? d : std::pow(d, p); }

}  // namespace

double lp_distance_step_step(const StepCdf& g, const StepCdf& h, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_distance: need p >= 1");
  const auto z = merged_locations(g.locations(), h.locations());
  if (std::isinf(p)) {
    double best = 0.0;
    for (double x : z) best = std::max(best, std::fabs(g.eval(x) - h.eval(x)));
    return best;
  }
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const double d = std::fabs(g.eval(z[k]) - h.eval(z[k]));
    if (d > 0.0) sum += pow_p(d, p) * (z[k + 1] - z[k]);
  }
  return std::pow(sum, 1.0 / p);
}

namespace {

QuadratureOptions tail_options() {
  QuadratureOptions opts;
  opts.rel_tol = 1e-10;
  opts.abs_tol = 1e-11;
  return opts;
}

}  // namespace

double lower_tail_lp(const Distribution& f, double a, double p) {
  return integrate_unit(
      [&](UnitPoint t) { return p * pow_p(t.t, p - 1.0) * (a - f.quantile_at(t)); }, 0.0,
      f.cdf(a), tail_options(), f.quantile_breaks());
}

double upper_tail_lp(const Distribution& f, double b, double p) {
  std::vector<double> upper_breaks;
  for (double c : f.quantile_breaks()) upper_breaks.push_back(1.0 - c);
  return integrate_unit(
      [&](UnitPoint s) {
        const double q = s.t <= 0.5 ? f.quantile_upper(s.t) : f.quantile(s.tc);
        return p * pow_p(s.t, p - 1.0) * (q - b);
      },
      0.0, f.sf(b), tail_options(), upper_breaks);
}

double lp_distance_step_cont(const StepCdf& g, const Distribution& f, double p) {
  if (!(p >= 1.0)) throw std::domain_error("lp_distance: need p >= 1");
  const Support sup = f.support();
  const auto f_atoms = f.atoms();

  if (std::isinf(p)) {
    auto z = merged_locations(g.locations(), f_atoms);
    if (std::isfinite(sup.lower)) z.push_back(sup.lower);
    if (std::isfinite(sup.upper)) z.push_back(sup.upper);
    double best = 0.0;
    for (double x : z) {
      best = std::max(best, std::fabs(g.eval_left(x) - f.cdf_left(x)));
      best = std::max(best, std::fabs(g.eval(x) - f.cdf(x)));
    }
    return best;
  }

  const auto& loc = g.locations();
  const double median = f.quantile(0.5);
  const double xl = std::isfinite(sup.lower) ? std::min(sup.lower, loc.front())
                                             : std::min(median, loc.front());
  const double xr = std::isfinite(sup.upper) ? std::max(sup.upper, loc.back())
                                             : std::max(median, loc.back());

  std::vector<double> z = merged_locations(loc, f.kinks());
  z.push_back(xl);
  z.push_back(xr);
  if (sup.kind == SupportKind::continuous) {
    // Level crossings G = F are kinks of |G - F|.
    for (double c : g.cumulative()) {
      if (c < 1.0) z.push_back(f.quantile(c));
    }
  }
  z.erase(std::remove_if(z.begin(), z.end(),
                         [&](double x) { return !(x >= xl && x <= xr); }),
          z.end());
  std::sort(z.begin(), z.end());
  z.erase(std::unique(z.begin(), z.end()), z.end());

  double sum = 0.0;
  const double seg_tol = 1e-9 / static_cast<double>(std::max<std::size_t>(z.size(), 1));
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const double u = z[k];
    const double v = z[k + 1];
    const double level = g.eval(u);
    const double w = v - u;
    // x = u + w(3s^2 - 2s^3) has zero slope at both ends, which smooths the
    // sqrt-type behaviour of F next to a support edge with unbounded density.
    auto integrand = [&](double s) {
      const double x = u + w * s * s * (3.0 - 2.0 * s);
      const double fx = (x >= v) ? f.cdf_left(v) : f.cdf(x);
      return pow_p(std::fabs(level - fx), p) * 6.0 * w * s * (1.0 - s);
    };
    try {
      sum += adaptive_simpson(integrand, 0.0, 1.0, seg_tol);
    } catch (const QuadratureError&) {
      throw QuadratureError("lp_distance_step_cont: segment failed", u, v);
    }
  }

  if (!std::isfinite(sup.lower)) sum += lower_tail_lp(f, xl, p);
  if (!std::isfinite(sup.upper)) sum += upper_tail_lp(f, xr, p);
  return std::pow(sum, 1.0 / p);
}

}  // namespace ehcdf
