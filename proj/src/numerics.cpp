#include "lpuniq/numerics.hpp"

#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace lpuniq {

namespace {
constexpr std::size_t kBlock = 64;
constexpr std::size_t kPairwiseThreshold = 10000;
}  // namespace

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= kBlock) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double Accumulator::total() const {
  if (terms_.size() > kPairwiseThreshold) return pairwise_sum(terms_);
  double s = 0.0;
  for (double t : terms_) s += t;
  return s;
}

double log_sum_exp(std::span<const double> logs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double l : logs) m = std::max(m, l);
  if (!std::isfinite(m)) return m;
  std::vector<double> scaled;
  scaled.reserve(logs.size());
  for (double l : logs) scaled.push_back(std::exp(l - m));
  return m + std::log(pairwise_sum(scaled));
}

bool nearly_equal(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double abs_tol) {
  if (!(f(lo) < 0.0) || f(hi) < 0.0)
    throw std::invalid_argument("bisect_increasing: root not bracketed");
  while (hi - lo > abs_tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares: need at least two matching points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  LinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace lpuniq
