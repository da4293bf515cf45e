#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace lpuniq {

/// Tolerances used throughout. Identities compare relatively; inequalities get
/// an absolute floor plus a term proportional to the larger side.
struct Tolerance {
  double identity = 1e-12;
  double inequality_abs = 1e-9;
  double inequality_rel = 1e-9;

  double for_inequality(double lhs, double rhs) const {
    return inequality_abs + inequality_rel * std::max(std::abs(lhs), std::abs(rhs));
  }
};

/// Recursive pairwise summation. Falls back to a plain loop below the block size.
double pairwise_sum(std::span<const double> terms);

/// Sum that switches to pairwise_sum once it holds more than 10^4 terms.
class Accumulator {
 public:
  void add(double term) { terms_.push_back(term); }
  double total() const;
  std::size_t size() const noexcept { return terms_.size(); }

 private:
  std::vector<double> terms_;
};

/// log(sum(exp(logs))) evaluated with the max shifted out; -inf for an empty input.
double log_sum_exp(std::span<const double> logs);

/// |a - b| <= rel * max(1, |a|, |b|).
bool nearly_equal(double a, double b, double rel);

/// Root of an increasing function on [lo, hi] by bisection until the bracket
/// is shorter than abs_tol. Requires f(lo) < 0 <= f(hi).
double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         double abs_tol = 1e-12);

/// Least-squares line through (x_i, y_i).
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< root-mean-square residual
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Deterministic generator. Floats are built from the raw 64-bit stream so
/// sequences are identical across standard-library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

/// Shortest decimal text that round-trips: 17 significant digits.
std::string format_double(double value);

}  // namespace lpuniq
