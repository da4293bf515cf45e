#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "lpuniq/graph.hpp"
#include "lpuniq/metric.hpp"

namespace testing {

inline lpuniq::GraphPtr lattice(int d) { return std::make_shared<lpuniq::LatticeGraph>(d); }
inline lpuniq::GraphPtr tree(int b) { return std::make_shared<lpuniq::RegularTreeGraph>(b); }

inline lpuniq::VertexId z(std::int64_t n) { return lpuniq::VertexId::lattice1(n); }
inline lpuniq::VertexId z2(std::int64_t a, std::int64_t b) { return lpuniq::VertexId::lattice({a, b}); }

inline std::vector<lpuniq::VertexId> interval(std::int64_t lo, std::int64_t hi) {
  std::vector<lpuniq::VertexId> out;
  for (std::int64_t n = lo; n <= hi; ++n) out.push_back(z(n));
  return out;
}

inline double rel_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

// Relative error bound used with CHECK: |a - b| <= rel * max(1, |a|, |b|).
inline bool close(double a, double b, double rel) { return rel_gap(a, b) <= rel; }

// Two-sided recurrence oracle for the boundary-one Dirichlet problem on
// {-R..R}: u(n) = (l^n + l^-n) / (l^R + l^-R), computed from the recurrence
// l^{k+1} = (2 + c0) l^k - l^{k-1} rather than from powers.
inline double interval_oracle(double c0, int R, int n) {
  // a_k = l^k + l^-k satisfies a_{k+1} = (2 + c0) a_k - a_{k-1}, a_0 = 2, a_1 = 2 + c0
  std::vector<double> a{2.0, 2.0 + c0};
  for (int k = 2; k <= R; ++k) a.push_back((2.0 + c0) * a[k - 1] - a[k - 2]);
  return a[static_cast<std::size_t>(std::abs(n))] / a[static_cast<std::size_t>(R)];
}

}  // namespace testing
