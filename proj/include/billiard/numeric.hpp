#ifndef BILLIARD_NUMERIC_HPP
#define BILLIARD_NUMERIC_HPP

#include <cmath>
#include <functional>
#include <future>
#include <vector>

#include "billiard/core.hpp"
#include "billiard/errors.hpp"

namespace billiard {

// y ~ a + b x, optionally weighted; returns (a, b)
struct LineFit {
  double a = 0.0, b = 0.0;
  double residual_rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w = {});

// Geometric-sequence analysis for x_n = limit + c * rho^n (+ higher order).
// `fit_geometric_tail` does the exact three-point solve on the last triples
// and reports window stability; Aitken's delta-squared is the accelerator.
struct GeometricFit {
  double limit = 0.0;
  double ratio = 0.0;      // rho
  double coeff = 0.0;      // c, referenced to index 0 of the input
  double stability = 0.0;  // |limit change| when the window shifts by one
};

double aitken_limit(const std::vector<double>& x);
GeometricFit fit_geometric_tail(const std::vector<double>& x);

// least-squares slope of log|y| against x over indices with |y| > floor
LineFit fit_log_rate(const std::vector<double>& x, const std::vector<double>& y,
                     double floor = 0.0);

// Deterministic fan-out: applies fn to 0..n-1, preserving order.
template <typename T>
std::vector<T> parallel_map(int n, const std::function<T(int)>& fn) {
  std::vector<std::future<T>> futs;
  futs.reserve(n);
  for (int i = 0; i < n; ++i)
    futs.push_back(std::async(std::launch::async, fn, i));
  std::vector<T> out;
  out.reserve(n);
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

// Dense symmetric linear solve (LDL^T without pivoting would do for our
// definite systems; partial-pivoted LU keeps the fallback paths safe).
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

// Cholesky test for positive definiteness of a dense symmetric matrix.
bool is_positive_definite(std::vector<double> a, int n, double shift = 0.0);

}  // namespace billiard

#endif
