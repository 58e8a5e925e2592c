#include "billiard/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace billiard {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                 const std::vector<double>& w) {
  if (x.size() != y.size() || x.size() < 2)
    throw FitUnstable("line fit needs at least two points");
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double wi = w.empty() ? 1.0 : w[i];
    sw += wi;
    sx += wi * x[i];
    sy += wi * y[i];
    sxx += wi * x[i] * x[i];
    sxy += wi * x[i] * y[i];
  }
  double det = sw * sxx - sx * sx;
  if (std::abs(det) < 1e-300) throw FitUnstable("degenerate abscissae in line fit");
  LineFit f;
  f.b = (sw * sxy - sx * sy) / det;
  f.a = (sy - f.b * sx) / sw;
  double ss = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (f.a + f.b * x[i]);
    ss += (w.empty() ? 1.0 : w[i]) * r * r;
  }
  f.residual_rms = std::sqrt(ss / sw);
  return f;
}

double aitken_limit(const std::vector<double>& x) {
  if (x.size() < 3) throw FitUnstable("Aitken needs at least three terms");
  std::vector<double> cur = x;
  while (cur.size() >= 3) {
    std::vector<double> nxt;
    for (size_t i = 0; i + 2 < cur.size(); ++i) {
      double d1 = cur[i + 1] - cur[i];
      double d2 = cur[i + 2] - 2.0 * cur[i + 1] + cur[i];
      if (std::abs(d2) < 1e-300) {
        nxt.push_back(cur[i + 2]);
      } else {
        nxt.push_back(cur[i + 2] - (cur[i + 2] - cur[i + 1]) *
                                       (cur[i + 2] - cur[i + 1]) / d2);
      }
    }
    if (nxt.size() < 3) return nxt.back();
    cur = std::move(nxt);
  }
  return cur.back();
}

GeometricFit fit_geometric_tail(const std::vector<double>& x) {
  size_t n = x.size();
  if (n < 3) throw FitUnstable("geometric fit needs at least three terms");
  auto solve3 = [&](size_t i) {
    double d1 = x[i + 1] - x[i];
    double d2 = x[i + 2] - x[i + 1];
    if (std::abs(d1) < 1e-300) throw FitUnstable("flat sequence in geometric fit");
    double rho = d2 / d1;
    if (!(std::abs(rho) < 1.0))
      throw FitUnstable("geometric fit ratio not contracting (|rho| >= 1)");
    double c_at_i = d1 / (rho - 1.0);
    GeometricFit g;
    g.ratio = rho;
    g.limit = x[i] - c_at_i;
    g.coeff = c_at_i / std::pow(rho, (double)i);
    return g;
  };
  GeometricFit last = solve3(n - 3);
  if (n >= 4) {
    GeometricFit prev = solve3(n - 4);
    last.stability = std::abs(last.limit - prev.limit);
  } else {
    last.stability = std::abs(x[n - 1] - last.limit);
  }
  return last;
}

LineFit fit_log_rate(const std::vector<double>& x, const std::vector<double>& y,
                     double floor) {
  std::vector<double> xs, ys;
  for (size_t i = 0; i < x.size(); ++i) {
    if (std::abs(y[i]) > floor) {
      xs.push_back(x[i]);
      ys.push_back(std::log(std::abs(y[i])));
    }
  }
  if (xs.size() < 2) throw InsufficientDecayWindow("too few points above the floor");
  return fit_line(xs, ys);
}

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  int n = (int)b.size();
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-300)
      throw NoConvergence("singular Newton system");
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    double d = a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      double f = a[r * n + col] / d;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * x[c];
    x[r] = s / a[r * n + r];
  }
  return x;
}

bool is_positive_definite(std::vector<double> a, int n, double shift) {
  for (int i = 0; i < n; ++i) a[i * n + i] += shift;
  for (int c = 0; c < n; ++c) {
    double d = a[c * n + c];
    for (int k = 0; k < c; ++k) d -= a[c * n + k] * a[c * n + k];
    if (!(d > 0.0)) return false;
    double sq = std::sqrt(d);
    a[c * n + c] = sq;
    for (int r = c + 1; r < n; ++r) {
      double v = a[r * n + c];
      for (int k = 0; k < c; ++k) v -= a[r * n + k] * a[c * n + k];
      a[r * n + c] = v / sq;
    }
  }
  return true;
}

}  // namespace billiard
