// Test-only independent oracles: finite differences, quadrature, sampling.
// These deliberately avoid the library's analytic derivative paths.
#ifndef BILLIARD_TESTS_ORACLES_HPP
#define BILLIARD_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "billiard/dynamics.hpp"
#include "billiard/geometry.hpp"

namespace oracles {

using billiard::PhasePoint;
using billiard::TableSpec;
using billiard::Vec2;

// Simpson integration of a scalar function.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      int n = 2048) {
  if (n % 2) ++n;
  double h = (b - a) / n, acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// chord length between boundary points as a plain function of (r, r1)
inline double chord_len(const TableSpec& t, double r, double r1) {
  return billiard::dist(t.at(r).position, t.at(r1).position);
}

// central finite differences of the chord length
inline double fd_dr(const TableSpec& t, double r, double r1, double h = 1e-6) {
  return (chord_len(t, r + h, r1) - chord_len(t, r - h, r1)) / (2 * h);
}
inline double fd_dr1(const TableSpec& t, double r, double r1, double h = 1e-6) {
  return (chord_len(t, r, r1 + h) - chord_len(t, r, r1 - h)) / (2 * h);
}
inline double fd_drr(const TableSpec& t, double r, double r1, double h = 2e-4) {
  return (chord_len(t, r + h, r1) - 2 * chord_len(t, r, r1) +
          chord_len(t, r - h, r1)) /
         (h * h);
}
inline double fd_drr1(const TableSpec& t, double r, double r1, double h = 2e-4) {
  return (chord_len(t, r + h, r1 + h) - chord_len(t, r + h, r1 - h) -
          chord_len(t, r - h, r1 + h) + chord_len(t, r - h, r1 - h)) /
         (4 * h * h);
}
inline double fd_dr1r1(const TableSpec& t, double r, double r1, double h = 2e-4) {
  return (chord_len(t, r, r1 + h) - 2 * chord_len(t, r, r1) +
          chord_len(t, r, r1 - h)) /
         (h * h);
}

// circular difference of arclength coordinates
inline double rdiff(const TableSpec& t, double a, double b) {
  double d = std::abs(t.reduce(a) - t.reduce(b));
  return std::min(d, t.perimeter - d);
}

// central finite differences of the billiard map in (r, phi)
struct MapJet {
  double drdr, drdphi, dphidr, dphidphi;
};

inline MapJet fd_map(const TableSpec& t, const PhasePoint& z, double h = 1e-6) {
  auto F = [&](double r, double phi) {
    return billiard::billiard_map(t, {r, phi}).z1;
  };
  PhasePoint rp = F(z.r + h, z.phi), rm = F(z.r - h, z.phi);
  PhasePoint pp = F(z.r, z.phi + h), pm = F(z.r, z.phi - h);
  auto dwrap = [&](double a, double b) {
    double d = t.reduce(a) - t.reduce(b);
    if (d > 0.5 * t.perimeter) d -= t.perimeter;
    if (d < -0.5 * t.perimeter) d += t.perimeter;
    return d;
  };
  MapJet j;
  j.drdr = dwrap(rp.r, rm.r) / (2 * h);
  j.drdphi = dwrap(pp.r, pm.r) / (2 * h);
  j.dphidr = (rp.phi - rm.phi) / (2 * h);
  j.dphidphi = (pp.phi - pm.phi) / (2 * h);
  return j;
}

// random phase points on the convex arcs, away from gluing points and
// tangential angles; only points whose map evaluation succeeds are returned
inline std::vector<PhasePoint> random_arc_points(const TableSpec& t, int n,
                                                 unsigned seed,
                                                 double phi_max = 1.2) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  std::vector<PhasePoint> out;
  while ((int)out.size() < n) {
    const billiard::Piece* p = nullptr;
    int idx = 0;
    while (true) {
      idx = (int)(ur(rng) * t.pieces.size());
      if (t.pieces[idx].is_arc) {
        p = &t.pieces[idx];
        break;
      }
    }
    double s = (0.02 + 0.96 * ur(rng)) * p->len;
    double phi = (2.0 * ur(rng) - 1.0) * phi_max;
    PhasePoint z{t.r_of(idx, s), phi};
    try {
      billiard::billiard_map(t, z);
      billiard::billiard_map(t, {z.r, z.phi + 2e-6});
      billiard::billiard_map(t, {z.r, z.phi - 2e-6});
      billiard::billiard_map(t, {z.r + 2e-6, z.phi});
      billiard::billiard_map(t, {z.r - 2e-6, z.phi});
      out.push_back(z);
    } catch (const billiard::Error&) {
    }
  }
  return out;
}

}  // namespace oracles

#endif
