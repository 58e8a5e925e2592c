#ifndef BILLIARD_DYNAMICS_HPP
#define BILLIARD_DYNAMICS_HPP

#include "billiard/geometry.hpp"

namespace billiard {

// Collision coordinates: r is boundary arclength, phi in [-pi/2, pi/2] is the
// angle between the outgoing velocity and the inward normal, oriented so that
// the velocity is cos(phi) * N + sin(phi) * T.
struct PhasePoint {
  double r = 0.0;
  double phi = 0.0;
};

struct MapStep {
  PhasePoint z1;
  double tau = 0.0;
};

struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
  double det() const { return a11 * a22 - a12 * a21; }
  double trace() const { return a11 + a22; }
  Mat2 mul(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
            a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
  }
};

// Free path between boundary points r and r1 together with its first and
// second partials in the arclength coordinates.
struct PathHessian {
  double tau = 0.0;
  double d_r = 0.0, d_r1 = 0.0;          // -sin(phi), +sin(phi1)
  double d_rr = 0.0, d_rr1 = 0.0, d_r1r1 = 0.0;
};

struct DynamicsOptions {
  double gluing_exclusion = 1e-11;   // arclength radius around gluing points
  double tangential_tol = 1e-12;     // |phi - pi/2| below this is tangential
};

MapStep billiard_map(const TableSpec& table, const PhasePoint& z,
                     const DynamicsOptions& opts = {});

// Derivative of the billiard map in (r, phi), evaluated via the collision
// formula with the signed curvatures at both endpoints.
Mat2 map_differential(const TableSpec& table, const PhasePoint& z,
                      const DynamicsOptions& opts = {});

PathHessian free_path_jet(const TableSpec& table, double r, double r1);

// Per-step p-norm expansion of a flat incoming front at an arc collision:
// |1 + tau * Bplus| with Bplus = -2/d, d = -cos(phi)/K.
double expansion_factor(const TableSpec& table, const PhasePoint& z,
                        const DynamicsOptions& opts = {});

}  // namespace billiard

#endif
