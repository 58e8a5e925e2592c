#include "billiard/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace billiard {

namespace {

// First boundary hit of the ray from a point on piece `from_piece` at local
// arclength `from_s`; returns (piece, s_local, t).
struct FirstHit {
  int piece = -1;
  double s_local = 0.0;
  double t = 0.0;
};

FirstHit first_boundary_hit(const TableSpec& table, const Vec2& origin,
                            const Vec2& dir, int from_piece, double from_s) {
  FirstHit best;
  best.t = std::numeric_limits<double>::infinity();
  std::vector<RayHit> hits;
  double scale = table.perimeter;
  for (size_t i = 0; i < table.pieces.size(); ++i) {
    const Piece& p = table.pieces[i];
    hits.clear();
    if (p.is_arc) {
      p.arc->ray_intersections(origin, dir, 1e-12 * scale, hits);
    } else {
      // segment: solve origin + t dir = p0 + w direction
      Vec2 d2 = p.seg.direction();
      double den = cross(dir, d2);
      if (std::abs(den) > 1e-15) {
        Vec2 w0 = p.seg.p0 - origin;
        double t = cross(w0, d2) / den;
        double w = cross(w0, dir) / den;
        if (t > 1e-12 * scale && w >= -1e-12 && w <= p.len + 1e-12)
          hits.push_back({t, std::clamp(w, 0.0, p.len)});
      }
    }
    for (const RayHit& h : hits) {
      // skip the departure point itself
      if ((int)i == from_piece && std::abs(h.s_local - from_s) < 1e-9 * scale &&
          h.t < 1e-6 * scale)
        continue;
      if (h.t < best.t) {
        best.t = h.t;
        best.piece = (int)i;
        best.s_local = h.s_local;
      }
    }
  }
  return best;
}

}  // namespace

MapStep billiard_map(const TableSpec& table, const PhasePoint& z,
                     const DynamicsOptions& opts) {
  if (std::abs(std::abs(z.phi) - 0.5 * kPi) < opts.tangential_tol)
    throw TangentialShot("|phi| = pi/2 at departure (r=" + std::to_string(z.r) + ")");
  BoundaryPoint b = table.at(z.r);
  Vec2 v = std::cos(z.phi) * b.inward_normal + std::sin(z.phi) * b.tangent;
  FirstHit hit = first_boundary_hit(table, b.position, v, b.piece, b.s_local);
  if (hit.piece < 0)
    throw InfeasibleChord("ray from r=" + std::to_string(z.r) +
                          " does not return to the boundary");
  double r1 = table.r_of(hit.piece, hit.s_local);
  if (table.gluing_distance(r1) < opts.gluing_exclusion)
    throw GluingHit("collision lands within the gluing exclusion zone at r=" +
                    std::to_string(r1));
  BoundaryPoint b1 = table.at(r1);
  double sin1 = dot(v, b1.tangent);
  double cos1 = -dot(v, b1.inward_normal);
  if (cos1 <= 0.0)
    throw InfeasibleChord("ray meets the boundary from outside at r=" +
                          std::to_string(r1));
  MapStep out;
  out.z1 = {r1, std::atan2(sin1, cos1)};
  out.tau = hit.t;
  return out;
}

Mat2 map_differential(const TableSpec& table, const PhasePoint& z,
                      const DynamicsOptions& opts) {
  MapStep step = billiard_map(table, z, opts);
  double K = table.at(z.r).curvature;
  double K1 = table.at(step.z1.r).curvature;
  double c = std::cos(z.phi), c1 = std::cos(step.z1.phi);
  double tau = step.tau;
  double f = -1.0 / c1;
  return {f * (tau * K + c), f * tau,
          f * (tau * K * K1 + K * c1 + K1 * c), f * (tau * K1 + c1)};
}

PathHessian free_path_jet(const TableSpec& table, double r, double r1) {
  BoundaryPoint a = table.at(r);
  BoundaryPoint b = table.at(r1);
  double tau = dist(a.position, b.position);
  if (tau < 1e-12)
    throw DegenerateChord("chord endpoints coincide (r=" + std::to_string(r) + ")");
  Vec2 u = (b.position - a.position) * (1.0 / tau);
  double cphi = dot(u, a.inward_normal);
  double cphi1 = -dot(u, b.inward_normal);
  if (cphi <= 0.0 || cphi1 <= 0.0)
    throw InfeasibleChord("chord leaves the table at an endpoint");
  FirstHit hit = first_boundary_hit(table, a.position, u, a.piece, a.s_local);
  if (hit.piece >= 0 && hit.t < tau * (1.0 - 1e-9))
    throw InfeasibleChord("chord crosses the boundary before reaching r1");

  PathHessian out;
  out.tau = tau;
  out.d_r = -dot(u, a.tangent);
  out.d_r1 = dot(u, b.tangent);
  out.d_rr = a.curvature * cphi + cphi * cphi / tau;
  out.d_rr1 = cphi * cphi1 / tau;
  out.d_r1r1 = b.curvature * cphi1 + cphi1 * cphi1 / tau;
  return out;
}

double expansion_factor(const TableSpec& table, const PhasePoint& z,
                        const DynamicsOptions& opts) {
  BoundaryPoint b = table.at(z.r);
  if (!(b.curvature < 0.0))
    throw InvalidTable("expansion factor requires a convex-arc collision");
  double d = -std::cos(z.phi) / b.curvature;
  double bplus = -2.0 / d;
  MapStep step = billiard_map(table, z, opts);
  return std::abs(1.0 + step.tau * bplus);
}

}  // namespace billiard
