#ifndef BILLIARD_GEOMETRY_HPP
#define BILLIARD_GEOMETRY_HPP

#include <memory>
#include <optional>
#include <vector>

#include "billiard/core.hpp"
#include "billiard/errors.hpp"

namespace billiard {

// Smooth scalar field along an arc (deformation profiles, etc.).
// Must supply two derivatives in the arc's arclength variable.
class ScalarFn {
 public:
  virtual ~ScalarFn() = default;
  virtual double value(double s) const = 0;
  virtual double d1(double s) const = 0;
  virtual double d2(double s) const = 0;
};

struct RayHit {
  double t;        // distance along the ray
  double s_local;  // arclength on the piece
};

// Strictly convex boundary piece with unit-speed parameter s in [0, length].
// Traversal follows the table's counter-clockwise orientation, so the inward
// normal is perp(tangent) and the signed curvature is negative (the arcs
// focus; flats carry zero curvature).
class Arc : public std::enable_shared_from_this<Arc> {
 public:
  virtual ~Arc() = default;
  virtual double length() const = 0;
  virtual Vec2 position(double s) const = 0;
  virtual Vec2 tangent(double s) const = 0;
  virtual double curvature(double s) const = 0;             // signed, < 0
  virtual double curvature_derivative(double s) const = 0;  // d(curvature)/ds
  // All intersections of the ray origin + t*dir with the arc, t > t_min.
  virtual void ray_intersections(const Vec2& origin, const Vec2& dir,
                                 double t_min,
                                 std::vector<RayHit>& out) const = 0;
  virtual std::shared_ptr<const Arc> transformed(const Iso2& iso,
                                                 bool reverse) const = 0;

  Vec2 inward_normal(double s) const { return perp(tangent(s)); }
};

std::shared_ptr<const Arc> make_circular_arc(const Vec2& center, double radius,
                                             double theta_begin,
                                             double theta_end);

// Graph y = p(x) for x in [x0, x1] carried into the plane by a rotation and
// translation; `reverse` flips the traversal direction. Strict convexity and
// the curvature sign are checked by sampling at construction.
std::shared_ptr<const Arc> make_polygraph_arc(const std::vector<double>& coeffs,
                                              double x0, double x1,
                                              const Vec2& origin, double angle,
                                              bool reverse,
                                              int convexity_samples = 512);

// Normal displacement of a base arc: s0 -> P(s0) + mu*f(s0)*N_out(s0),
// reparametrized by its own arclength. Used by deformation families.
std::shared_ptr<const Arc> make_displaced_arc(std::shared_ptr<const Arc> base,
                                              std::shared_ptr<const ScalarFn> f,
                                              double mu);

struct Segment {
  Vec2 p0, p1;
  double length() const { return dist(p0, p1); }
  Vec2 direction() const { return normalized(p1 - p0); }
  Vec2 point(double s) const {
    Vec2 d = direction();
    return p0 + s * d;
  }
};

struct Piece {
  bool is_arc = false;
  std::shared_ptr<const Arc> arc;  // when is_arc
  Segment seg;                     // when flat
  int label = 0;                   // 1..4; double covers reuse base labels
  bool mirrored = false;           // piece lives on the reflected copy
  double s0 = 0.0;                 // cumulative arclength at piece start
  double len = 0.0;

  Vec2 position(double s) const { return is_arc ? arc->position(s) : seg.point(s); }
  Vec2 tangent(double s) const { return is_arc ? arc->tangent(s) : seg.direction(); }
  double curvature(double s) const { return is_arc ? arc->curvature(s) : 0.0; }
};

struct BoundaryPoint {
  double r = 0.0;
  Vec2 position;
  Vec2 tangent;
  Vec2 inward_normal;
  double curvature = 0.0;  // signed: negative on arcs, zero on flats
  int piece = -1;
  int label = 0;
  double s_local = 0.0;
};

struct TableSpec {
  enum class Kind { kStadium, kSquash, kDoubleCover };

  Kind kind = Kind::kStadium;
  std::vector<Piece> pieces;  // CCW order, chained
  double perimeter = 0.0;
  std::vector<Vec2> gluing_points;
  std::vector<double> gluing_r;
  std::vector<double> curvature_jumps;
  std::string name;

  double reduce(double r) const;  // into [0, perimeter)
  BoundaryPoint at(double r) const;
  int piece_at(double r, double* s_local) const;
  // first piece with the given label (canonical 2+2 layout)
  const Piece& piece_of_label(int label) const;
  int piece_index_of_label(int label) const;
  double r_of(int piece_index, double s_local) const;
  // circular distance of r to the nearest gluing point
  double gluing_distance(double r) const;
};

// Validates chaining, C1 gluing, orientation; fills cumulative data.
TableSpec assemble_table(std::vector<Piece> pieces, TableSpec::Kind kind,
                         const std::string& name,
                         double c1_tol = 1e-10);

// Canonical builders.  std_stadium(R, L): semicircle caps of radius R joined
// by two parallel flats of length L.  squash_standard(R1, R2, tau): circular
// arcs of radii R1, R2 with apexes tau apart, joined by their common outer
// tangent lines (flats are not parallel when R1 != R2).
TableSpec make_stadium(double R, double L);
TableSpec make_weak_stadium();
TableSpec make_squash_standard(double R1, double R2, double tau);

struct DefocusReport {
  bool holds = false;
  double worst_margin = 0.0;
  double witness_r1 = 0.0;  // r-coordinates of the worst pair
  double witness_r2 = 0.0;
  Vec2 witness_p1, witness_p2;
};

// Samples P1 x P2 over arc pairs (label 1 against label 2, including
// reflected copies on a double cover), compares each chord against the
// osculating-circle chords at both ends, refines around the worst cell.
DefocusReport check_defocusing(const TableSpec& table, int grid = 256);

TableSpec double_cover(const TableSpec& table, int flat_label);

// Dense-sampling diameter estimate with local refinement (no Newton); serves
// as the independent check for the period-two free path.
double table_diameter(const TableSpec& table, int grid = 2048);

}  // namespace billiard

#endif
