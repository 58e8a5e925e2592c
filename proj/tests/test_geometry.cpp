#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "billiard/geometry.hpp"
#include "oracles.hpp"

using namespace billiard;

namespace {
const double kApexR1 = kPi / 2.0;  // arc1 apex arclength on std-stadium
}

TEST_CASE("std-stadium layout and boundary frames") {
  TableSpec t = make_stadium(1.0, 2.0);
  CHECK(t.pieces.size() == 4);
  CHECK(t.perimeter == doctest::Approx(2.0 * kPi + 4.0).epsilon(1e-14));

  BoundaryPoint apex1 = t.at(kApexR1);
  CHECK(apex1.position.x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(apex1.position.y) < 1e-12);
  CHECK(apex1.curvature == doctest::Approx(-1.0));
  CHECK(apex1.label == 1);

  // flat3 midpoint: zero curvature, tangent along the flat
  double r_flat2 = t.pieces[1].s0 + 0.5 * t.pieces[1].len;
  BoundaryPoint f = t.at(r_flat2);
  CHECK(f.curvature == 0.0);
  CHECK(std::abs(f.tangent.y) < 1e-14);
  CHECK(f.label == 3);
  CHECK(f.inward_normal.y == doctest::Approx(1.0));

  // periodicity and frame orthonormality at random r
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ur(0.0, t.perimeter);
  for (int k = 0; k < 200; ++k) {
    double r = ur(rng);
    BoundaryPoint a = t.at(r);
    BoundaryPoint b = t.at(r + t.perimeter);
    CHECK(dist(a.position, b.position) < 1e-12);
    CHECK(std::abs(dot(a.tangent, a.inward_normal)) < 1e-12);
    CHECK(norm(a.tangent) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(norm(a.inward_normal) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("arclength consistency against quadrature") {
  TableSpec t = make_weak_stadium();
  auto speed = [&](double r) {
    double h = 1e-6;
    return dist(t.at(r + h).position, t.at(r - h).position) / (2.0 * h);
  };
  // integrate |dP/dr| over a window inside arc1 and across a gluing point
  double len1 = oracles::simpson(speed, 0.05, 1.20);
  CHECK(len1 == doctest::Approx(1.15).epsilon(1e-8));
  double across = oracles::simpson(speed, t.pieces[0].len - 0.05,
                                   t.pieces[0].len + 0.05);
  CHECK(across == doctest::Approx(0.10).epsilon(1e-6));
}

TEST_CASE("defocusing reports") {
  SUBCASE("std-stadium holds") {
    DefocusReport rep = check_defocusing(make_stadium(1.0, 2.0), 128);
    CHECK(rep.holds);
    CHECK(rep.worst_margin > 0.0);
  }
  SUBCASE("disk limit fails") {
    DefocusReport rep = check_defocusing(make_stadium(1.0, 0.0), 128);
    CHECK_FALSE(rep.holds);
    CHECK(std::abs(rep.worst_margin) < 1e-6);
  }
  SUBCASE("tilted squash holds via the double cover") {
    TableSpec sq = make_squash_standard(1.0, 1.1603, 4.0);
    CHECK(sq.kind == TableSpec::Kind::kSquash);
    DefocusReport rep = check_defocusing(sq, 96);
    CHECK(rep.holds);
  }
  SUBCASE("weak stadium is doubly defocusing") {
    TableSpec w = make_weak_stadium();
    DefocusReport base = check_defocusing(w, 128);
    DefocusReport cover = check_defocusing(double_cover(w, 3), 128);
    CHECK(base.holds);
    CHECK(cover.holds);
    // doubly defocusing is the stronger condition
    CHECK(cover.worst_margin <= base.worst_margin + 1e-12);
  }
}

TEST_CASE("double cover geometry") {
  TableSpec t = make_stadium(1.0, 2.0);
  TableSpec d = double_cover(t, 3);
  CHECK(d.pieces.size() == 6);
  CHECK(d.perimeter == doctest::Approx(2.0 * (t.perimeter - 2.0)).epsilon(1e-12));

  const Segment& m = t.piece_of_label(3).seg;
  Iso2 refl = Iso2::reflection(m.p0, m.direction());
  // reflected gluing points are mirror images of base gluing points
  for (const Vec2& g : t.gluing_points) {
    Vec2 img = refl.apply(g);
    double best = 1e300;
    for (const Vec2& h : d.gluing_points) best = std::min(best, dist(img, h));
    CHECK(best < 1e-12);
  }
  // reflection is an involution: mapping mirrored pieces back recovers arc1
  int mirrored_arc1 = -1;
  for (size_t i = 0; i < d.pieces.size(); ++i)
    if (d.pieces[i].label == 1 && d.pieces[i].mirrored) mirrored_arc1 = (int)i;
  REQUIRE(mirrored_arc1 >= 0);
  const Piece& ma = d.pieces[mirrored_arc1];
  const Piece& base = t.pieces[0];
  for (int k = 0; k <= 16; ++k) {
    double s = ma.len * k / 16.0;
    Vec2 back = refl.apply(ma.position(s));
    // mirrored copy reverses the traversal
    CHECK(dist(back, base.position(base.len - s)) < 1e-12);
    CHECK(ma.curvature(s) ==
          doctest::Approx(base.curvature(base.len - s)).epsilon(1e-12));
  }
}

TEST_CASE("polynomial graph arc") {
  // y = 0.1 x^2 on [-1, 1], rotated by 30 degrees
  double ang = kPi / 6.0;
  auto arc = make_polygraph_arc({0.0, 0.0, 0.1}, -1.0, 1.0, {0.5, -0.25}, ang,
                                false);
  double L = arc->length();
  auto ds = [&](double x) { return std::sqrt(1.0 + 0.04 * x * x); };
  CHECK(L == doctest::Approx(oracles::simpson(ds, -1.0, 1.0)).epsilon(1e-12));

  // curvature at the vertex (mid arclength by symmetry)
  CHECK(arc->curvature(0.5 * L) == doctest::Approx(-0.2).epsilon(1e-10));
  Vec2 tv = arc->tangent(0.5 * L);
  CHECK(tv.x == doctest::Approx(std::cos(ang)).epsilon(1e-10));
  CHECK(tv.y == doctest::Approx(std::sin(ang)).epsilon(1e-10));

  // curvature derivative against finite differences of curvature
  double h = 1e-5;
  for (double s : {0.3 * L, 0.62 * L, 0.8 * L}) {
    double fd = (arc->curvature(s + h) - arc->curvature(s - h)) / (2.0 * h);
    CHECK(arc->curvature_derivative(s) == doctest::Approx(fd).epsilon(1e-5));
  }

  // ray intersections match the analytic parabola intersection
  Vec2 p0 = arc->position(0.37 * L);
  Vec2 p1 = arc->position(0.81 * L);
  Vec2 dir = normalized(p1 - p0);
  std::vector<RayHit> hits;
  arc->ray_intersections(p0 - 0.5 * dir, dir, 1e-9, hits);
  REQUIRE(hits.size() >= 2);
  bool found = false;
  for (const auto& hh : hits)
    if (std::abs(hh.t - (0.5 + dist(p0, p1))) < 1e-9) found = true;
  CHECK(found);
}

TEST_CASE("table diameter sampling") {
  CHECK(table_diameter(make_stadium(1.0, 2.0)) ==
        doctest::Approx(4.0).epsilon(1e-9));
  CHECK(table_diameter(make_weak_stadium()) ==
        doctest::Approx(2.2).epsilon(1e-9));
  CHECK(table_diameter(make_squash_standard(1.0, 1.25, 3.0)) ==
        doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("invalid tables are rejected") {
  CHECK_THROWS_AS(make_squash_standard(1.0, 3.5, 3.0), InvalidTable);
  CHECK_THROWS_AS(make_circular_arc({0, 0}, -1.0, 0.0, 1.0), InvalidTable);
  // concave polynomial graph cannot be a convex arc
  CHECK_THROWS_AS(
      make_polygraph_arc({0.0, 0.0, -0.1}, -1.0, 1.0, {0, 0}, 0.0, false),
      InvalidTable);
}
