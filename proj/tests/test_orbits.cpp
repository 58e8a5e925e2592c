#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "billiard/numeric.hpp"
#include "billiard/orbits.hpp"
#include "oracles.hpp"

using namespace billiard;

TEST_CASE("code parsing and admissibility") {
  SymbolicCode c = SymbolicCode::parse("2(12)^4");
  CHECK(c.str() == "212121212");
  CHECK(SymbolicCode::parse("323(12)^2 1").str() == "32312121");
  CHECK_THROWS_AS(SymbolicCode::parse("2(12"), InvalidCode);
  CHECK_THROWS_AS(SymbolicCode::parse("95"), InvalidCode);
  SymbolicCode bad;
  bad.word = {3, 3, 1};
  CHECK_THROWS_AS(bad.check_admissible(false), InvalidCode);
  SymbolicCode flats_only;
  flats_only.word = {3, 4};
  CHECK_THROWS_AS(flats_only.check_admissible(false), InvalidCode);
  SymbolicCode ones;
  ones.word = {1, 1, 2};
  CHECK_THROWS_AS(ones.check_admissible(false), InvalidCode);
  CHECK_NOTHROW(ones.check_admissible(true));
}

TEST_CASE("period two orbit") {
  SUBCASE("std-stadium") {
    TableSpec t = make_stadium(1.0, 2.0);
    OrbitResult p2 = period_two(t);
    CHECK(p2.feasible);
    CHECK(p2.total_length == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(p2.chord_lengths[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(p2.points[0].phi) < 1e-10);
    CHECK(std::abs(p2.points[1].phi) < 1e-10);
    CHECK(p2.hessian_definite);
    CHECK(p2.grad_norm < 1e-10);
    // feet at the arc apexes on the symmetry axis
    CHECK(oracles::rdiff(t, p2.points[0].r, 0.5 * t.pieces[0].len) < 1e-9);
  }
  SUBCASE("weak stadium") {
    OrbitResult p2 = period_two(make_weak_stadium());
    CHECK(p2.total_length == doctest::Approx(4.4).epsilon(1e-12));
  }
  SUBCASE("synthetic squash") {
    OrbitResult p2 = period_two(make_squash_standard(1.0, 1.25, 3.0));
    CHECK(p2.total_length == doctest::Approx(6.0).epsilon(1e-10));
  }
}

TEST_CASE("rotation orbits on the weak stadium") {
  TableSpec t = make_weak_stadium();

  SUBCASE("basic solve and replay") {
    OrbitResult g = rotation_orbit(t, 1, 2);
    CHECK(g.feasible);
    CHECK(g.code.period() == 3);
    CHECK(g.grad_norm < 1e-10);
    CHECK(g.hessian_definite);
    CHECK(g.code.winding == 1);
    // middle collision near the arc1 apex
    CHECK(oracles::rdiff(t, g.points[1].r, 0.5 * t.pieces[0].len) < 0.2);
  }

  SUBCASE("uniqueness probe via multistart") {
    SolveOptions opts;
    opts.multistart = 16;
    opts.rng_seed = 2024;
    CHECK_NOTHROW(rotation_orbit(t, 1, 2, opts));
    CHECK_NOTHROW(rotation_orbit(t, 2, 3, opts));
  }

  SUBCASE("gamma(2) beats gamma(3), n = 1..6") {
    for (int n = 1; n <= 6; ++n) {
      OrbitResult g2 = rotation_orbit(t, n, 2);
      OrbitResult g3 = rotation_orbit(t, n, 3);
      CHECK(g2.feasible);
      CHECK(g3.feasible);
      CHECK(g2.total_length > g3.total_length);
      // symmetric family has equal collision counts on the two arcs
      int c1 = 0, c2 = 0;
      for (int l : g3.code.word) c1 += (l == 1), c2 += (l == 2);
      CHECK(c1 == c2);
      int d1 = 0, d2 = 0;
      for (int l : g2.code.word) d1 += (l == 1), d2 += (l == 2);
      CHECK(d1 != d2);
    }
  }

  SUBCASE("stable-direction decay of the collision offsets") {
    // |s_k| <= C Lambda^{-k} with Lambda from the flat-seed expansion factor
    OrbitResult p2 = period_two(t);
    double lam_bound = expansion_factor(t, p2.points[0]);
    OrbitResult g = rotation_orbit(t, 10, 2);
    std::vector<double> ks, vals;
    for (int k = 1; k <= 8; ++k) {
      // arc1 collisions sit at word positions 1, 3, 5, ...
      double s = oracles::rdiff(t, g.points[2 * k - 1].r, p2.points[0].r);
      ks.push_back(k);
      vals.push_back(s);
    }
    LineFit f = fit_log_rate(ks, vals);
    CHECK(-f.b >= 0.95 * std::log(lam_bound));
  }
}

TEST_CASE("palindromic orbits") {
  TableSpec t = make_stadium(1.0, 2.0);

  SUBCASE("gamma_1 structure") {
    OrbitResult g = palindromic_orbit(t, 1);
    CHECK(g.feasible);
    CHECK(g.code.period() == 6);  // 2n + 4
    CHECK(g.code.str() == "323121");
    // phi sequence of the arc stage is antisymmetric (time reversal)
    int n = 1;
    for (int j = 1; j <= n; ++j) {
      double a = g.points[2 + j].phi;
      double b = g.points[2 + (2 * n + 2 - j)].phi;
      CHECK(a == doctest::Approx(-b).epsilon(1e-9));
    }
    CHECK(std::abs(g.points[2 + n + 1].phi) < 1e-9);
  }

  SUBCASE("short flats lose the palindromic excursion") {
    // on weak-stadium the n >= 2 excursion chord crosses the flat line
    // outside the 0.2-long segment: the unique variational critical point is
    // not a billiard orbit, and the solver must say so
    TableSpec w = make_weak_stadium();
    OrbitResult g1 = palindromic_orbit(w, 1);
    CHECK(g1.feasible);
    CHECK_THROWS_AS(palindromic_orbit(w, 2), InfeasibleOrbit);
  }

  SUBCASE("intermediate stadium family, middle perpendicularity") {
    TableSpec w = make_stadium(1.0, 0.5);
    for (int n : {1, 2, 3, 5, 8}) {
      OrbitResult g = palindromic_orbit(w, n);
      CHECK(g.feasible);
      CHECK(g.code.period() == 2 * n + 4);
      CHECK(std::abs(g.points[2 + n + 1].phi) < 1e-9);
    }
    OrbitResult gh = palindromic_orbit(w, 2, true);
    CHECK(gh.feasible);
    CHECK(gh.code.str() == "31321212");
  }

  SUBCASE("shadowing of successive palindromic orbits") {
    TableSpec w = make_stadium(1.0, 0.5);
    OrbitResult p2 = period_two(w);
    double lam_bound = expansion_factor(w, p2.points[0]);
    std::vector<OrbitResult> orbits;
    for (int n = 6; n <= 12; ++n) orbits.push_back(palindromic_orbit(w, n));
    for (int i = 0; i + 2 < (int)orbits.size(); i += 2) {
      const OrbitResult& a = orbits[i];      // n
      const OrbitResult& b = orbits[i + 1];  // n + 1
      int n = 6 + i;
      // distance between the k-th stage collisions grows like Lambda^{2k-2n}
      std::vector<double> ks, ds;
      for (int k = 1; k <= n; ++k) {
        double dr = oracles::rdiff(w, a.points[2 + k].r, b.points[2 + k].r);
        double dphi = std::abs(a.points[2 + k].phi - b.points[2 + k].phi);
        double d = std::hypot(dr, dphi);
        if (d > 1e-13) {
          ks.push_back(k);
          ds.push_back(d);
        }
      }
      REQUIRE(ks.size() >= 4);
      LineFit f = fit_log_rate(ks, ds);
      // slope approx 2 log Lambda (within the lemma's one-sided bound)
      CHECK(f.b >= 2.0 * 0.90 * std::log(lam_bound));
    }
  }
}

TEST_CASE("marked length maximum") {
  TableSpec t = make_weak_stadium();
  MarkedLengthEntry e = marked_length_max(t, 3);
  CHECK(e.candidates_examined == 3);
  CHECK_FALSE(e.partial);
  CHECK(e.argmax_code.word[0] == 2);  // the gamma^(2) family wins
  CHECK(e.max_length > 0.0);

  MarkedLengthEntry e9 = marked_length_max(t, 9);
  CHECK(e9.argmax_code.word[0] == 2);
  CHECK(e9.p == 4);  // rotation number (q-1)/2q = 4/9
  // the 3- and 4-flat candidates tie on a symmetric table
  bool tied34 = false;
  for (const auto& c : e9.tied_codes)
    if (c.word[0] == 3 || c.word[0] == 4) tied34 = true;
  double l3 = -1, l4 = -2;
  for (const auto& [code, len] : e9.candidate_lengths) {
    if (code[0] == '3') l3 = len;
    if (code[0] == '4') l4 = len;
  }
  CHECK(l3 == doctest::Approx(l4).epsilon(1e-12));
  CHECK_FALSE(tied34);  // both lose to 2-type by a clear margin
}

TEST_CASE("degenerate and failing codes") {
  SUBCASE("non-concave ridge on the big squash arc") {
    // diameters of the arc-2 circle form a one-parameter family of critical
    // chords: the Hessian is singular there
    TableSpec sq = make_squash_standard(1.0, 1.25, 3.0);
    SymbolicCode c;
    c.word = {2, 2};
    SolveOptions opts;
    opts.require_feasible = true;
    OrbitResult r = solve_code(sq, c, {}, opts);
    CHECK(r.feasible);
    CHECK(r.chord_lengths[0] == doctest::Approx(2.5).epsilon(1e-9));
    CHECK_FALSE(r.hessian_definite);  // NonConcave: reported, not fatal
  }
  SUBCASE("same-arc diameter leaves a semicircle cap") {
    TableSpec t = make_stadium(1.0, 2.0);
    SymbolicCode c;
    c.word = {2, 2};
    CHECK_THROWS_AS(solve_code(t, c, {}, {}), Error);
  }
}
