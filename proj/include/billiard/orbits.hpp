#ifndef BILLIARD_ORBITS_HPP
#define BILLIARD_ORBITS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "billiard/dynamics.hpp"

namespace billiard {

// Finite word over {1,2,3,4}; 1,2 are the convex arcs, 3,4 the flats.
struct SymbolicCode {
  std::vector<int> word;
  int winding = 0;  // filled from the solved orbit

  int period() const { return (int)word.size(); }
  int arc_letters() const;
  std::string str() const;
  // compact string form, e.g. "2(12)^4" or "323(12)^2 1"
  static SymbolicCode parse(const std::string& text);
  // flats never repeat consecutively; at least one arc letter
  void check_admissible(bool allow_letter_one) const;
};

struct OrbitResult {
  SymbolicCode code;
  std::vector<PhasePoint> points;      // one collision per code letter
  std::vector<double> chord_lengths;   // step i: points[i] -> points[i+1]
  double total_length = 0.0;
  double grad_norm = 0.0;
  bool hessian_definite = false;
  bool feasible = false;
  int iterations = 0;
  std::vector<double> arc_params;      // solver variables (arc slots only)
  std::string infeasible_reason;
};

struct SolveOptions {
  std::uint64_t rng_seed = 12345;
  int max_iterations = 200;
  double grad_target = 1e-12;
  double grad_accept = 1e-10;
  int multistart = 0;        // extra perturbed starts, all must agree
  bool allow_letter_one = false;
  double replay_tol = 1e-8;
  bool require_feasible = true;  // throw InfeasibleOrbit when the replay fails
};

// Newton ascent on the total length over the arc collisions, with flat
// letters handled by unfolding (reflections composed per flat letter).
OrbitResult solve_code(const TableSpec& table, const SymbolicCode& code,
                       const std::optional<std::vector<double>>& seed = {},
                       const SolveOptions& opts = {});

// The maximal period-two orbit; also checks the free path against the
// sampled table diameter.
OrbitResult period_two(const TableSpec& table, const SolveOptions& opts = {});

// Code (i 12...12) with 2n alternations; rotation number n/(2n+1).
OrbitResult rotation_orbit(const TableSpec& table, int n, int i,
                           const SolveOptions& opts = {});

// Palindromic families: gamma_n = (323 12...121), hat variant swaps the arcs.
OrbitResult palindromic_orbit(const TableSpec& table, int n, bool hat = false,
                              const SolveOptions& opts = {});

struct MarkedLengthEntry {
  int q = 0;
  int p = 0;  // winding of the maximizer
  double max_length = 0.0;
  SymbolicCode argmax_code;
  std::vector<SymbolicCode> tied_codes;  // within 1e-9 of the max
  int candidates_examined = 0;
  bool partial = false;  // some candidate failed to solve
  std::vector<std::pair<std::string, double>> candidate_lengths;
};

// Maximal orbit of rotation number (q-1)/2q over the code families
// (i 12...12), i in {2,3,4} (i=1 behind the expert flag).  Hat variants are
// time reversals of these codes and realize the same lengths.
MarkedLengthEntry marked_length_max(const TableSpec& table, int q,
                                    const SolveOptions& opts = {});

}  // namespace billiard

#endif
