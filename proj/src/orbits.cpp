#include "billiard/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

#include "billiard/numeric.hpp"

namespace billiard {

// ---------------------------------------------------------------------------
// symbolic codes

int SymbolicCode::arc_letters() const {
  int n = 0;
  for (int l : word) n += (l == 1 || l == 2);
  return n;
}

std::string SymbolicCode::str() const {
  std::string s;
  for (int l : word) s += char('0' + l);
  return s;
}

SymbolicCode SymbolicCode::parse(const std::string& text) {
  SymbolicCode code;
  size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw InvalidCode("cannot parse \"" + text + "\": " + why);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace((unsigned char)c)) {
      ++i;
    } else if (c >= '1' && c <= '4') {
      code.word.push_back(c - '0');
      ++i;
    } else if (c == '(') {
      size_t close = text.find(')', i);
      if (close == std::string::npos) fail("unbalanced parenthesis");
      std::vector<int> group;
      for (size_t k = i + 1; k < close; ++k) {
        if (std::isspace((unsigned char)text[k])) continue;
        if (text[k] < '1' || text[k] > '4') fail("group letters must be 1-4");
        group.push_back(text[k] - '0');
      }
      i = close + 1;
      long reps = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        size_t used = 0;
        reps = std::stol(text.substr(i), &used);
        if (used == 0 || reps < 1) fail("bad repetition count");
        i += used;
      }
      for (long r = 0; r < reps; ++r)
        code.word.insert(code.word.end(), group.begin(), group.end());
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  if (code.word.empty()) fail("empty code");
  return code;
}

void SymbolicCode::check_admissible(bool allow_letter_one) const {
  if (word.empty()) throw InvalidCode("empty code");
  if (arc_letters() == 0)
    throw InvalidCode("code has no arc letters; nothing to solve");
  int q = period();
  for (int k = 0; k < q; ++k) {
    int a = word[k], b = word[(k + 1) % q];
    if ((a == 3 || a == 4) && a == b)
      throw InvalidCode("flat letter " + std::to_string(a) +
                        " repeats consecutively");
  }
  if (!allow_letter_one) {
    for (int k = 0; k < q; ++k)
      if (word[k] == 1 && word[(k + 1) % q] == 1)
        throw InvalidCode(
            "codes with adjacent letter 1 are gated behind the expert flag");
  }
}

// ---------------------------------------------------------------------------
// unfolded variational problem

namespace {

struct Slot {
  int code_pos;
  int piece;    // index into table.pieces
  Iso2 frame;   // base-table point -> unfolded plane
};

struct Mirror {
  int code_pos;
  int piece;
  Iso2 frame;  // frame in effect when the trajectory crosses this flat
};

struct Unfolded {
  const TableSpec* table = nullptr;
  std::vector<Slot> slots;
  std::vector<std::vector<Mirror>> gap;  // gap[i]: mirrors between slot i and i+1
  Iso2 g_total;

  int vars() const { return (int)slots.size(); }

  Vec2 point(int i, double s, bool wrapped) const {
    const Slot& sl = slots[i];
    Vec2 p = table->pieces[sl.piece].arc->position(s);
    Vec2 q = sl.frame.apply(p);
    return wrapped ? g_total.apply(q) : q;
  }
};

Unfolded build_unfolded(const TableSpec& table, const SymbolicCode& code) {
  Unfolded u;
  u.table = &table;
  Iso2 g = Iso2::identity();
  std::vector<Mirror> pre;  // flats seen before the first arc slot
  for (int pos = 0; pos < code.period(); ++pos) {
    int letter = code.word[pos];
    int pi = table.piece_index_of_label(letter);
    const Piece& p = table.pieces[pi];
    if (p.is_arc) {
      u.slots.push_back({pos, pi, g});
      u.gap.emplace_back();
    } else {
      Mirror m{pos, pi, g};
      if (u.slots.empty())
        pre.push_back(m);
      else
        u.gap.back().push_back(m);
      g = g.compose(Iso2::reflection(p.seg.p0, p.seg.direction()));
    }
  }
  u.g_total = g;
  // flats preceding the first slot belong to the wrap gap, one cover later
  for (Mirror m : pre) {
    m.frame = u.g_total.compose(m.frame);
    u.gap.back().push_back(m);
  }
  return u;
}

struct ChordJet {
  double tau;
  double g_a, g_b;          // d tau / d s_a, d tau / d s_b
  double h_aa, h_ab, h_bb;  // second partials
};

ChordJet chord_jet(const Unfolded& u, int ia, double sa, int ib, double sb,
                   bool wrap) {
  const TableSpec& t = *u.table;
  const Slot& A = u.slots[ia];
  const Slot& B = u.slots[ib];
  const Arc& arcA = *t.pieces[A.piece].arc;
  const Arc& arcB = *t.pieces[B.piece].arc;
  Iso2 FB = wrap ? u.g_total.compose(B.frame) : B.frame;

  Vec2 Xa = A.frame.apply(arcA.position(sa));
  Vec2 Xb = FB.apply(arcB.position(sb));
  Vec2 diff = Xb - Xa;
  double tau = norm(diff);
  if (tau < 1e-14) throw DegenerateChord("unfolded chord collapsed");
  Vec2 uv = diff * (1.0 / tau);

  Vec2 Ta = A.frame.linear(arcA.tangent(sa));
  Vec2 Na = A.frame.linear(arcA.inward_normal(sa));
  Vec2 Tb = FB.linear(arcB.tangent(sb));
  Vec2 Nb = FB.linear(arcB.inward_normal(sb));
  double Ka = arcA.curvature(sa), Kb = arcB.curvature(sb);

  double sina = dot(uv, Ta), cosa = dot(uv, Na);
  double sinb = dot(uv, Tb), cosb = -dot(uv, Nb);

  ChordJet j;
  j.tau = tau;
  j.g_a = -sina;
  j.g_b = sinb;
  j.h_aa = cosa * cosa / tau + Ka * cosa;
  j.h_bb = cosb * cosb / tau + Kb * cosb;
  j.h_ab = (sina * sinb - dot(Ta, Tb)) / tau;
  return j;
}

double total_length(const Unfolded& u, const std::vector<double>& s) {
  KahanSum L;
  int m = u.vars();
  for (int i = 0; i < m; ++i) {
    int j = (i + 1) % m;
    Vec2 a = u.point(i, s[i], false);
    Vec2 b = u.point(j, s[j], j == 0);
    L.add(dist(a, b));
  }
  return L.value();
}

void assemble(const Unfolded& u, const std::vector<double>& s,
              std::vector<double>& grad, std::vector<double>& hess) {
  int m = u.vars();
  grad.assign(m, 0.0);
  hess.assign(m * m, 0.0);
  for (int i = 0; i < m; ++i) {
    int j = (i + 1) % m;
    ChordJet cj = chord_jet(u, i, s[i], j, s[j], j == 0);
    grad[i] += cj.g_a;
    grad[j] += cj.g_b;
    hess[i * m + i] += cj.h_aa;
    hess[j * m + j] += cj.h_bb;
    hess[i * m + j] += cj.h_ab;
    hess[j * m + i] += cj.h_ab;
  }
}

// fold an unfolded direction back to base-table coordinates
Vec2 pull_direction(const Iso2& frame, const Vec2& v) {
  // orthogonal linear part: inverse = transpose
  return {frame.a11 * v.x + frame.a21 * v.y, frame.a12 * v.x + frame.a22 * v.y};
}

}  // namespace

// ---------------------------------------------------------------------------
// solve_code

namespace {

struct NewtonOutcome {
  std::vector<double> s;
  double grad_norm = 0.0;
  int iterations = 0;
  bool hessian_definite = false;
  bool converged = false;
};

NewtonOutcome newton_solve(const Unfolded& u, std::vector<double> s,
                           const SolveOptions& opts) {
  const TableSpec& t = *u.table;
  int m = u.vars();
  std::vector<double> grad, hess;
  std::vector<double> lo(m), hi(m);
  for (int i = 0; i < m; ++i) {
    double len = t.pieces[u.slots[i].piece].len;
    // circles extend smoothly past their ends; keep a working margin
    lo[i] = -0.25 * len;
    hi[i] = 1.25 * len;
  }
  NewtonOutcome out;
  double L = total_length(u, s);
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    assemble(u, s, grad, hess);
    double gn = 0.0;
    for (double g : grad) gn = std::max(gn, std::abs(g));
    out.grad_norm = gn;
    if (gn < opts.grad_target) break;

    std::vector<double> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = -grad[i];
    double step_cap = 0.0;
    for (int i = 0; i < m; ++i)
      step_cap = std::max(step_cap, t.pieces[u.slots[i].piece].len);
    step_cap *= 0.5;
    std::vector<double> step;
    double sigma = 0.0;
    for (int attempt = 0; attempt < 12; ++attempt) {
      std::vector<double> hs = hess;
      if (sigma > 0.0)
        for (int i = 0; i < m; ++i) hs[i * m + i] -= sigma;
      bool ok = true;
      try {
        step = solve_dense(hs, rhs);
      } catch (const NoConvergence&) {
        ok = false;
      }
      if (ok) {
        double dg = 0.0, smax = 0.0;
        for (int i = 0; i < m; ++i) {
          dg += step[i] * grad[i];
          smax = std::max(smax, std::abs(step[i]));
        }
        // near-singular Hessians (length ridges) blow the step up; damp
        if (dg > 0.0 && smax <= step_cap) break;
        ok = false;
      }
      sigma = (sigma == 0.0) ? 1e-8 : sigma * 100.0;
      step.clear();
    }
    if (step.empty()) {
      // fall back to bare gradient ascent
      step = grad;
      double gnorm2 = 0.0;
      for (double g : grad) gnorm2 += g * g;
      double sc = 1e-3 / std::sqrt(gnorm2 + 1e-300);
      for (double& v : step) v *= sc;
    }

    double alpha = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<double> trial(m);
      for (int i = 0; i < m; ++i)
        trial[i] = std::clamp(s[i] + alpha * step[i], lo[i], hi[i]);
      double Lt = total_length(u, trial);
      std::vector<double> g2, h2;
      assemble(u, trial, g2, h2);
      double gn2 = 0.0;
      for (double g : g2) gn2 = std::max(gn2, std::abs(g));
      if (Lt > L + 1e-15 * std::abs(L) || gn2 < gn) {
        s = std::move(trial);
        L = Lt;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // stalled; residual check decides below
  }
  assemble(u, s, grad, hess);
  double gn = 0.0;
  for (double g : grad) gn = std::max(gn, std::abs(g));
  out.grad_norm = gn;
  out.iterations = it;
  out.s = s;
  out.converged = gn <= opts.grad_accept;
  // strict negative definiteness of the length Hessian
  double scale = 0.0;
  for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(hess[i * m + i]));
  std::vector<double> neg(hess.size());
  for (size_t k = 0; k < hess.size(); ++k) neg[k] = -hess[k];
  out.hessian_definite = is_positive_definite(neg, m, -1e-10 * scale);
  return out;
}

}  // namespace

OrbitResult solve_code(const TableSpec& table, const SymbolicCode& code,
                       const std::optional<std::vector<double>>& seed,
                       const SolveOptions& opts) {
  code.check_admissible(opts.allow_letter_one);
  Unfolded u = build_unfolded(table, code);
  int m = u.vars();

  std::vector<double> s0(m);
  if (seed) {
    if ((int)seed->size() != m)
      throw InvalidCode("seed must list one arclength per arc collision");
    s0 = *seed;
  } else {
    // staggered mid-arc positions; repeated letters must not coincide
    for (int i = 0; i < m; ++i) {
      double len = table.pieces[u.slots[i].piece].len;
      s0[i] = len * (0.5 + 0.25 * ((i % 2 == 0) ? 1.0 : -1.0) /
                               (1.0 + i / 2));
    }
  }

  NewtonOutcome best = newton_solve(u, s0, opts);
  if (opts.multistart > 0) {
    std::vector<NewtonOutcome> extra(opts.multistart);
    for (int k = 0; k < opts.multistart; ++k) {
      std::mt19937_64 sub(mix_seed(opts.rng_seed, k));
      std::uniform_real_distribution<double> jitter(-0.3, 0.3);
      std::vector<double> sk = s0;
      for (int i = 0; i < m; ++i)
        sk[i] = std::clamp(
            sk[i] + jitter(sub) * table.pieces[u.slots[i].piece].len, 0.0,
            table.pieces[u.slots[i].piece].len);
      extra[k] = newton_solve(u, sk, opts);
    }
    for (const auto& e : extra) {
      if (!e.converged) continue;
      if (!best.converged) best = e;
      double d = 0.0;
      for (int i = 0; i < m; ++i) d = std::max(d, std::abs(e.s[i] - best.s[i]));
      if (d > 1e-7)
        throw NoConvergence("multistart found distinct critical points for code " +
                            code.str());
    }
  }
  if (!best.converged)
    throw NoConvergence("Newton did not reach gradient tolerance for code " +
                        code.str() + " (residual " + std::to_string(best.grad_norm) +
                        ")");
  // collisions must sit strictly inside their pieces
  for (int i = 0; i < m; ++i) {
    double len = table.pieces[u.slots[i].piece].len;
    if (best.s[i] < 1e-11 || best.s[i] > len - 1e-11)
      throw InfeasibleOrbit("collision " + std::to_string(i) +
                            " left its arc (code " + code.str() + ")");
  }

  // fold the solution back into phase points, splitting at flat crossings
  OrbitResult res;
  res.code = code;
  res.arc_params = best.s;
  res.grad_norm = best.grad_norm;
  res.hessian_definite = best.hessian_definite;
  res.iterations = best.iterations;
  res.points.assign(code.period(), PhasePoint{});
  res.chord_lengths.assign(code.period(), 0.0);

  KahanSum total;
  for (int i = 0; i < m; ++i) {
    int j = (i + 1) % m;
    bool wrap = (j == 0);
    Vec2 Xa = u.point(i, best.s[i], false);
    Vec2 Xb = u.point(j, best.s[j], wrap);
    double tau = dist(Xa, Xb);
    Vec2 dir = (Xb - Xa) * (1.0 / tau);

    const Slot& A = u.slots[i];
    const TableSpec& t = table;
    // phase point at slot i (outgoing direction folded to the base table)
    {
      const Arc& arc = *t.pieces[A.piece].arc;
      Vec2 vb = pull_direction(A.frame, dir);
      double sphi = dot(vb, arc.tangent(best.s[i]));
      double cphi = dot(vb, arc.inward_normal(best.s[i]));
      res.points[A.code_pos] = {t.r_of(A.piece, best.s[i]), std::atan2(sphi, cphi)};
    }
    // flat crossings inside this gap split the unfolded chord
    double t_prev = 0.0;
    int prev_pos = A.code_pos;
    for (const Mirror& mir : u.gap[i]) {
      const Piece& fp = t.pieces[mir.piece];
      Vec2 q0 = mir.frame.apply(fp.seg.p0);
      Vec2 qd = mir.frame.linear(fp.seg.direction());
      double den = cross(dir, qd);
      if (std::abs(den) < 1e-14)
        throw InfeasibleOrbit("chord parallel to flat " + std::to_string(fp.label));
      double tc = cross(q0 - Xa, qd) / den;
      double w = cross(q0 - Xa, dir) / den;
      if (tc <= t_prev + 1e-12 || tc >= tau - 1e-12)
        throw InfeasibleOrbit("flat crossing outside the chord (code " +
                              code.str() + ")");
      if (w < 1e-11 || w > fp.len - 1e-11)
        throw InfeasibleOrbit("trajectory misses flat " + std::to_string(fp.label) +
                              " (crossing parameter " + std::to_string(w) + ")");
      Iso2 frame_after =
          mir.frame.compose(Iso2::reflection(fp.seg.p0, fp.seg.direction()));
      Vec2 vb = pull_direction(frame_after, dir);
      double sphi = dot(vb, fp.seg.direction());
      double cphi = dot(vb, perp(fp.seg.direction()));
      res.points[mir.code_pos] = {t.r_of(mir.piece, w), std::atan2(sphi, cphi)};
      res.chord_lengths[prev_pos] = tc - t_prev;
      prev_pos = mir.code_pos;
      t_prev = tc;
    }
    res.chord_lengths[prev_pos] = tau - t_prev;
    total.add(tau);
  }
  res.total_length = total.value();

  // replay with the billiard map, anchored at each recorded collision:
  // hyperbolicity amplifies a compounded replay by the monodromy eigenvalue,
  // so consecutive-pair consistency is the meaningful double-precision check
  res.feasible = true;
  try {
    for (int k = 0; k < code.period(); ++k) {
      MapStep st = billiard_map(table, res.points[k]);
      const PhasePoint& want = res.points[(k + 1) % code.period()];
      double dr = std::abs(table.reduce(st.z1.r) - table.reduce(want.r));
      dr = std::min(dr, table.perimeter - dr);
      int label = table.at(st.z1.r).label;
      int want_label = code.word[(k + 1) % code.period()];
      if (label != want_label || dr > opts.replay_tol ||
          std::abs(st.z1.phi - want.phi) > opts.replay_tol) {
        res.feasible = false;
        res.infeasible_reason = "replay diverged at step " + std::to_string(k) +
                                " (hit label " + std::to_string(label) + ")";
        break;
      }
    }
  } catch (const Error& e) {
    res.feasible = false;
    res.infeasible_reason = e.what();
  }
  if (!res.feasible && opts.require_feasible)
    throw InfeasibleOrbit("solved critical point is not a billiard orbit: " +
                          res.infeasible_reason);

  // measured winding; time reversal keeps the rotation number in (0, 1/2]
  double acc = 0.0;
  for (int k = 0; k < code.period(); ++k) {
    double a = table.reduce(res.points[k].r);
    double b = table.reduce(res.points[(k + 1) % code.period()].r);
    double d = b - a;
    if (d <= 0.0) d += table.perimeter;
    acc += d;
  }
  int p = (int)std::llround(acc / table.perimeter);
  res.code.winding = std::min(p, code.period() - p);
  return res;
}

// ---------------------------------------------------------------------------
// named families

namespace {

// apex arclengths of the two arcs, from the solved period-two orbit
struct ApexInfo {
  double s1, s2;      // arc-local params of the period-two feet
  double len1, len2;  // arc lengths
};

ApexInfo apex_info(const TableSpec& table, const OrbitResult& p2) {
  ApexInfo a;
  const Piece& a1 = table.piece_of_label(1);
  const Piece& a2 = table.piece_of_label(2);
  a.len1 = a1.len;
  a.len2 = a2.len;
  a.s1 = table.reduce(p2.points[0].r) - a1.s0;
  a.s2 = table.reduce(p2.points[1].r) - a2.s0;
  return a;
}

std::vector<double> family_seed(const SymbolicCode& code, const ApexInfo& ap) {
  // spread decays geometrically with the word distance from the excursion
  std::vector<double> seed;
  int q = code.period();
  for (int pos = 0; pos < q; ++pos) {
    int letter = code.word[pos];
    if (letter != 1 && letter != 2) continue;
    int d = std::min(pos, q - pos);
    double delta = 0.30 * std::pow(1.8, -double(d));
    if (letter == 1)
      seed.push_back(ap.s1 + delta * ap.len1);
    else
      seed.push_back(ap.s2 - delta * ap.len2);
  }
  return seed;
}

OrbitResult solve_family(const TableSpec& table, const SymbolicCode& code,
                         const SolveOptions& opts) {
  SolveOptions local = opts;
  local.require_feasible = true;
  SymbolicCode c12;
  c12.word = {1, 2};
  OrbitResult p2 = solve_code(table, c12, {}, SolveOptions{});
  ApexInfo ap = apex_info(table, p2);
  try {
    return solve_code(table, code, family_seed(code, ap), local);
  } catch (const Error&) {
    // fall back to staggered mid-arc seeds
    std::vector<double> seed;
    int slot = 0;
    for (int letter : code.word) {
      if (letter != 1 && letter != 2) continue;
      double len = (letter == 1) ? ap.len1 : ap.len2;
      seed.push_back(len * (0.5 + 0.02 * ((slot % 7) - 3)));
      ++slot;
    }
    return solve_code(table, code, seed, local);
  }
}

}  // namespace

OrbitResult period_two(const TableSpec& table, const SolveOptions& opts) {
  SymbolicCode code;
  code.word = {1, 2};
  OrbitResult res = solve_code(table, code, {}, opts);
  double tau_star = 0.5 * res.total_length;
  double diam = table_diameter(table);
  if (std::abs(tau_star - diam) > 1e-8)
    throw NoConvergence("period-two free path " + std::to_string(tau_star) +
                        " disagrees with sampled diameter " + std::to_string(diam));
  return res;
}

OrbitResult rotation_orbit(const TableSpec& table, int n, int i,
                           const SolveOptions& opts) {
  if (n < 1) throw InvalidCode("rotation orbit needs n >= 1");
  if (i < 1 || i > 4) throw InvalidCode("letter must be in 1..4");
  SymbolicCode code;
  code.word.push_back(i);
  for (int k = 0; k < n; ++k) {
    code.word.push_back(1);
    code.word.push_back(2);
  }
  SolveOptions local = opts;
  if (i == 1) local.allow_letter_one = true;
  return solve_family(table, code, local);
}

OrbitResult palindromic_orbit(const TableSpec& table, int n, bool hat,
                              const SolveOptions& opts) {
  if (n < 1) throw InvalidCode("palindromic orbit needs n >= 1");
  int a = hat ? 2 : 1, b = hat ? 1 : 2;
  SymbolicCode code;
  code.word = {3, b, 3};
  for (int k = 0; k < n; ++k) {
    code.word.push_back(a);
    code.word.push_back(b);
  }
  code.word.push_back(a);
  OrbitResult res = solve_family(table, code, opts);

  // palindromic symmetry of the successive-collision stage (positions 3..2n+3)
  double sym = 0.0;
  for (int j = 1; j <= n; ++j) {
    double ra = table.reduce(res.points[2 + j].r);
    double rb = table.reduce(res.points[2 + (2 * n + 2 - j)].r);
    double d = std::abs(ra - rb);
    d = std::min(d, table.perimeter - d);
    sym = std::max(sym, d);
  }
  double phi_mid = std::abs(res.points[2 + (n + 1)].phi);
  if (sym > 1e-8 || phi_mid > 1e-8)
    throw NoConvergence("palindromic orbit lost its symmetry (sym=" +
                        std::to_string(sym) + ", mid phi=" +
                        std::to_string(phi_mid) + ")");
  return res;
}

MarkedLengthEntry marked_length_max(const TableSpec& table, int q,
                                    const SolveOptions& opts) {
  if (q < 3 || q % 2 == 0) throw InvalidCode("marked length max needs odd q >= 3");
  int m = (q - 1) / 2;
  std::vector<SymbolicCode> candidates;
  std::vector<int> letters = {2, 3, 4};
  if (opts.allow_letter_one) letters.push_back(1);
  for (int i : letters) {
    SymbolicCode c;
    c.word.push_back(i);
    for (int k = 0; k < m; ++k) {
      c.word.push_back(1);
      c.word.push_back(2);
    }
    candidates.push_back(c);
  }

  std::vector<std::optional<OrbitResult>> solved(candidates.size());
  auto worker = [&](int idx) -> std::optional<OrbitResult> {
    try {
      SolveOptions local = opts;
      local.rng_seed = mix_seed(opts.rng_seed, idx);
      if (candidates[idx].word[0] == 1) local.allow_letter_one = true;
      return solve_family(table, candidates[idx], local);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  solved = parallel_map<std::optional<OrbitResult>>((int)candidates.size(), worker);

  MarkedLengthEntry entry;
  entry.q = q;
  entry.candidates_examined = (int)candidates.size();
  double best = -1.0;
  int best_idx = -1;
  for (size_t i = 0; i < solved.size(); ++i) {
    if (!solved[i]) {
      entry.partial = true;
      entry.candidate_lengths.emplace_back(candidates[i].str(), -1.0);
      continue;
    }
    entry.candidate_lengths.emplace_back(candidates[i].str(),
                                         solved[i]->total_length);
    if (solved[i]->total_length > best) {
      best = solved[i]->total_length;
      best_idx = (int)i;
    }
  }
  if (best_idx < 0)
    throw NoConvergence("no candidate orbit solved for q=" + std::to_string(q));
  entry.max_length = best;
  entry.argmax_code = solved[best_idx]->code;
  entry.p = solved[best_idx]->code.winding;
  for (size_t i = 0; i < solved.size(); ++i) {
    if ((int)i == best_idx || !solved[i]) continue;
    if (best - solved[i]->total_length < 1e-9)
      entry.tied_codes.push_back(solved[i]->code);
  }
  return entry;
}

}  // namespace billiard
