#include "billiard/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace billiard {

namespace {

constexpr double kChainTol = 1e-9;

// 5-point Gauss-Legendre on [-1, 1]
constexpr double kGlx[5] = {0.0, -0.5384693101056831, 0.5384693101056831,
                            -0.9061798459386640, 0.9061798459386640};
constexpr double kGlw[5] = {0.5688888888888889, 0.4786286704993665,
                            0.4786286704993665, 0.2369268850561891,
                            0.2369268850561891};

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  return a;
}

// ---------------------------------------------------------------------------
// circular arcs

class CircularArc : public Arc {
 public:
  CircularArc(const Vec2& center, double radius, double theta_begin,
              double theta_end)
      : c_(center), r_(radius), th0_(theta_begin), span_(theta_end - theta_begin) {
    if (!(radius > 0.0)) throw InvalidTable("circular arc needs positive radius");
    if (!(span_ > 1e-12) || span_ > 2.0 * kPi + 1e-12)
      throw InvalidTable("circular arc span outside (0, 2*pi]");
  }

  double length() const override { return r_ * span_; }
  Vec2 position(double s) const override {
    double th = th0_ + s / r_;
    return {c_.x + r_ * std::cos(th), c_.y + r_ * std::sin(th)};
  }
  Vec2 tangent(double s) const override {
    double th = th0_ + s / r_;
    return {-std::sin(th), std::cos(th)};
  }
  double curvature(double) const override { return -1.0 / r_; }
  double curvature_derivative(double) const override { return 0.0; }

  void ray_intersections(const Vec2& o, const Vec2& d, double t_min,
                         std::vector<RayHit>& out) const override {
    // |o + t d - c|^2 = r^2 with |d| = 1
    Vec2 w = o - c_;
    double b = dot(w, d);
    double q = norm2(w) - r_ * r_;
    double disc = b * b - q;
    if (disc < 0.0) return;
    double sq = std::sqrt(disc);
    for (double t : {-b - sq, -b + sq}) {
      if (t <= t_min) continue;
      Vec2 p = o + t * d;
      double dth = wrap_angle(std::atan2(p.y - c_.y, p.x - c_.x) - th0_);
      if (dth <= span_ + 1e-12 / r_) out.push_back({t, std::min(dth * r_, length())});
    }
  }

  std::shared_ptr<const Arc> transformed(const Iso2& iso,
                                         bool reverse) const override;

 private:
  Vec2 c_;
  double r_, th0_, span_;
};

std::shared_ptr<const Arc> CircularArc::transformed(const Iso2& iso,
                                                    bool reverse) const {
  if (reverse != (iso.det() < 0.0))
    throw InvalidTable("arc transform must reverse iff orientation flips");
  Vec2 nc = iso.apply(c_);
  Vec2 pb = iso.apply(position(reverse ? length() : 0.0));
  Vec2 pe = iso.apply(position(reverse ? 0.0 : length()));
  double thb = std::atan2(pb.y - nc.y, pb.x - nc.x);
  double the = std::atan2(pe.y - nc.y, pe.x - nc.x);
  double sweep = wrap_angle(the - thb);
  if (sweep < 1e-12) sweep = 2.0 * kPi;  // full-circle wrap
  if (std::abs(sweep - span_) > 1e-9)
    throw InvalidTable("circular arc transform lost orientation");
  return std::make_shared<CircularArc>(nc, r_, thb, thb + span_);
}

// ---------------------------------------------------------------------------
// generic natively-parametrized curves + arclength facade

class ParamCurve {
 public:
  virtual ~ParamCurve() = default;
  virtual Vec2 pos(double u) const = 0;
  virtual Vec2 vel(double u) const = 0;
  virtual Vec2 acc(double u) const = 0;
  double kappa_ccw(double u) const {
    Vec2 v = vel(u), a = acc(u);
    double sp = norm(v);
    return cross(v, a) / (sp * sp * sp);
  }
  virtual double dkappa_du(double u) const {
    double h = 1e-6;
    return (kappa_ccw(u + h) - kappa_ccw(u - h)) / (2.0 * h);
  }
};

class PolyCurve : public ParamCurve {
 public:
  PolyCurve(std::vector<double> coeffs, Vec2 origin, double angle)
      : p_(std::move(coeffs)), o_(origin), ca_(std::cos(angle)), sa_(std::sin(angle)) {}

  Vec2 pos(double x) const override { return to_world(x, eval(p_, x)); }
  Vec2 vel(double x) const override { return lin(1.0, eval(deriv(1), x)); }
  Vec2 acc(double x) const override { return lin(0.0, eval(deriv(2), x)); }
  double dkappa_du(double x) const override {
    double p1 = eval(deriv(1), x), p2 = eval(deriv(2), x), p3 = eval(deriv(3), x);
    double w = 1.0 + p1 * p1;
    return p3 / std::pow(w, 1.5) - 3.0 * p1 * p2 * p2 / std::pow(w, 2.5);
  }

 private:
  static double eval(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
  }
  const std::vector<double>& deriv(int k) const {
    while ((int)dcache_.size() < k) {
      const std::vector<double>& prev = dcache_.empty() ? p_ : dcache_.back();
      std::vector<double> d;
      for (size_t i = 1; i < prev.size(); ++i) d.push_back(prev[i] * (double)i);
      if (d.empty()) d.push_back(0.0);
      dcache_.push_back(std::move(d));
    }
    return dcache_[k - 1];
  }
  Vec2 to_world(double x, double y) const {
    return {o_.x + ca_ * x - sa_ * y, o_.y + sa_ * x + ca_ * y};
  }
  Vec2 lin(double x, double y) const {
    return {ca_ * x - sa_ * y, sa_ * x + ca_ * y};
  }

  std::vector<double> p_;
  Vec2 o_;
  double ca_, sa_;
  mutable std::vector<std::vector<double>> dcache_;
};

class DisplacedCurve : public ParamCurve {
 public:
  DisplacedCurve(std::shared_ptr<const Arc> base, std::shared_ptr<const ScalarFn> f,
                 double mu)
      : base_(std::move(base)), f_(std::move(f)), mu_(mu) {}

  // u is the base arclength; outward normal is -perp(tangent)
  Vec2 pos(double u) const override {
    Vec2 nin = base_->inward_normal(u);
    return base_->position(u) - mu_ * f_->value(u) * nin;
  }
  Vec2 vel(double u) const override {
    Vec2 t = base_->tangent(u);
    Vec2 nin = perp(t);
    double ki = -base_->curvature(u);  // inward curvature > 0
    return (1.0 + mu_ * f_->value(u) * ki) * t - mu_ * f_->d1(u) * nin;
  }
  Vec2 acc(double u) const override {
    Vec2 t = base_->tangent(u);
    Vec2 nin = perp(t);
    double ki = -base_->curvature(u);
    double kip = -base_->curvature_derivative(u);
    double f = f_->value(u), f1 = f_->d1(u), f2 = f_->d2(u);
    return (mu_ * (2.0 * f1 * ki + f * kip)) * t +
           (ki + mu_ * (f * ki * ki - f2)) * nin;
  }

 private:
  std::shared_ptr<const Arc> base_;
  std::shared_ptr<const ScalarFn> f_;
  double mu_;
};

class ReparamArc : public Arc {
 public:
  ReparamArc(std::shared_ptr<const ParamCurve> c, double u0, double u1,
             bool reverse, int samples)
      : c_(std::move(c)), u0_(u0), u1_(u1), rev_(reverse) {
    int n = std::max(256, samples);
    cum_.resize(n + 1);
    us_.resize(n + 1);
    double h = (u1_ - u0_) / n;
    cum_[0] = 0.0;
    us_[0] = u0_;
    for (int i = 0; i < n; ++i) {
      double a = u0_ + i * h;
      cum_[i + 1] = cum_[i] + gl_speed(a, a + h);
      us_[i + 1] = a + h;
    }
    len_ = cum_.back();
    validate(samples);
  }

  double length() const override { return len_; }
  Vec2 position(double s) const override { return c_->pos(u_of(s)); }
  Vec2 tangent(double s) const override {
    Vec2 v = c_->vel(u_of(s));
    Vec2 t = normalized(v);
    return rev_ ? -t : t;
  }
  double curvature(double s) const override {
    double k = c_->kappa_ccw(u_of(s));
    return rev_ ? k : -k;  // traversal flip negates kappa_ccw
  }
  double curvature_derivative(double s) const override {
    double u = u_of(s);
    return -c_->dkappa_du(u) / norm(c_->vel(u));
  }

  void ray_intersections(const Vec2& o, const Vec2& d, double t_min,
                         std::vector<RayHit>& out) const override {
    // bracket cross(d, pos(u)-o) over the cached grid, then bisect
    size_t n = us_.size();
    double fprev = cross(d, c_->pos(us_[0]) - o);
    for (size_t i = 1; i < n; ++i) {
      double fcur = cross(d, c_->pos(us_[i]) - o);
      if ((fprev <= 0.0 && fcur > 0.0) || (fprev >= 0.0 && fcur < 0.0)) {
        double lo = us_[i - 1], hi = us_[i], flo = fprev;
        for (int it = 0; it < 80; ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = cross(d, c_->pos(mid) - o);
          if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
          } else {
            hi = mid;
          }
          if (hi - lo < 1e-15 * (u1_ - u0_)) break;
        }
        double u = 0.5 * (lo + hi);
        double t = dot(c_->pos(u) - o, d);
        if (t > t_min) out.push_back({t, s_at_u(u)});
      }
      fprev = fcur;
    }
  }

  std::shared_ptr<const Arc> transformed(const Iso2& iso,
                                         bool reverse) const override;

 private:
  friend class TransformedArc;

  double gl_speed(double a, double b) const {
    double m = 0.5 * (a + b), hw = 0.5 * (b - a), acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += kGlw[k] * norm(c_->vel(m + hw * kGlx[k]));
    return acc * hw;
  }
  double s_at_u(double u) const {
    size_t i = std::upper_bound(us_.begin(), us_.end(), u) - us_.begin();
    if (i == 0) i = 1;
    if (i >= us_.size()) i = us_.size() - 1;
    double s_fwd = cum_[i - 1] + gl_speed(us_[i - 1], u);
    return rev_ ? len_ - s_fwd : s_fwd;
  }
  double u_of(double s) const {
    double sf = rev_ ? len_ - s : s;
    sf = std::clamp(sf, 0.0, len_);
    size_t i = std::upper_bound(cum_.begin(), cum_.end(), sf) - cum_.begin();
    if (i == 0) i = 1;
    if (i >= cum_.size()) i = cum_.size() - 1;
    double frac = (sf - cum_[i - 1]) / (cum_[i] - cum_[i - 1]);
    double u = us_[i - 1] + frac * (us_[i] - us_[i - 1]);
    for (int it = 0; it < 6; ++it) {
      double err = cum_[i - 1] + gl_speed(us_[i - 1], u) - sf;
      double sp = norm(c_->vel(u));
      double step = err / sp;
      u -= step;
      u = std::clamp(u, us_[i - 1] - 1e-12, us_[i] + 1e-12);
      if (std::abs(step) < 1e-15 * (u1_ - u0_)) break;
    }
    return u;
  }
  void validate(int samples) const {
    double kmin = 1e300, spmin = 1e300;
    for (int i = 0; i <= samples; ++i) {
      double u = u0_ + (u1_ - u0_) * i / samples;
      double k = c_->kappa_ccw(u);
      kmin = std::min(kmin, rev_ ? -k : k);
      spmin = std::min(spmin, norm(c_->vel(u)));
    }
    if (!(kmin > 1e-9))
      throw InvalidTable("arc not strictly convex (sampled curvature sign/floor)");
    if (!(spmin > 1e-9)) throw InvalidTable("arc parametrization speed vanishes");
  }

  std::shared_ptr<const ParamCurve> c_;
  double u0_, u1_, len_ = 0.0;
  bool rev_;
  std::vector<double> cum_, us_;
};

// isometry wrapper used by double covers of non-circular arcs
class TransformedArc : public Arc {
 public:
  TransformedArc(std::shared_ptr<const Arc> base, const Iso2& iso, bool reverse)
      : base_(std::move(base)), g_(iso), rev_(reverse) {
    if (rev_ != (g_.det() < 0.0))
      throw InvalidTable("arc transform must reverse iff orientation flips");
    // inverse of an orthogonal-plus-translation map
    inv_ = g_;
    std::swap(inv_.a12, inv_.a21);
    inv_.t = -inv_.linear(g_.t);
  }

  double length() const override { return base_->length(); }
  Vec2 position(double s) const override { return g_.apply(base_->position(m(s))); }
  Vec2 tangent(double s) const override {
    Vec2 t = g_.linear(base_->tangent(m(s)));
    return rev_ ? -t : t;
  }
  double curvature(double s) const override { return base_->curvature(m(s)); }
  double curvature_derivative(double s) const override {
    double d = base_->curvature_derivative(m(s));
    return rev_ ? -d : d;
  }
  void ray_intersections(const Vec2& o, const Vec2& d, double t_min,
                         std::vector<RayHit>& out) const override {
    size_t first = out.size();
    base_->ray_intersections(inv_.apply(o), inv_.linear(d), t_min, out);
    if (rev_)
      for (size_t i = first; i < out.size(); ++i)
        out[i].s_local = length() - out[i].s_local;
  }
  std::shared_ptr<const Arc> transformed(const Iso2& iso,
                                         bool reverse) const override {
    return std::make_shared<TransformedArc>(base_, iso.compose(g_), rev_ != reverse ? true : false);
  }

 private:
  double m(double s) const { return rev_ ? length() - s : s; }

  std::shared_ptr<const Arc> base_;
  Iso2 g_, inv_;
  bool rev_;
};

std::shared_ptr<const Arc> ReparamArc::transformed(const Iso2& iso,
                                                   bool reverse) const {
  return std::make_shared<TransformedArc>(shared_from_this(), iso, reverse);
}

}  // namespace

std::shared_ptr<const Arc> make_circular_arc(const Vec2& center, double radius,
                                             double theta_begin,
                                             double theta_end) {
  return std::make_shared<CircularArc>(center, radius, theta_begin, theta_end);
}

std::shared_ptr<const Arc> make_polygraph_arc(const std::vector<double>& coeffs,
                                              double x0, double x1,
                                              const Vec2& origin, double angle,
                                              bool reverse, int convexity_samples) {
  auto curve = std::make_shared<PolyCurve>(coeffs, origin, angle);
  return std::make_shared<ReparamArc>(curve, x0, x1, reverse, convexity_samples);
}

std::shared_ptr<const Arc> make_displaced_arc(std::shared_ptr<const Arc> base,
                                              std::shared_ptr<const ScalarFn> f,
                                              double mu) {
  double L = base->length();
  auto curve = std::make_shared<DisplacedCurve>(std::move(base), std::move(f), mu);
  return std::make_shared<ReparamArc>(curve, 0.0, L, false, 512);
}

// ---------------------------------------------------------------------------
// TableSpec

double TableSpec::reduce(double r) const {
  r = std::fmod(r, perimeter);
  if (r < 0.0) r += perimeter;
  return r;
}

int TableSpec::piece_at(double r, double* s_local) const {
  r = reduce(r);
  size_t i = pieces.size() - 1;
  for (size_t k = 1; k < pieces.size(); ++k) {
    if (r < pieces[k].s0) {
      i = k - 1;
      break;
    }
  }
  if (s_local) *s_local = std::clamp(r - pieces[i].s0, 0.0, pieces[i].len);
  return (int)i;
}

BoundaryPoint TableSpec::at(double r) const {
  BoundaryPoint b;
  b.r = reduce(r);
  double s;
  b.piece = piece_at(b.r, &s);
  const Piece& p = pieces[b.piece];
  b.s_local = s;
  b.position = p.position(s);
  b.tangent = p.tangent(s);
  b.inward_normal = perp(b.tangent);
  b.curvature = p.curvature(s);
  b.label = p.label;
  return b;
}

const Piece& TableSpec::piece_of_label(int label) const {
  return pieces[piece_index_of_label(label)];
}

int TableSpec::piece_index_of_label(int label) const {
  for (size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].label == label) return (int)i;
  throw InvalidTable("no boundary piece with label " + std::to_string(label));
}

double TableSpec::r_of(int piece_index, double s_local) const {
  return reduce(pieces[piece_index].s0 + s_local);
}

double TableSpec::gluing_distance(double r) const {
  r = reduce(r);
  double best = perimeter;
  for (double g : gluing_r) {
    double d = std::abs(r - g);
    d = std::min(d, perimeter - d);
    best = std::min(best, d);
  }
  return best;
}

TableSpec assemble_table(std::vector<Piece> pieces, TableSpec::Kind kind,
                         const std::string& name, double c1_tol) {
  if (pieces.size() < 2) throw InvalidTable("table needs at least 2 pieces");
  TableSpec t;
  t.kind = kind;
  t.name = name;
  double s = 0.0;
  for (auto& p : pieces) {
    p.len = p.is_arc ? p.arc->length() : p.seg.length();
    p.s0 = s;
    s += p.len;
  }
  t.perimeter = s;
  double scale = s;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const Piece& a = pieces[i];
    const Piece& b = pieces[(i + 1) % pieces.size()];
    Vec2 pe = a.position(a.len), pb = b.position(0.0);
    if (dist(pe, pb) > kChainTol * scale)
      throw InvalidTable("boundary pieces do not chain up at junction " +
                         std::to_string(i));
    Vec2 te = a.tangent(a.len), tb = b.tangent(0.0);
    double ang = std::abs(std::atan2(cross(te, tb), dot(te, tb)));
    // a double cover folds each arc onto its mirror twin through a cusp
    bool cusp_ok = kind == TableSpec::Kind::kDoubleCover && a.label == b.label &&
                   a.mirrored != b.mirrored && std::abs(ang - kPi) < 1e-9;
    if (ang > c1_tol && !cusp_ok)
      throw InvalidTable("boundary not C1 at gluing point " + std::to_string(i) +
                         " (tangent mismatch " + std::to_string(ang) + " rad)");
    t.gluing_points.push_back(pb);
    t.gluing_r.push_back((i + 1 == pieces.size()) ? 0.0 : b.s0);
    t.curvature_jumps.push_back(std::abs(a.curvature(a.len) - b.curvature(0.0)));
  }
  // counter-clockwise orientation via the shoelace sign on a dense polygon
  double area2 = 0.0;
  const int kD = 64;
  std::vector<Vec2> poly;
  for (const auto& p : pieces)
    for (int k = 0; k < kD; ++k) poly.push_back(p.position(p.len * k / kD));
  for (size_t i = 0; i < poly.size(); ++i)
    area2 += cross(poly[i], poly[(i + 1) % poly.size()]);
  if (area2 <= 0.0) throw InvalidTable("boundary is not counter-clockwise");
  t.pieces = std::move(pieces);
  return t;
}

// ---------------------------------------------------------------------------
// canonical builders

namespace {

TableSpec build_two_circle_table(double R1, double R2, double tau,
                                 const std::string& name) {
  if (!(R1 > 0.0 && R2 > 0.0 && tau > 0.0))
    throw InvalidTable("radii and apex distance must be positive");
  double denom = tau - R1 - R2;
  if (std::abs(denom) < 1e-12 && R1 != R2)
    throw InvalidTable("degenerate tangent construction (tau = R1 + R2)");
  double nx = (std::abs(R1 - R2) < 1e-15) ? 0.0 : (R1 - R2) / denom;
  if (!(std::abs(nx) < 1.0))
    throw InvalidTable("no common outer tangent: |R1-R2| too large for tau");
  double ny = std::sqrt(1.0 - nx * nx);
  Vec2 c1{R1, 0.0}, c2{tau - R2, 0.0};
  double beta = std::atan2(ny, nx);  // touch angle on both circles
  // arcs: Gamma1 spans [beta, 2*pi - beta] around c1 (through the left apex),
  // Gamma2 spans [-beta, beta] around c2 (through the right apex)
  auto arc1 = make_circular_arc(c1, R1, beta, 2.0 * kPi - beta);
  auto arc2 = make_circular_arc(c2, R2, -beta, beta);
  Vec2 n_top{nx, ny}, n_bot{nx, -ny};
  Vec2 t1_top = c1 + R1 * n_top, t2_top = c2 + R2 * n_top;
  Vec2 t1_bot = c1 + R1 * n_bot, t2_bot = c2 + R2 * n_bot;

  std::vector<Piece> pieces;
  pieces.push_back({true, arc1, {}, 1});
  if (dist(t1_bot, t2_bot) > 1e-12)
    pieces.push_back({false, nullptr, Segment{t1_bot, t2_bot}, 3});
  pieces.push_back({true, arc2, {}, 2});
  if (dist(t2_top, t1_top) > 1e-12)
    pieces.push_back({false, nullptr, Segment{t2_top, t1_top}, 4});
  bool parallel = std::abs(nx) < 1e-14;
  return assemble_table(std::move(pieces),
                        parallel ? TableSpec::Kind::kStadium
                                 : TableSpec::Kind::kSquash,
                        name);
}

}  // namespace

TableSpec make_stadium(double R, double L) {
  if (!(L >= 0.0)) throw InvalidTable("flat length must be nonnegative");
  return build_two_circle_table(R, R, L + 2.0 * R,
                                "std-stadium(R=" + std::to_string(R) +
                                    ",L=" + std::to_string(L) + ")");
}

TableSpec make_weak_stadium() { return make_stadium(1.0, 0.2); }

TableSpec make_squash_standard(double R1, double R2, double tau) {
  return build_two_circle_table(R1, R2, tau,
                                "squash(R1=" + std::to_string(R1) +
                                    ",R2=" + std::to_string(R2) +
                                    ",tau=" + std::to_string(tau) + ")");
}

// ---------------------------------------------------------------------------
// defocusing check

namespace {

double pair_margin(const Piece& a, double sa, const Piece& b, double sb) {
  Vec2 p1 = a.position(sa), p2 = b.position(sb);
  double c = dist(p1, p2);
  if (c < 1e-12)
    throw DegenerateChord("arc points coincide; arcs overlap or touch");
  Vec2 u = (p2 - p1) * (1.0 / c);
  double r1 = -1.0 / a.curvature(sa);
  double r2 = -1.0 / b.curvature(sb);
  double q1 = std::max(0.0, 2.0 * r1 * dot(u, perp(a.tangent(sa))));
  double q2 = std::max(0.0, 2.0 * r2 * dot(-1.0 * u, perp(b.tangent(sb))));
  return c - std::max(q1, q2);
}

}  // namespace

DefocusReport check_defocusing(const TableSpec& table, int grid) {
  if (table.kind == TableSpec::Kind::kSquash) {
    // squash tables require the doubly defocusing variant
    DefocusReport r3 = check_defocusing(double_cover(table, 3), grid);
    DefocusReport r4 = check_defocusing(double_cover(table, 4), grid);
    return (r3.worst_margin < r4.worst_margin) ? r3 : r4;
  }
  std::vector<int> side1, side2;
  for (size_t i = 0; i < table.pieces.size(); ++i) {
    if (!table.pieces[i].is_arc) continue;
    (table.pieces[i].label == 1 ? side1 : side2).push_back((int)i);
  }
  DefocusReport rep;
  rep.worst_margin = 1e300;
  for (int ia : side1) {
    for (int ib : side2) {
      const Piece& a = table.pieces[ia];
      const Piece& b = table.pieces[ib];
      // inset from the arc ends: touching arcs (shared gluing points) would
      // otherwise produce coincident pairs
      double ina = 1e-7 * a.len, inb = 1e-7 * b.len;
      double best = 1e300, bsa = 0.0, bsb = 0.0;
      for (int i = 0; i <= grid; ++i) {
        double sa = ina + (a.len - 2 * ina) * i / grid;
        for (int j = 0; j <= grid; ++j) {
          double sb = inb + (b.len - 2 * inb) * j / grid;
          double m = pair_margin(a, sa, b, sb);
          if (m < best) best = m, bsa = sa, bsb = sb;
        }
      }
      // local refinement around the worst cell
      double ha = a.len / grid, hb = b.len / grid;
      for (int round = 0; round < 10; ++round) {
        double ca = bsa, cb = bsb;
        for (int i = -8; i <= 8; ++i) {
          double sa = std::clamp(ca + ha * i / 8.0, ina, a.len - ina);
          for (int j = -8; j <= 8; ++j) {
            double sb = std::clamp(cb + hb * j / 8.0, inb, b.len - inb);
            double m = pair_margin(a, sa, b, sb);
            if (m < best) best = m, bsa = sa, bsb = sb;
          }
        }
        ha *= 0.25;
        hb *= 0.25;
      }
      if (best < rep.worst_margin) {
        rep.worst_margin = best;
        rep.witness_r1 = table.r_of(ia, bsa);
        rep.witness_r2 = table.r_of(ib, bsb);
        rep.witness_p1 = a.position(bsa);
        rep.witness_p2 = b.position(bsb);
      }
    }
  }
  // exact-tangency configurations (e.g. arcs of one circle) sit at margin 0
  // up to roundoff; require a strictly positive floor
  rep.holds = rep.worst_margin > 1e-9;
  return rep;
}

TableSpec double_cover(const TableSpec& table, int flat_label) {
  if (table.kind == TableSpec::Kind::kDoubleCover)
    throw InvalidTable("double cover of a double cover is not supported");
  int f = table.piece_index_of_label(flat_label);
  if (table.pieces[f].is_arc) throw InvalidTable("can only reflect across a flat");
  const Segment& m = table.pieces[f].seg;
  Iso2 refl = Iso2::reflection(m.p0, m.direction());

  std::vector<Piece> out;
  int n = (int)table.pieces.size();
  std::vector<int> order;
  for (int k = 1; k < n; ++k) order.push_back((f + k) % n);
  for (int idx : order) out.push_back(table.pieces[idx]);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Piece& p = table.pieces[*it];
    Piece q = p;
    q.mirrored = !p.mirrored;
    if (p.is_arc) {
      q.arc = p.arc->transformed(refl, true);
    } else {
      q.seg = Segment{refl.apply(p.seg.p1), refl.apply(p.seg.p0)};
    }
    out.push_back(q);
  }
  return assemble_table(std::move(out), TableSpec::Kind::kDoubleCover,
                        table.name + "+cover" + std::to_string(flat_label));
}

double table_diameter(const TableSpec& table, int grid) {
  std::vector<double> rs(grid);
  std::vector<Vec2> ps(grid);
  for (int i = 0; i < grid; ++i) {
    rs[i] = table.perimeter * i / grid;
    ps[i] = table.at(rs[i]).position;
  }
  double best = -1.0, ra = 0.0, rb = 0.0;
  for (int i = 0; i < grid; ++i)
    for (int j = i + 1; j < grid; ++j) {
      double d = dist(ps[i], ps[j]);
      if (d > best) best = d, ra = rs[i], rb = rs[j];
    }
  double h = table.perimeter / grid;
  for (int round = 0; round < 24; ++round) {
    double ca = ra, cb = rb;
    for (int i = -6; i <= 6; ++i)
      for (int j = -6; j <= 6; ++j) {
        double a = ca + h * i / 6.0, b = cb + h * j / 6.0;
        double d = dist(table.at(a).position, table.at(b).position);
        if (d > best) best = d, ra = a, rb = b;
      }
    h *= 0.5;
  }
  return best;
}

}  // namespace billiard
