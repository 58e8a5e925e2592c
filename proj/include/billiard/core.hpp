#ifndef BILLIARD_CORE_HPP
#define BILLIARD_CORE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace billiard {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double c) const { return {c * x, c * y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double c, const Vec2& v) { return {c * v.x, c * v.y}; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double norm2(const Vec2& a) { return a.x * a.x + a.y * a.y; }
// counter-clockwise quarter turn; maps a CCW boundary tangent to the inward normal
inline Vec2 perp(const Vec2& a) { return {-a.y, a.x}; }
inline Vec2 normalized(const Vec2& a) {
  double n = norm(a);
  return {a.x / n, a.y / n};
}
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Planar isometry x -> A x + t with A orthogonal (det = +-1).
struct Iso2 {
  double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
  Vec2 t{0.0, 0.0};

  Vec2 apply(const Vec2& v) const {
    return {a11 * v.x + a12 * v.y + t.x, a21 * v.x + a22 * v.y + t.y};
  }
  Vec2 linear(const Vec2& v) const {
    return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y};
  }
  double det() const { return a11 * a22 - a12 * a21; }

  // this o other (apply other first)
  Iso2 compose(const Iso2& o) const {
    Iso2 r;
    r.a11 = a11 * o.a11 + a12 * o.a21;
    r.a12 = a11 * o.a12 + a12 * o.a22;
    r.a21 = a21 * o.a11 + a22 * o.a21;
    r.a22 = a21 * o.a12 + a22 * o.a22;
    r.t = apply(o.t);
    return r;
  }

  static Iso2 identity() { return {}; }

  // reflection across the line through p with unit direction d
  static Iso2 reflection(const Vec2& p, const Vec2& d) {
    Iso2 r;
    double c = d.x, s = d.y;
    r.a11 = c * c - s * s;
    r.a12 = 2.0 * c * s;
    r.a21 = 2.0 * c * s;
    r.a22 = s * s - c * c;
    // t = p - A p
    r.t = {p.x - (r.a11 * p.x + r.a12 * p.y), p.y - (r.a21 * p.x + r.a22 * p.y)};
    return r;
  }
};

// Kahan-compensated accumulator for sums with heavy cancellation.
struct KahanSum {
  double s = 0.0;
  double c = 0.0;

  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

inline double kahan_total(const std::vector<double>& xs) {
  KahanSum k;
  for (double x : xs) k.add(x);
  return k.value();
}

// Deterministic 64-bit mix, used to derive per-task RNG seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kPi = 3.14159265358979323846264338327950288;

}  // namespace billiard

#endif
