#pragma once

#include <cmath>
#include <iosfwd>

#include "qvn/error.hpp"

namespace qvn {

/// q = a + b i + c j + d k with i^2 = j^2 = k^2 = ijk = -1.
struct Quaternion {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double re) : a(re) {}  // NOLINT: reals embed implicitly
  constexpr Quaternion(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion k() { return {0, 0, 0, 1}; }

  constexpr double operator[](int idx) const {
    return idx == 0 ? a : idx == 1 ? b : idx == 2 ? c : d;
  }

  constexpr Quaternion& operator+=(const Quaternion& p) {
    a += p.a; b += p.b; c += p.c; d += p.d;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& p) {
    a -= p.a; b -= p.b; c -= p.c; d -= p.d;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion q, const Quaternion& p) { return q += p; }
constexpr Quaternion operator-(Quaternion q, const Quaternion& p) { return q -= p; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.a, -q.b, -q.c, -q.d}; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator/(Quaternion q, double s) { return q *= (1.0 / s); }

/// Hamilton product; not commutative.
constexpr Quaternion operator*(const Quaternion& q, const Quaternion& p) {
  return {q.a * p.a - q.b * p.b - q.c * p.c - q.d * p.d,
          q.a * p.b + q.b * p.a + q.c * p.d - q.d * p.c,
          q.a * p.c - q.b * p.d + q.c * p.a + q.d * p.b,
          q.a * p.d + q.b * p.c - q.c * p.b + q.d * p.a};
}

constexpr Quaternion mul(const Quaternion& q, const Quaternion& p) { return q * p; }
constexpr Quaternion conj(const Quaternion& q) { return {q.a, -q.b, -q.c, -q.d}; }
constexpr double re(const Quaternion& q) { return q.a; }
constexpr double norm2(const Quaternion& q) { return q.a * q.a + q.b * q.b + q.c * q.c + q.d * q.d; }
inline double abs(const Quaternion& q) { return std::sqrt(norm2(q)); }

/// Multiplicative inverse; throws ErrorKind::Domain for q = 0.
Quaternion inv(const Quaternion& q);

/// Tolerance equality: |q - p| <= abs_tol + rel_tol * max(|q|, |p|).
bool approx_equal(const Quaternion& q, const Quaternion& p, double abs_tol = 1e-12,
                  double rel_tol = 1e-12);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qvn
