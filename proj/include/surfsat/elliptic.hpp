#pragma once

#include "surfsat/rational.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfsat {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q, nonsingular.
class WeierstrassCurve {
 public:
  WeierstrassCurve(Rational a1, Rational a2, Rational a3, Rational a4, Rational a6)
      : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)), a6_(std::move(a6)) {
    if (discriminant() == 0) throw std::invalid_argument("Weierstrass curve is singular (discriminant 0)");
  }

  /// y^2 = x^3 + a x + b
  static WeierstrassCurve short_form(Rational a, Rational b) { return {0, 0, 0, std::move(a), std::move(b)}; }

  const Rational& a1() const { return a1_; }
  const Rational& a2() const { return a2_; }
  const Rational& a3() const { return a3_; }
  const Rational& a4() const { return a4_; }
  const Rational& a6() const { return a6_; }

  Rational discriminant() const {
    Rational b2 = a1_ * a1_ + 4 * a2_;
    Rational b4 = 2 * a4_ + a1_ * a3_;
    Rational b6 = a3_ * a3_ + 4 * a6_;
    Rational b8 = a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
  }

  bool contains(const Rational& x, const Rational& y) const {
    return y * y + a1_ * x * y + a3_ * y == x * x * x + a2_ * x * x + a4_ * x + a6_;
  }

  friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;

 private:
  Rational a1_, a2_, a3_, a4_, a6_;
};

class ECPoint {
 public:
  static ECPoint infinity() { return ECPoint(); }
  static ECPoint affine(Rational x, Rational y) {
    ECPoint p;
    p.coords_ = std::array<Rational, 2>{std::move(x), std::move(y)};
    return p;
  }

  bool is_infinity() const { return !coords_.has_value(); }
  const Rational& x() const { return coords_.value()[0]; }
  const Rational& y() const { return coords_.value()[1]; }

  friend bool operator==(const ECPoint&, const ECPoint&) = default;

 private:
  std::optional<std::array<Rational, 2>> coords_;
};

inline std::string to_string(const ECPoint& p) {
  if (p.is_infinity()) return "O";
  return "(" + to_string(p.x()) + "," + to_string(p.y()) + ")";
}

inline bool on_curve(const WeierstrassCurve& e, const ECPoint& p) {
  return p.is_infinity() || e.contains(p.x(), p.y());
}

namespace detail {
inline void require_on_curve(const WeierstrassCurve& e, const ECPoint& p) {
  if (!on_curve(e, p)) throw std::invalid_argument("point " + to_string(p) + " is not on the curve");
}
}  // namespace detail

inline ECPoint negate(const WeierstrassCurve& e, const ECPoint& p) {
  detail::require_on_curve(e, p);
  if (p.is_infinity()) return p;
  return ECPoint::affine(p.x(), -p.y() - e.a1() * p.x() - e.a3());
}

namespace detail {

// Chord-tangent addition for points already known to be on the curve.
inline ECPoint add_unchecked(const WeierstrassCurve& e, const ECPoint& p, const ECPoint& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const Rational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();
  Rational lambda, nu;
  if (x1 != x2) {
    lambda = (y2 - y1) / (x2 - x1);
    nu = (y1 * x2 - y2 * x1) / (x2 - x1);
  } else {
    Rational denom = 2 * y1 + e.a1() * x1 + e.a3();
    if (y1 + y2 + e.a1() * x2 + e.a3() == 0 || denom == 0) return ECPoint::infinity();
    lambda = (3 * x1 * x1 + 2 * e.a2() * x1 + e.a4() - e.a1() * y1) / denom;
    nu = (-x1 * x1 * x1 + e.a4() * x1 + 2 * e.a6() - e.a3() * y1) / denom;
  }
  Rational x3 = lambda * lambda + e.a1() * lambda - e.a2() - x1 - x2;
  Rational y3 = -(lambda + e.a1()) * x3 - nu - e.a3();
  return ECPoint::affine(std::move(x3), std::move(y3));
}

inline ECPoint negate_unchecked(const WeierstrassCurve& e, const ECPoint& p) {
  if (p.is_infinity()) return p;
  return ECPoint::affine(p.x(), -p.y() - e.a1() * p.x() - e.a3());
}

inline ECPoint scalar_mul_unchecked(const WeierstrassCurve& e, std::int64_t n, const ECPoint& p) {
  ECPoint base = n < 0 ? negate_unchecked(e, p) : p;
  std::uint64_t k = n < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(n) : static_cast<std::uint64_t>(n);
  ECPoint acc = ECPoint::infinity();
  while (k) {
    if (k & 1) acc = add_unchecked(e, acc, base);
    k >>= 1;
    if (k) base = add_unchecked(e, base, base);
  }
  return acc;
}

}  // namespace detail

inline ECPoint add(const WeierstrassCurve& e, const ECPoint& p, const ECPoint& q) {
  detail::require_on_curve(e, p);
  detail::require_on_curve(e, q);
  return detail::add_unchecked(e, p, q);
}

inline ECPoint scalar_mul(const WeierstrassCurve& e, std::int64_t n, const ECPoint& p) {
  detail::require_on_curve(e, p);
  return detail::scalar_mul_unchecked(e, n, p);
}

struct TorsionResult {
  bool torsion = false;
  int order = 0;  // meaningful when torsion

  friend bool operator==(const TorsionResult&, const TorsionResult&) = default;
};

/// Orders of rational torsion points (Mazur).
inline constexpr std::array<int, 11> kRationalTorsionOrders{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12};

namespace detail {

// u with u^i a_i integral for all i; (u^2 x, u^3 y) are coordinates on an
// integral model.
inline Integer integral_scale(const WeierstrassCurve& e) {
  Integer u = 1;
  for (const Rational* a : {&e.a1(), &e.a2(), &e.a3(), &e.a4(), &e.a6()}) u = boost::multiprecision::lcm(u, denominator_of(*a));
  return u;
}

// On an integral model a rational torsion point has integral coordinates,
// except points of order 2, where 4x and 8y are integral.
inline bool may_be_torsion(const ECPoint& q, const Integer& u) {
  if (q.is_infinity()) return true;
  Rational x = q.x() * u * u * 4, y = q.y() * u * u * u * 8;
  return is_integral(x) && is_integral(y);
}

}  // namespace detail

/// Torsion decision over Q: nP = O for some n <= 12 or never.
inline TorsionResult is_torsion(const WeierstrassCurve& e, const ECPoint& p) {
  detail::require_on_curve(e, p);
  const Integer u = detail::integral_scale(e);
  ECPoint acc = p;
  for (int n = 1; n <= 12; ++n) {
    if (acc.is_infinity()) return {true, n};
    if (!detail::may_be_torsion(acc, u)) return {false, 0};  // a multiple is non-torsion
    acc = detail::add_unchecked(e, acc, p);
  }
  return {false, 0};
}

struct WeightedPoint {
  ECPoint point;
  std::int64_t multiplicity = 1;

  friend bool operator==(const WeightedPoint&, const WeightedPoint&) = default;
};

enum class Obstruction { Found, Inconclusive };

inline std::string to_string(Obstruction o) { return o == Obstruction::Found ? "ObstructionFound" : "Inconclusive"; }

struct ObstructionResult {
  Obstruction verdict = Obstruction::Inconclusive;
  ECPoint sum;
  TorsionResult sum_torsion;
};

/// If sum m_i p_i is non-torsion, no plane curve meets the cubic exactly in
/// the p_i with those local intersection multiplicities, at any multiple.
/// A torsion sum is necessary for such a curve but does not produce one.
inline ObstructionResult sum_obstruction(const WeierstrassCurve& e, std::span<const WeightedPoint> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    detail::require_on_curve(e, points[i].point);
    if (points[i].multiplicity < 1) throw std::invalid_argument("sum_obstruction: multiplicities must be >= 1");
    for (std::size_t j = 0; j < i; ++j)
      if (points[i].point == points[j].point) {
        throw std::invalid_argument("sum_obstruction: repeated point " + to_string(points[i].point) +
                                    "; the blown-up points must be distinct");
      }
  }
  ECPoint sum = ECPoint::infinity();
  for (const auto& wp : points) sum = detail::add_unchecked(e, sum, detail::scalar_mul_unchecked(e, wp.multiplicity, wp.point));
  TorsionResult t = is_torsion(e, sum);
  return {t.torsion ? Obstruction::Inconclusive : Obstruction::Found, sum, t};
}

}  // namespace surfsat
