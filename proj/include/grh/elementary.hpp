#pragma once

// Interval elementary functions: sqrt, exp, log, sin, cos, atan, plus the
// conversions between the hardware and big-float precision tiers.

#include "grh/interval.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace grh {

struct PrecisionTier {
  enum class Kind { hardware, bigfloat };
  Kind kind = Kind::hardware;
  int bits = 53;

  static PrecisionTier hardware() { return {Kind::hardware, 53}; }
  static PrecisionTier bigfloat(int bits) {
    if (bits < 64) throw DomainError("big-float tier needs at least 64 bits");
    return {Kind::bigfloat, bits};
  }
  bool is_hardware() const { return kind == Kind::hardware; }
  std::string name() const { return is_hardware() ? "hardware" : "bigfloat" + std::to_string(bits); }
  friend bool operator==(const PrecisionTier&, const PrecisionTier&) = default;
};

template <class T>
Interval<T> sqrt(const Interval<T>& a) {
  using R = Rounding<T>;
  if (a.lo() < R::zero()) throw NegativeSqrtDomain("sqrt of interval with negative lower endpoint");
  return Interval<T>(R::sqrt(a.lo(), Dir::down), R::sqrt(a.hi(), Dir::up));
}

template <class T>
Interval<T> exp(const Interval<T>& a) {
  using R = Rounding<T>;
  return Interval<T>(R::exp(a.lo(), Dir::down), R::exp(a.hi(), Dir::up));
}

template <class T>
Interval<T> log(const Interval<T>& a) {
  using R = Rounding<T>;
  if (!(a.lo() > R::zero())) throw LogDomain("log of interval not bounded away from zero");
  return Interval<T>(R::log(a.lo(), Dir::down), R::log(a.hi(), Dir::up));
}

template <class T>
Interval<T> atan(const Interval<T>& a) {
  using R = Rounding<T>;
  return Interval<T>(R::atan(a.lo(), Dir::down), R::atan(a.hi(), Dir::up));
}

namespace detail {

// Shared body of sin/cos: `phase` is 1 for sin (extrema at pi/2 + k pi) and
// 0 for cos (extrema at k pi). Even k is a maximum, odd k a minimum.
template <class T, class F>
Interval<T> periodic(const Interval<T>& x, int phase, F f) {
  using R = Rounding<T>;
  const Interval<T> unit(R::from_double(-1.0), R::from_double(1.0));
  if (!x.is_finite()) return unit;
  const Interval<T> pi = Interval<T>::pi();
  if (R::mul(R::from_double(2.0), pi.lo(), Dir::down) <= x.width()) return unit;

  const T a = f(x.lo(), Dir::down), b = f(x.hi(), Dir::down);
  const T c = f(x.lo(), Dir::up), d = f(x.hi(), Dir::up);
  T lo = a < b ? a : b;
  T hi = c < d ? d : c;

  // Extremum k sits at (2k + phase) * pi / 2.
  const double xl = R::to_double(x.lo(), Dir::down);
  const double xh = R::to_double(x.hi(), Dir::up);
  const double pid = 3.141592653589793;
  const auto k0 = static_cast<std::int64_t>(std::floor(xl / pid - 0.5 * phase)) - 1;
  const auto k1 = static_cast<std::int64_t>(std::ceil(xh / pid - 0.5 * phase)) + 1;
  const Interval<T> half_pi = pi * Interval<T>(0.5);
  for (std::int64_t k = k0; k <= k1; ++k) {
    const Interval<T> crit = Interval<T>(2 * k + phase) * half_pi;
    if (!crit.intersects(x)) continue;
    const bool k_even = ((k % 2) + 2) % 2 == 0;
    if (k_even) hi = R::from_double(1.0);
    else lo = R::from_double(-1.0);
  }
  if (lo < unit.lo()) lo = unit.lo();
  if (unit.hi() < hi) hi = unit.hi();
  return Interval<T>(lo, hi);
}

}  // namespace detail

template <class T>
Interval<T> sin(const Interval<T>& x) {
  return detail::periodic(x, 1, [](const T& v, Dir d) { return Rounding<T>::sin(v, d); });
}

template <class T>
Interval<T> cos(const Interval<T>& x) {
  return detail::periodic(x, 0, [](const T& v, Dir d) { return Rounding<T>::cos(v, d); });
}

/// x^y for x > 0.
template <class T>
Interval<T> pow(const Interval<T>& x, const Interval<T>& y) {
  return exp(y * log(x));
}

// ---- tier conversion ------------------------------------------------------

inline RealInterval to_hardware(const RealInterval& a) { return a; }

inline RealInterval to_hardware(const BigInterval& a) {
  return RealInterval(a.lo().to_double(MPFR_RNDD), a.hi().to_double(MPFR_RNDU));
}

/// Re-rounds outward to `bits` of precision.
inline BigInterval to_bigfloat(const BigInterval& a, int bits) {
  PrecisionScope scope(bits);
  BigFloat lo, hi;
  mpfr_set(lo.get(), a.lo().get(), MPFR_RNDD);
  mpfr_set(hi.get(), a.hi().get(), MPFR_RNDU);
  return BigInterval(std::move(lo), std::move(hi));
}

inline BigInterval to_bigfloat(const RealInterval& a, int bits) {
  PrecisionScope scope(bits);
  return BigInterval(Rounding<BigFloat>::from_double(a.lo(), Dir::down),
                     Rounding<BigFloat>::from_double(a.hi(), Dir::up));
}

/// Outward conversion of an interval to the requested tier. The hardware
/// tier returns doubles; the big-float tier is returned by to_bigfloat.
template <class T>
RealInterval widen_to_hardware(const Interval<T>& a) {
  return to_hardware(a);
}

// ---- lossless text --------------------------------------------------------

std::string hex(double x);
double parse_hex_double(const std::string& s);
std::string to_hex(const RealInterval& a);
std::string to_hex(const BigInterval& a);
RealInterval parse_real_interval(const std::string& lo, const std::string& hi);
BigInterval parse_big_interval(const std::string& lo, const std::string& hi, int bits);

}  // namespace grh
