#pragma once

// Directed-rounding scalar kernels for the two precision tiers.
//
// Hardware tier: IEEE double. The basic operations are correctly rounded, so
// an error-free transformation (TwoSum / FMA residual) tells us on which side
// of the rounded result the exact value lies; we step one ulp only when
// needed. Library elementary functions are not guaranteed correctly rounded,
// so their results are pushed two ulps outward.
//
// Big-float tier: MPFR with MPFR_RNDD / MPFR_RNDU at the working precision.

#include "grh/bigfloat.hpp"

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>

namespace grh {

enum class Dir { down, up };

template <class T>
struct Rounding;

namespace detail {

inline double step(double x, Dir d) {
  return std::nextafter(x, d == Dir::up ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity());
}

inline double step_n(double x, Dir d, int n) {
  for (int i = 0; i < n; ++i) x = step(x, d);
  return x;
}

// Below this magnitude an FMA residual may itself be inexact (gradual
// underflow), so we fall back to an unconditional outward step.
inline constexpr double kTiny = 0x1p-960;

// Outward step for a tiny result whose exact sign is known: never step
// across zero.
inline double tiny_step(double r, Dir d, bool positive) {
  const double x = step(r, d);
  if (positive && x < 0) return 0.0;
  if (!positive && x > 0) return -0.0;
  return x;
}

inline double overflow_fix(double r, Dir d) {
  // r is +-inf produced from finite operands.
  if (r > 0) return d == Dir::up ? r : DBL_MAX;
  return d == Dir::down ? r : -DBL_MAX;
}

}  // namespace detail

template <>
struct Rounding<double> {
  static constexpr int kLibmUlps = 2;

  static double add(double a, double b, Dir d) {
    const double s = a + b;
    if (!std::isfinite(s)) {
      if (std::isinf(s) && std::isfinite(a) && std::isfinite(b)) return detail::overflow_fix(s, d);
      return s;
    }
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    if (err == 0.0) return s;
    if (d == Dir::up) return err > 0 ? detail::step(s, Dir::up) : s;
    return err < 0 ? detail::step(s, Dir::down) : s;
  }

  static double sub(double a, double b, Dir d) { return add(a, -b, d); }

  static double mul(double a, double b, Dir d) {
    const double p = a * b;
    if (!std::isfinite(p)) {
      if (std::isinf(p) && std::isfinite(a) && std::isfinite(b)) return detail::overflow_fix(p, d);
      return p;
    }
    if (a == 0.0 || b == 0.0) return p;
    if (std::fabs(p) < detail::kTiny) return detail::tiny_step(p, d, (a > 0) == (b > 0));
    const double e = std::fma(a, b, -p);
    if (e == 0.0) return p;
    if (d == Dir::up) return e > 0 ? detail::step(p, Dir::up) : p;
    return e < 0 ? detail::step(p, Dir::down) : p;
  }

  static double div(double a, double b, Dir d) {
    const double r = a / b;
    if (!std::isfinite(r)) {
      if (std::isinf(r) && std::isfinite(a) && std::isfinite(b) && b != 0.0) return detail::overflow_fix(r, d);
      return r;
    }
    if (a == 0.0 || std::isinf(b)) return r;
    if (std::fabs(r) < detail::kTiny || std::fabs(a) < detail::kTiny) return detail::tiny_step(r, d, (a > 0) == (b > 0));
    const double res = std::fma(-r, b, a);  // a - r*b, exact
    if (res == 0.0) return r;
    const bool above = (res > 0) == (b > 0);  // exact quotient > r
    if (d == Dir::up) return above ? detail::step(r, Dir::up) : r;
    return above ? r : detail::step(r, Dir::down);
  }

  static double sqrt(double a, Dir d) {
    const double r = std::sqrt(a);
    if (!std::isfinite(r) || r == 0.0) return r;
    if (a < detail::kTiny) return detail::tiny_step(r, d, true);
    const double res = std::fma(-r, r, a);
    if (res == 0.0) return r;
    if (d == Dir::up) return res > 0 ? detail::step(r, Dir::up) : r;
    return res < 0 ? detail::step(r, Dir::down) : r;
  }

  static double libm(double r, Dir d) {
    if (std::isnan(r)) return r;
    if (std::isinf(r)) return d == Dir::up ? r : (r > 0 ? DBL_MAX : r);
    return detail::step_n(r, d, kLibmUlps);
  }

  static double exp(double x, Dir d) {
    if (x == 0.0) return 1.0;
    double r = libm(std::exp(x), d);
    if (d == Dir::down && r < 0) r = 0.0;
    return r;
  }
  static double log(double x, Dir d) {
    if (x == 1.0) return 0.0;
    if (x == 0.0) return -std::numeric_limits<double>::infinity();
    return libm(std::log(x), d);
  }
  static double sin(double x, Dir d) {
    if (x == 0.0) return 0.0;
    return std::clamp(libm(std::sin(x), d), -1.0, 1.0);
  }
  static double cos(double x, Dir d) {
    if (x == 0.0) return 1.0;
    return std::clamp(libm(std::cos(x), d), -1.0, 1.0);
  }
  static double atan(double x, Dir d) {
    if (x == 0.0) return 0.0;
    return libm(std::atan(x), d);
  }
  static double pi(Dir d) {
    // 0x1.921fb54442d18p+1 is the double just below pi.
    return d == Dir::down ? 0x1.921fb54442d18p+1 : 0x1.921fb54442d19p+1;
  }
  static double from_int(std::int64_t n, Dir d) {
    const double r = static_cast<double>(n);
    // Compare in long double space is not portable; use exact integer check.
    if (std::fabs(r) < 0x1p63) {
      const auto back = static_cast<std::int64_t>(r);
      if (back == n) return r;
      if (d == Dir::up) return back < n ? detail::step(r, Dir::up) : r;
      return back > n ? detail::step(r, Dir::down) : r;
    }
    return detail::step(r, d);
  }
  static double from_double(double x) { return x; }
  static double from_double(double x, Dir) { return x; }
  static double to_double(double x, Dir) { return x; }
  static double zero() { return 0.0; }
  static double inf(int sign) { return sign * std::numeric_limits<double>::infinity(); }
  static bool is_nan(double x) { return std::isnan(x); }
  static bool is_finite(double x) { return std::isfinite(x); }
  static int bits() { return 53; }
};

template <>
struct Rounding<BigFloat> {
  static mpfr_rnd_t r(Dir d) { return d == Dir::up ? MPFR_RNDU : MPFR_RNDD; }

  static BigFloat add(const BigFloat& a, const BigFloat& b, Dir d) {
    BigFloat out;
    mpfr_add(out.get(), a.get(), b.get(), r(d));
    return out;
  }
  static BigFloat sub(const BigFloat& a, const BigFloat& b, Dir d) {
    BigFloat out;
    mpfr_sub(out.get(), a.get(), b.get(), r(d));
    return out;
  }
  static BigFloat mul(const BigFloat& a, const BigFloat& b, Dir d) {
    BigFloat out;
    mpfr_mul(out.get(), a.get(), b.get(), r(d));
    return out;
  }
  static BigFloat div(const BigFloat& a, const BigFloat& b, Dir d) {
    BigFloat out;
    mpfr_div(out.get(), a.get(), b.get(), r(d));
    return out;
  }
  static BigFloat sqrt(const BigFloat& a, Dir d) {
    BigFloat out;
    mpfr_sqrt(out.get(), a.get(), r(d));
    return out;
  }
  static BigFloat exp(const BigFloat& a, Dir d) {
    BigFloat out;
    mpfr_exp(out.get(), a.get(), r(d));
    return out;
  }
  static BigFloat log(const BigFloat& a, Dir d) {
    BigFloat out;
    mpfr_log(out.get(), a.get(), r(d));
    return out;
  }
  static BigFloat sin(const BigFloat& a, Dir d) {
    BigFloat out;
    mpfr_sin(out.get(), a.get(), r(d));
    return out;
  }
  static BigFloat cos(const BigFloat& a, Dir d) {
    BigFloat out;
    mpfr_cos(out.get(), a.get(), r(d));
    return out;
  }
  static BigFloat atan(const BigFloat& a, Dir d) {
    BigFloat out;
    mpfr_atan(out.get(), a.get(), r(d));
    return out;
  }
  static BigFloat pi(Dir d) {
    BigFloat out;
    mpfr_const_pi(out.get(), r(d));
    return out;
  }
  static BigFloat from_int(std::int64_t n, Dir d) {
    BigFloat out;
    mpfr_set_sj(out.get(), n, r(d));
    return out;
  }
  static BigFloat from_double(double x) { return BigFloat(x); }
  static BigFloat from_double(double x, Dir d) {
    BigFloat out;
    mpfr_set_d(out.get(), x, r(d));
    return out;
  }
  static double to_double(const BigFloat& x, Dir d) { return x.to_double(r(d)); }
  static BigFloat zero() { return BigFloat(); }
  static BigFloat inf(int sign) { return BigFloat::infinity(sign); }
  static bool is_nan(const BigFloat& x) { return x.is_nan(); }
  static bool is_finite(const BigFloat& x) { return !x.is_nan() && !x.is_inf(); }
  static int bits() { return working_precision(); }
};

}  // namespace grh
