#pragma once

// Closed real intervals [lo, hi] with outward-rounded endpoints, templated on
// the endpoint scalar (double for the hardware tier, BigFloat for the
// big-float tier). Every operation returns an enclosure of the exact image.

#include "grh/errors.hpp"
#include "grh/rounding.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <utility>

namespace grh {

template <class T>
class Interval {
 public:
  using scalar_type = T;
  using R = Rounding<T>;

  Interval() : lo_(R::zero()), hi_(R::zero()) {}
  /// Point interval. For T = BigFloat, a double converts exactly.
  Interval(double x) : lo_(R::from_double(x)), hi_(R::from_double(x)) {}  // NOLINT: implicit by design of numeric literals
  Interval(int n) : Interval(static_cast<std::int64_t>(n)) {}              // NOLINT
  Interval(std::int64_t n) : lo_(R::from_int(n, Dir::down)), hi_(R::from_int(n, Dir::up)) {}  // NOLINT
  Interval(T lo, T hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (R::is_nan(lo_) || R::is_nan(hi_)) {
      lo_ = R::inf(-1);
      hi_ = R::inf(1);
    } else if (hi_ < lo_) {
      throw InvalidInterval("interval with lo > hi");
    }
  }
  template <class U = T, class = std::enable_if_t<!std::is_same_v<U, double>>>
  explicit Interval(const T& x) : lo_(x), hi_(x) {}

  /// Enclosure of the rational n/d.
  static Interval ratio(std::int64_t n, std::int64_t d) { return Interval(n) / Interval(d); }
  static Interval pi() { return Interval(R::pi(Dir::down), R::pi(Dir::up)); }
  static Interval entire() { return Interval(R::inf(-1), R::inf(1)); }
  /// Symmetric interval [-r, r] for a nonnegative radius r.
  static Interval symmetric(const T& r) { return Interval(R::sub(R::zero(), r, Dir::down), r); }

  const T& lo() const { return lo_; }
  const T& hi() const { return hi_; }

  bool contains(const T& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool contains_zero() const { return lo_ <= R::zero() && R::zero() <= hi_; }
  bool intersects(const Interval& o) const { return !(hi_ < o.lo_ || o.hi_ < lo_); }
  bool is_positive() const { return lo_ > R::zero(); }
  bool is_negative() const { return hi_ < R::zero(); }
  bool is_finite() const { return R::is_finite(lo_) && R::is_finite(hi_); }
  bool is_point() const { return lo_ == hi_; }

  /// Upper bound on hi - lo.
  T width() const { return R::sub(hi_, lo_, Dir::up); }
  /// Upper bound on the radius about mid().
  T rad() const {
    const T m = mid();
    const T a = R::sub(m, lo_, Dir::up);
    const T b = R::sub(hi_, m, Dir::up);
    return a < b ? b : a;
  }
  /// A point inside the interval (not necessarily the exact midpoint).
  T mid() const {
    if (!R::is_finite(lo_) || !R::is_finite(hi_)) {
      if (R::is_finite(lo_)) return lo_;
      if (R::is_finite(hi_)) return hi_;
      return R::zero();
    }
    T half = R::mul(R::add(lo_, hi_, Dir::down), R::from_double(0.5), Dir::down);
    if (half < lo_) half = lo_;
    if (hi_ < half) half = hi_;
    return half;
  }
  /// Upper bound on max |x| over the interval.
  T mag() const {
    const T a = R::sub(R::zero(), lo_, Dir::up);
    return a < hi_ ? hi_ : a;
  }
  /// Lower bound on min |x| over the interval.
  T mig() const {
    if (contains_zero()) return R::zero();
    if (lo_ > R::zero()) return lo_;
    return R::sub(R::zero(), hi_, Dir::down);
  }

  Interval operator-() const { return Interval(R::sub(R::zero(), hi_, Dir::down), R::sub(R::zero(), lo_, Dir::up)); }

  Interval& operator+=(const Interval& o) { return *this = *this + o; }
  Interval& operator-=(const Interval& o) { return *this = *this - o; }
  Interval& operator*=(const Interval& o) { return *this = *this * o; }
  Interval& operator/=(const Interval& o) { return *this = *this / o; }

  friend Interval operator+(const Interval& a, const Interval& b) {
    return Interval(R::add(a.lo_, b.lo_, Dir::down), R::add(a.hi_, b.hi_, Dir::up));
  }
  friend Interval operator-(const Interval& a, const Interval& b) {
    return Interval(R::sub(a.lo_, b.hi_, Dir::down), R::sub(a.hi_, b.lo_, Dir::up));
  }
  friend Interval operator*(const Interval& a, const Interval& b) {
    const T z = R::zero();
    // Sign-case dispatch keeps the common cases to two directed products.
    if (a.lo_ >= z && b.lo_ >= z)
      return Interval(R::mul(a.lo_, b.lo_, Dir::down), R::mul(a.hi_, b.hi_, Dir::up));
    if (a.hi_ <= z && b.hi_ <= z)
      return Interval(R::mul(a.hi_, b.hi_, Dir::down), R::mul(a.lo_, b.lo_, Dir::up));
    if (a.lo_ >= z && b.hi_ <= z)
      return Interval(R::mul(a.hi_, b.lo_, Dir::down), R::mul(a.lo_, b.hi_, Dir::up));
    if (a.hi_ <= z && b.lo_ >= z)
      return Interval(R::mul(a.lo_, b.hi_, Dir::down), R::mul(a.hi_, b.lo_, Dir::up));
    T lo = R::mul(a.lo_, b.lo_, Dir::down);
    T hi = R::mul(a.lo_, b.lo_, Dir::up);
    auto fold = [&](const T& x, const T& y) {
      T l = R::mul(x, y, Dir::down);
      T h = R::mul(x, y, Dir::up);
      if (l < lo) lo = std::move(l);
      if (hi < h) hi = std::move(h);
    };
    fold(a.lo_, b.hi_);
    fold(a.hi_, b.lo_);
    fold(a.hi_, b.hi_);
    return Interval(std::move(lo), std::move(hi));
  }
  friend Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw DivisorContainsZero("interval divisor contains zero");
    const T z = R::zero();
    if (b.lo_ > z) {
      if (a.lo_ >= z) return Interval(R::div(a.lo_, b.hi_, Dir::down), R::div(a.hi_, b.lo_, Dir::up));
      if (a.hi_ <= z) return Interval(R::div(a.lo_, b.lo_, Dir::down), R::div(a.hi_, b.hi_, Dir::up));
      return Interval(R::div(a.lo_, b.lo_, Dir::down), R::div(a.hi_, b.lo_, Dir::up));
    }
    if (a.lo_ >= z) return Interval(R::div(a.hi_, b.hi_, Dir::down), R::div(a.lo_, b.lo_, Dir::up));
    if (a.hi_ <= z) return Interval(R::div(a.hi_, b.lo_, Dir::down), R::div(a.lo_, b.hi_, Dir::up));
    return Interval(R::div(a.hi_, b.hi_, Dir::down), R::div(a.lo_, b.hi_, Dir::up));
  }

 private:
  T lo_;
  T hi_;
};

using RealInterval = Interval<double>;
using BigInterval = Interval<BigFloat>;

template <class T>
Interval<T> hull(const Interval<T>& a, const Interval<T>& b) {
  return Interval<T>(b.lo() < a.lo() ? b.lo() : a.lo(), a.hi() < b.hi() ? b.hi() : a.hi());
}

/// Intersection; throws if the intervals are disjoint.
template <class T>
Interval<T> intersect(const Interval<T>& a, const Interval<T>& b) {
  if (!a.intersects(b)) throw InvalidInterval("empty intersection");
  return Interval<T>(a.lo() < b.lo() ? b.lo() : a.lo(), b.hi() < a.hi() ? b.hi() : a.hi());
}

/// Widens an interval by a nonnegative radius on each side.
template <class T>
Interval<T> inflate(const Interval<T>& a, const T& r) {
  using R = Rounding<T>;
  return Interval<T>(R::sub(a.lo(), r, Dir::down), R::add(a.hi(), r, Dir::up));
}

template <class T>
Interval<T> abs(const Interval<T>& a) {
  return Interval<T>(a.mig(), a.mag());
}

template <class T>
Interval<T> sqr(const Interval<T>& a) {
  using R = Rounding<T>;
  const T lo = a.mig();
  const T hi = a.mag();
  return Interval<T>(R::mul(lo, lo, Dir::down), R::mul(hi, hi, Dir::up));
}

template <class T>
Interval<T> max(const Interval<T>& a, const Interval<T>& b) {
  return Interval<T>(a.lo() < b.lo() ? b.lo() : a.lo(), a.hi() < b.hi() ? b.hi() : a.hi());
}

template <class T>
Interval<T> min(const Interval<T>& a, const Interval<T>& b) {
  return Interval<T>(b.lo() < a.lo() ? b.lo() : a.lo(), b.hi() < a.hi() ? b.hi() : a.hi());
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Interval<T>& x) {
  if constexpr (std::is_same_v<T, double>) {
    os.precision(17);
    os << '[' << x.lo() << ", " << x.hi() << ']';
  } else {
    os << '[' << x.lo().to_double(MPFR_RNDD) << ", " << x.hi().to_double(MPFR_RNDU) << ']';
  }
  return os;
}

}  // namespace grh
