#pragma once

// Axis-aligned complex rectangles with interval sides.

#include "grh/elementary.hpp"

#include <ostream>

namespace grh {

template <class T>
class Box {
 public:
  using interval_type = Interval<T>;
  using scalar_type = T;

  Box() = default;
  Box(Interval<T> re) : re_(std::move(re)), im_(0) {}  // NOLINT: real embedding
  Box(double re) : re_(re), im_(0) {}                  // NOLINT
  Box(Interval<T> re, Interval<T> im) : re_(std::move(re)), im_(std::move(im)) {}

  static Box i() { return Box(Interval<T>(0), Interval<T>(1)); }

  const Interval<T>& re() const { return re_; }
  const Interval<T>& im() const { return im_; }
  Interval<T>& re() { return re_; }
  Interval<T>& im() { return im_; }

  bool contains(const T& x, const T& y) const { return re_.contains(x) && im_.contains(y); }
  bool contains(const Box& o) const { return re_.contains(o.re_) && im_.contains(o.im_); }
  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool intersects(const Box& o) const { return re_.intersects(o.re_) && im_.intersects(o.im_); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }

  Box conj() const { return Box(re_, -im_); }
  Box operator-() const { return Box(-re_, -im_); }

  Box& operator+=(const Box& o) { re_ += o.re_; im_ += o.im_; return *this; }
  Box& operator-=(const Box& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
  Box& operator*=(const Box& o) { return *this = *this * o; }
  Box& operator*=(const Interval<T>& o) { re_ *= o; im_ *= o; return *this; }

  friend Box operator+(const Box& a, const Box& b) { return Box(a.re_ + b.re_, a.im_ + b.im_); }
  friend Box operator-(const Box& a, const Box& b) { return Box(a.re_ - b.re_, a.im_ - b.im_); }
  friend Box operator*(const Box& a, const Box& b) {
    return Box(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
  }
  friend Box operator*(const Box& a, const Interval<T>& s) { return Box(a.re_ * s, a.im_ * s); }
  friend Box operator*(const Interval<T>& s, const Box& a) { return Box(a.re_ * s, a.im_ * s); }
  friend Box operator/(const Box& a, const Interval<T>& s) { return Box(a.re_ / s, a.im_ / s); }
  friend Box operator/(const Box& a, const Box& b) {
    const Interval<T> n = sqr(b.re_) + sqr(b.im_);
    if (n.contains_zero()) throw DivisorContainsZero("complex divisor box contains zero");
    return Box(a.re_ * b.re_ + a.im_ * b.im_, a.im_ * b.re_ - a.re_ * b.im_) / n;
  }

 private:
  Interval<T> re_{0};
  Interval<T> im_{0};
};

using ComplexBox = Box<double>;
using BigBox = Box<BigFloat>;

template <class T>
Box<T> hull(const Box<T>& a, const Box<T>& b) {
  return Box<T>(hull(a.re(), b.re()), hull(a.im(), b.im()));
}

template <class T>
Interval<T> abs2(const Box<T>& z) {
  return sqr(z.re()) + sqr(z.im());
}

template <class T>
Interval<T> abs(const Box<T>& z) {
  return sqrt(abs2(z));
}

/// Adds [-r, r] to both real and imaginary parts.
template <class T>
Box<T> inflate(const Box<T>& z, const T& r) {
  return Box<T>(inflate(z.re(), r), inflate(z.im(), r));
}

template <class T>
Box<T> exp(const Box<T>& z) {
  const Interval<T> m = exp(z.re());
  return Box<T>(m * cos(z.im()), m * sin(z.im()));
}

/// e^{i x} for real x.
template <class T>
Box<T> expi(const Interval<T>& x) {
  return Box<T>(cos(x), sin(x));
}

/// Argument of a box in the open right half-plane.
template <class T>
Interval<T> arg_right(const Box<T>& z) {
  if (!z.re().is_positive()) throw LogDomain("argument requires Re(z) > 0");
  return atan(z.im() / z.re());
}

/// Principal logarithm; callers keep Re(z) > 0 so the branch cut is never
/// approached.
template <class T>
Box<T> log(const Box<T>& z) {
  if (!z.re().is_positive()) throw LogDomain("complex log requires Re(z) > 0");
  return Box<T>(Interval<T>(0.5) * log(abs2(z)), arg_right(z));
}

/// x^s for a positive real base x.
template <class T>
Box<T> pow(const Interval<T>& x, const Box<T>& s) {
  const Interval<T> lx = log(x);
  return exp(Box<T>(s.re() * lx, s.im() * lx));
}

/// A square root of z (z bounded away from 0). Uses the root with positive
/// real part unless Re(z) < -|z|/4, otherwise the root with positive
/// imaginary part. The margin keeps the choice stable across precisions
/// for values near the imaginary axis.
template <class T>
Box<T> sqrt(const Box<T>& z) {
  const Interval<T> r = abs(z);
  if (r.lo() <= Rounding<T>::zero()) throw DomainError("complex sqrt of a box touching zero");
  const Interval<T> half(0.5);
  const T m = z.re().mid();
  if (!(m < Rounding<T>::mul(r.lo(), Rounding<T>::from_double(-0.25), Dir::down))) {
    const Interval<T> u = sqrt(max((r + z.re()) * half, Interval<T>(0)));
    if (!u.is_positive()) throw DomainError("complex sqrt branch degenerate");
    return Box<T>(u, z.im() / (Interval<T>(2) * u));
  }
  const Interval<T> v = sqrt(max((r - z.re()) * half, Interval<T>(0)));
  if (!v.is_positive()) throw DomainError("complex sqrt branch degenerate");
  return Box<T>(z.im() / (Interval<T>(2) * v), v);
}

inline ComplexBox to_hardware(const BigBox& z) { return ComplexBox(to_hardware(z.re()), to_hardware(z.im())); }
inline ComplexBox to_hardware(const ComplexBox& z) { return z; }
inline BigBox to_bigfloat(const ComplexBox& z, int bits) {
  return BigBox(to_bigfloat(z.re(), bits), to_bigfloat(z.im(), bits));
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Box<T>& z) {
  return os << '(' << z.re() << " + i" << z.im() << ')';
}

}  // namespace grh
