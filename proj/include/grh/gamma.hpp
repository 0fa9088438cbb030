#pragma once

// Rigorous complex log-gamma on the right half-plane.
//
// log G(z) = (z - 1/2) log z - z + log(2 pi)/2
//            + sum_{k=1}^{K} B_{2k} / (2k (2k-1) z^{2k-1}) + R_K(z),
// |R_K(z)| <= |B_{2K+2}| / ((2K+2)(2K+1) |z|^{2K+1}) * sec^{2K+2}(arg(z)/2).
// Arguments with small modulus are first shifted by the recurrence
// log G(z) = log G(z+m) - sum_{j<m} log(z+j).

#include "grh/bernoulli.hpp"
#include "grh/complex_box.hpp"

#include <cmath>

namespace grh {

namespace detail {

/// Modulus above which the Stirling series is used directly at `bits`.
inline double stirling_radius(int bits) { return 0.2 * bits + 4.0; }

inline constexpr int kMaxStirlingTerms = 400;
inline constexpr int kMaxShift = 1000;

}  // namespace detail

template <class T>
Box<T> log_gamma(const Box<T>& z) {
  using R = Rounding<T>;
  using I = Interval<T>;
  if (!z.re().is_positive()) throw NonPositiveRealPart("log_gamma requires Re(z) > 0");
  if (!z.is_finite()) throw DomainError("log_gamma of an unbounded box");

  const int bits = R::bits();
  const double target = std::ldexp(1.0, -bits - 4);
  const double rmin = detail::stirling_radius(bits);

  // Shift count from a floating estimate of |z|; rigour comes from the
  // interval remainder below, not from this choice.
  const double re_lo = R::to_double(z.re().lo(), Dir::down);
  const double im_mig = R::to_double(z.im().mig(), Dir::down);
  int shift = 0;
  while (std::hypot(re_lo + shift, im_mig) < rmin) {
    if (++shift > detail::kMaxShift) throw NonPositiveRealPart("log_gamma shift budget exhausted");
  }

  const Box<T> w = shift == 0 ? z : z + Box<T>(I(static_cast<std::int64_t>(shift)));
  const I modw = abs(w);
  const I inv_mod = I(1) / modw;
  // sec^2(arg/2) = 2|w| / (|w| + Re w)
  const I sec2 = I(2) * modw / (modw + w.re());

  const Box<T> logw = log(w);
  const I half(0.5);
  Box<T> sum = (w - Box<T>(half)) * logw - w;
  sum += Box<T>(half * log(I(2) * I::pi()));

  const Box<T> inv = Box<T>(I(1)) / w;
  const Box<T> inv2 = inv * inv;
  Box<T> pw = inv;  // w^{-(2k-1)}
  I pmod = inv_mod;  // |w|^{-(2k-1)}, upper bound used for the remainder
  I secp = sec2;     // sec^{2k}
  const I inv_mod2 = sqr(inv_mod);
  I rem;
  for (int k = 1;; ++k) {
    // Remainder if we stop after k-1 terms: first neglected term is k.
    const I coef = bernoulli_interval<T>(2 * k) / I(static_cast<std::int64_t>(2 * k * (2 * k - 1)));
    rem = abs(coef) * pmod * secp;
    if (R::to_double(rem.hi(), Dir::up) < target * std::max(1.0, R::to_double(modw.lo(), Dir::down))) break;
    if (k > detail::kMaxStirlingTerms) throw DomainError("log_gamma: Stirling series did not converge");
    sum += pw * coef;
    pw = pw * inv2;
    pmod = pmod * inv_mod2;
    secp = secp * sec2;
  }
  sum = inflate(sum, rem.hi());

  for (int j = 0; j < shift; ++j) sum -= log(z + Box<T>(I(static_cast<std::int64_t>(j))));
  return sum;
}

/// Gamma function on the right half-plane, via exp(log_gamma).
template <class T>
Box<T> gamma(const Box<T>& z) {
  return exp(log_gamma(z));
}

/// |Gamma(z)| for Re(z) > 0.
template <class T>
Interval<T> abs_gamma(const Box<T>& z) {
  return exp(log_gamma(z).re());
}

}  // namespace grh
