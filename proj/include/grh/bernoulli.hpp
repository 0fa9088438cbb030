#pragma once

#include "grh/interval.hpp"

#include <gmpxx.h>

namespace grh {

/// Exact Bernoulli number B_n (B_1 = -1/2). Cached; safe to call from
/// several threads.
const mpq_class& bernoulli(int n);

/// Outward enclosure of an exact rational at the active tier.
template <class T>
Interval<T> rational_interval(const mpq_class& q);

template <>
inline Interval<double> rational_interval<double>(const mpq_class& q) {
  mpfr_t lo, hi;
  mpfr_init2(lo, 53);
  mpfr_init2(hi, 53);
  mpfr_set_q(lo, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi, q.get_mpq_t(), MPFR_RNDU);
  // Values beyond double range saturate outward.
  RealInterval out(mpfr_get_d(lo, MPFR_RNDD), mpfr_get_d(hi, MPFR_RNDU));
  mpfr_clear(lo);
  mpfr_clear(hi);
  return out;
}

template <>
inline Interval<BigFloat> rational_interval<BigFloat>(const mpq_class& q) {
  BigFloat lo, hi;
  mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
  return BigInterval(std::move(lo), std::move(hi));
}

template <class T>
Interval<T> bernoulli_interval(int n) {
  return rational_interval<T>(bernoulli(n));
}

}  // namespace grh
