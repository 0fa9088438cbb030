#include "grh/lfunction.hpp"

#include "grh/gamma.hpp"
#include "grh/hurwitz.hpp"

#include <cmath>

namespace grh {

namespace {

constexpr int kFactorBits = 128;

template <class T>
Box<T> lambda_factor_t(std::int64_t q, int parity, const Interval<T>& t) {
  using I = Interval<T>;
  const Box<T> z(I(0.5 + parity) * I(0.5), t * I(0.5));
  const Box<T> lg = log_gamma(z);
  const I re = lg.re() + I::pi() * t / I(4);
  const I im = lg.im() + t * I(0.5) * log(I(q) / I::pi());
  return exp(Box<T>(re, im));
}

}  // namespace

ComplexBox lambda_factor(std::int64_t q, int parity, double t) {
  PrecisionScope scope(kFactorBits);
  return to_hardware(lambda_factor_t<BigFloat>(q, parity, BigInterval(t)));
}

RealInterval project_real(const ComplexBox& z) {
  if (!z.im().contains_zero()) throw RealnessViolation("completed L-function box excludes the real axis");
  return inflate(z.re(), z.im().mag());
}

RealInterval lambda_from_l(const ComplexBox& l, const ComplexBox& factor, const ComplexBox& epsilon) {
  return project_real(epsilon * factor * l);
}

RealInterval lambda_from_l(const ComplexBox& l, double t, const CharMeta& meta, std::int64_t q) {
  return lambda_from_l(l, lambda_factor(q, meta.parity, t), meta.epsilon);
}

RealInterval zeta_real(const RealInterval& x) {
  return em_hurwitz(ComplexBox(x), RealInterval(1), PrecisionTier::bigfloat(128)).re();
}

const RealInterval& zeta_9_8() {
  static const RealInterval z = zeta_real(RealInterval::ratio(9, 8));
  return z;
}

RealInterval l_function_bound(std::int64_t q, const RealInterval& t) {
  using I = RealInterval;
  const I e = I::ratio(5, 16);
  const I base = I(q) / (I(2) * I::pi()) * (I(1.5) + abs(t));
  return zeta_9_8() * pow(base, e);
}

namespace {

template <class T>
Box<T> l_direct_t(const CharGroup& g, const CharIndex& chi, const Box<T>& s, int bits) {
  using I = Interval<T>;
  const std::int64_t q = g.q(), L = g.lcm_order();
  const double s_abs = std::hypot(0.5, Rounding<T>::to_double(s.im().mag(), Dir::up));
  const EMParams em = choose_em_params(s_abs, bits);
  Box<T> sum(I(0), I(0));
  for (std::int64_t i = 0; i < g.phi(); ++i) {
    const std::int64_t a = g.residue(i);
    const std::int64_t p = *phase_numerator(g, chi, a);
    sum += root_of_unity<T>(p, L) * em_hurwitz(s, I::ratio(a, q), em);
  }
  return pow(I(q), -s) * sum;
}

}  // namespace

ComplexBox l_direct(const CharGroup& g, const CharIndex& chi, double t, PrecisionTier tier) {
  if (tier.is_hardware()) return l_direct_t<double>(g, chi, ComplexBox(RealInterval(0.5), RealInterval(t)), 53);
  PrecisionScope scope(tier.bits);
  return to_hardware(l_direct_t<BigFloat>(g, chi, BigBox(BigInterval(0.5), BigInterval(t)), tier.bits));
}

RealInterval lambda_direct(const CharGroup& g, const CharIndex& chi, const CharMeta& meta, double t, PrecisionTier tier) {
  if (tier.is_hardware()) return lambda_from_l(l_direct(g, chi, t, tier), t, meta, g.q());
  PrecisionScope scope(tier.bits);
  const BigBox s(BigInterval(0.5), BigInterval(t));
  const BigBox l = l_direct_t<BigFloat>(g, chi, s, tier.bits);
  const BigBox eps = root_number_big(g, chi, tier.bits);
  const BigBox lam = eps * lambda_factor_t<BigFloat>(g.q(), meta.parity, BigInterval(t)) * l;
  return project_real(to_hardware(lam));
}

std::vector<CharIndex> primitive_characters(const CharGroup& g) {
  std::vector<CharIndex> out;
  for (const auto& chi : g.all_characters())
    if (is_primitive(g, chi)) out.push_back(chi);
  return out;
}

}  // namespace grh
