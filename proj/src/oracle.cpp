#include "grh/oracle.hpp"

#include "grh/gamma.hpp"
#include "grh/hurwitz.hpp"

#include <cmath>

namespace grh {

namespace {

using BI = BigInterval;

BigBox oracle_l_big(const CharGroup& g, const CharIndex& chi, const BigBox& s, int bits) {
  const std::int64_t q = g.q(), L = g.lcm_order();
  const double s_abs = std::hypot(s.re().mag().to_double(MPFR_RNDU), s.im().mag().to_double(MPFR_RNDU));
  const EMParams em = choose_em_params(s_abs, bits);
  BigBox sum(BI(0), BI(0));
  for (std::int64_t a = 1; a < q; ++a) {
    if (gcd64(a, q) != 1) continue;
    const auto p = phase_numerator(g, chi, a);
    sum += root_of_unity<BigFloat>(*p, L) * em_hurwitz(s, BI::ratio(a, q), em);
  }
  return pow(BI(q), -s) * sum;
}

}  // namespace

ComplexBox oracle_l(const CharGroup& g, const CharIndex& chi, const ComplexBox& s, int bits) {
  PrecisionScope scope(bits);
  return to_hardware(oracle_l_big(g, chi, to_bigfloat(s, bits), bits));
}

namespace {

RealInterval oracle_lambda_eps(const CharGroup& g, const CharIndex& chi, const BigBox& eps, double t, int bits) {
  PrecisionScope scope(bits);
  const int a = parity(g, chi);
  const BI tt(t);
  const BigBox l = oracle_l_big(g, chi, BigBox(BI(0.5), tt), bits);
  const BigBox lg = log_gamma(BigBox(BI(0.5 + a) * BI(0.5), tt * BI(0.5)));
  const BigBox factor = exp(BigBox(lg.re() + BI::pi() * tt / BI(4), lg.im() + tt * BI(0.5) * log(BI(g.q()) / BI::pi())));
  const BigBox lam = eps * factor * l;
  const ComplexBox h = to_hardware(lam);
  if (!h.im().contains_zero()) throw IndeterminateSign("oracle Lambda is not real");
  return inflate(h.re(), h.im().mag());
}

}  // namespace

RealInterval oracle_lambda(const CharGroup& g, const CharIndex& chi, double t, int bits) {
  PrecisionScope scope(bits);
  return oracle_lambda_eps(g, chi, root_number_big(g, chi, bits), t, bits);
}

std::vector<std::pair<double, double>> oracle_zeros(const CharGroup& g, const CharIndex& chi, double t_lo, double t_hi,
                                                   int bits, int oversample) {
  const double step = 5.0 / 64.0 / oversample;
  PrecisionScope scope(bits);
  const BigBox eps = root_number_big(g, chi, bits);
  std::vector<std::pair<double, double>> out;
  double prev_t = 0;
  int prev_sign = 0;
  for (auto k = static_cast<std::int64_t>(std::ceil(t_lo / step));; ++k) {
    const double t = static_cast<double>(k) * step;
    if (t > t_hi) break;
    const RealInterval v = oracle_lambda_eps(g, chi, eps, t, bits);
    if (v.contains_zero()) throw IndeterminateSign("oracle value straddles zero");
    const int sign = v.is_positive() ? 1 : -1;
    if (prev_sign != 0 && sign != prev_sign) out.emplace_back(prev_t, t);
    prev_sign = sign;
    prev_t = t;
  }
  return out;
}

ComplexBox oracle_char_sum(const CharGroup& g, const std::vector<ComplexBox>& a_by_residue, const CharIndex& chi) {
  PrecisionScope scope(128);
  const std::int64_t q = g.q(), L = g.lcm_order();
  BigBox sum(BI(0), BI(0));
  for (std::int64_t n = 1; n < q; ++n) {
    const auto p = phase_numerator(g, chi, n);
    if (!p) continue;
    sum += root_of_unity<BigFloat>(*p, L) * to_bigfloat(a_by_residue[static_cast<std::size_t>(n)], 128);
  }
  return to_hardware(sum);
}

ComplexBox oracle_fhat(const CharGroup& g, const CharIndex& chi, double x, double eta, int mult, int bits) {
  PrecisionScope scope(bits);
  const std::int64_t q = g.q(), L = g.lcm_order();
  const int a = parity(g, chi);
  const BI bx(x), beta(eta);
  // e^{2u} = e^{2x} e^{i pi eta/2}
  const BigBox e2u = exp(BigBox(BI(2) * bx, BI::pi() * beta * BI(0.5)));
  const BigBox rate = e2u * (BI::pi() / BI(q));
  const double y = rate.re().lo().to_double(MPFR_RNDD);
  if (!(y > 0)) throw DomainError("oracle theta series needs a positive decay rate");
  const auto terms = static_cast<std::int64_t>(mult * (std::ceil(std::sqrt(30.0 / y)) + 1));
  BigBox sum(BI(0), BI(0));
  for (std::int64_t n = 1; n <= terms; ++n) {
    const auto p = phase_numerator(g, chi, n);
    if (!p) continue;
    BigBox term = root_of_unity<BigFloat>(*p, L) * exp(-(rate * BI(n * n)));
    if (a == 1) term = term * BI(n);
    sum += term;
  }
  // Omitted terms: sum_{n>terms} n^a e^{-y n^2} <= (terms+1)^a e^{-y (terms+1)^2} / (1 - r)^2.
  const BI yy(y);
  const BI k1(terms + 1);
  const BI r = exp(-BI(2) * yy * k1);
  const BI tail = exp(-yy * sqr(k1)) * (a == 1 ? k1 : BI(1)) / sqr(BI(1) - r);
  sum = inflate(sum, tail.hi());
  const BI c = a == 0 ? BI(0.5) : BI(1.5);
  const BigBox eu = exp(BigBox(c * bx, c * BI::pi() * beta / BI(4)));
  const BI qpow = exp(-c * BI(0.5) * log(BI(q)));
  return to_hardware(root_number_big(g, chi, bits) * eu * (BI(2) * qpow) * sum);
}

}  // namespace grh
