#include "grh/sampler_smallq.hpp"

#include "grh/dft.hpp"
#include "grh/gamma.hpp"

#include <cmath>

namespace grh {

using I = RealInterval;

RealInterval FftPlan::delta() const { return I::pi() * I(0.5) * (I(1) - I(std::fabs(eta))); }

FftPlan FftPlan::make(std::int64_t N, double eta, Rational A) {
  if (N < 2 || !is_power_of_two(static_cast<std::size_t>(N))) throw DomainError("plan length N must be a power of two");
  if (!(std::fabs(eta) < 1)) throw DomainError("plan needs |eta| < 1");
  if (A.num <= 0 || A.den <= 0) throw DomainError("plan needs A > 0");
  if ((N * A.den) % A.num != 0) throw DomainError("B = N/A must be exact");
  if ((A.interval() * I(2) * I::pi()).hi() < 1) throw DomainError("plan needs A >= 1/(2 pi)");
  FftPlan p;
  p.A = A;
  p.N = N;
  p.eta = eta;
  return p;
}

FftPlan FftPlan::for_height(double t_max) {
  const double need = std::max(128.0, 8.0 * t_max);
  std::int64_t N = 64;
  while (static_cast<double>(N) * 5.0 / 64.0 < need) N *= 2;
  const double B = static_cast<double>(N) * 5.0 / 64.0;
  const double one_minus = std::min(1.0, 48.0 / B);
  return make(N, 1.0 - one_minus);
}

ThetaCharacter ThetaCharacter::make(const CharGroup& g, const CharIndex& chi) {
  ThetaCharacter c;
  c.q = g.q();
  c.chi = chi;
  c.meta = char_meta(g, chi);
  if (!c.meta.primitive) throw NotPrimitive("theta series need a primitive character");
  c.table = char_table(g, chi);
  return c;
}

namespace {

// pi e^{2x} cos(pi eta/2) / q
I theta_Y(const I& x, std::int64_t q, double eta) {
  return I::pi() * exp(I(2) * x) * cos(I::pi() * I(eta) * I(0.5)) / I(q);
}

}  // namespace

int theta_cutoff(const RealInterval& x, std::int64_t q, const FftPlan& plan) {
  const double y = theta_Y(x, q, plan.eta).lo();
  if (!(y > 0)) throw TailDivergence("theta decay rate is not positive");
  const double k = std::ceil(std::sqrt(30.0 / y)) - 1.0;
  if (k > 1e8) throw TailDivergence("theta series needs too many terms");
  return static_cast<int>(std::max(0.0, k));
}

double theta_tail(const RealInterval& Y, int K, int power) {
  const I y(Y.lo());
  if (!(Y.lo() > 0)) throw TailDivergence("theta decay rate is not positive");
  const I k1(static_cast<std::int64_t>(K) + 1);
  const I first = exp(-y * sqr(k1));
  const I r = exp(-I(2) * y * k1);
  if (!(r.hi() < 1)) throw TailDivergence("geometric majorant does not contract");
  const I one_r = I(1) - r;
  if (power == 0) return (first / one_r).hi();
  return (first * (k1 / one_r + r / sqr(one_r))).hi();
}

namespace {

ComplexBox fhat_impl(const I& x, const ThetaCharacter& c, const FftPlan& plan, int trunc, int power, bool with_tail = true) {
  const std::int64_t q = c.q;
  const I eta(plan.eta);
  const I Y = theta_Y(x, q, plan.eta);
  const int K = trunc < 0 ? theta_cutoff(x, q, plan) : trunc;
  const double tail = with_tail ? theta_tail(Y, K, power) : 0.0;

  // Term n is chi(n) n^power e^{-Y n^2} e^{-i phi n^2}, phi = pi e^{2x} sin(pi eta/2)/q.
  // Magnitude and angle are evaluated separately: a complex power recurrence
  // wraps badly once K runs into the hundreds.
  const I e2x = exp(I(2) * x);
  const I phi = I::pi() * e2x * sin(I::pi() * eta * I(0.5)) / I(q);
  const bool real_w = phi.is_point() && phi.lo() == 0;
  ComplexBox sum(I(0), I(0));
  for (int n = 1; n <= K; ++n) {
    const ComplexBox& ch = c.table[static_cast<std::size_t>(n % q)];
    if (ch.contains_zero() && ch.re().is_point()) continue;
    const I n2(static_cast<std::int64_t>(n) * n);
    I mag = exp(-Y * n2);
    if (power == 1) mag = mag * I(static_cast<std::int64_t>(n));
    if (real_w) {
      sum += ch * mag;
    } else {
      const I ang = phi * n2;
      sum += ch * ComplexBox(mag * cos(ang), -(mag * sin(ang)));
    }
  }
  sum = inflate(sum, tail);

  // 2 eps e^{c u} q^{-c/2} with c = 1/2 or 3/2
  const I cexp = power == 0 ? I(0.5) : I(1.5);
  const ComplexBox eu = exp(ComplexBox(cexp * x, cexp * I::pi() * eta / I(4)));
  const I qpow = exp(-cexp * I(0.5) * log(I(q)));
  return c.meta.epsilon * eu * (I(2) * qpow) * sum;
}

}  // namespace

ComplexBox fhat_even(const RealInterval& x, const ThetaCharacter& c, const FftPlan& plan, int trunc) {
  if (c.meta.parity != 0) throw DomainError("fhat_even needs an even character");
  return fhat_impl(x, c, plan, trunc, 0);
}

ComplexBox fhat_odd(const RealInterval& x, const ThetaCharacter& c, const FftPlan& plan, int trunc) {
  if (c.meta.parity != 1) throw DomainError("fhat_odd needs an odd character");
  return fhat_impl(x, c, plan, trunc, 1);
}

ComplexBox fhat(const RealInterval& x, const ThetaCharacter& c, const FftPlan& plan, int trunc) {
  return fhat_impl(x, c, plan, trunc, c.meta.parity);
}

RealInterval alias_bound_fhat(std::int64_t n, const FftPlan& plan, std::int64_t q, int parity) {
  const I A = plan.A_interval(), B = plan.B_interval();
  const I two_pi = I(2) * I::pi();
  const I w1 = two_pi * I(n) / B + two_pi * A;
  const I w2 = -(two_pi * I(n) / B) + two_pi * A;
  const I delta = plan.delta();
  const I c = I::pi() * delta * exp(-delta);
  const I X1 = c * w1, X2 = c * w2;
  if (!(X1.lo() > 1 && X2.lo() > 1)) throw XConditionViolated("X(w) > 1 fails; enlarge A");
  const I denom_common = sqrt(delta) * (I(1) - exp(-I::pi() * A));
  if (parity == 0) {
    const I t1 = exp(w1 * I(0.5) - X1) * (I(1) + I(1) / (I(2) * X1));
    const I t2 = exp(w2 * I(0.5) - X2) * (I(1) + I(1) / (I(2) * X2));
    return I(4) * (t1 + t2) / (pow(I(q), I(0.25)) * denom_common);
  }
  const I t1 = exp(w1 * I(1.5) - X1) * pow(I(1) + I(1) / (I(2) * X1), I(1.5));
  const I t2 = exp(w2 * I(1.5) - X2) * pow(I(1) + I(1) / (I(2) * X2), I(1.5));
  return I(4) * (t1 + t2) / (pow(I(q), I(0.75)) * denom_common);
}

namespace {

// sum_{k>=0} |Fhat(w + 2 pi k A)| from the n = 1 dominated theta bound.
I theta_alias_one_side(const I& w, const FftPlan& plan, std::int64_t q, int parity) {
  const I c = parity == 0 ? I(0.5) : I(1.5);
  const I Y = theta_Y(w, q, plan.eta);
  if (!(Y.lo() > 0)) throw XConditionViolated("theta decay rate is not positive at the alias point");
  if (parity == 1 && !(Y.lo() >= 0.5)) throw XConditionViolated("odd alias bound needs Y >= 1/2; enlarge A");
  const I y(Y.lo());
  const I T = I(2) * exp(c * w - c * I(0.5) * log(I(q)) - y) * (I(1) + I(1) / (I(2) * y));
  const I two_pi_A = I(2) * I::pi() * plan.A_interval();
  const I rho = exp(c * two_pi_A - y * (exp(I(2) * two_pi_A) - I(1)));
  if (!(rho.hi() < 1)) throw XConditionViolated("alias series does not contract; enlarge A");
  return T / (I(1) - rho);
}

}  // namespace

RealInterval alias_bound_theta(std::int64_t n, const FftPlan& plan, std::int64_t q, int parity) {
  const I B = plan.B_interval();
  const I two_pi = I(2) * I::pi();
  const I w1 = two_pi * I(n) / B + two_pi * plan.A_interval();
  const I w2 = -(two_pi * I(n) / B) + two_pi * plan.A_interval();
  return theta_alias_one_side(w1, plan, q, parity) + theta_alias_one_side(w2, plan, q, parity);
}

RealInterval grid_beta(const RealInterval& t, int parity) {
  const I at = abs(t);
  const I c = parity == 0 ? I(0.5) : I(1.5);
  const I shift = parity == 0 ? I(0.25) : I(2.25);
  const I diff = abs(sqr(t) - shift);
  if (diff.contains_zero()) return I(-1e300, -1e300);
  return I::pi() / I(4) - c * atan(I(1) / (I(2) * at)) - I(4) / (sqr(I::pi()) * diff);
}

RealInterval grid_majorant(const RealInterval& t, const FftPlan& plan, std::int64_t q, int parity) {
  const I a(parity);
  const ComplexBox z((I(0.5) + a) * I(0.5), t * I(0.5));
  const I log_abs_gamma = log_gamma(z).re();
  const I pref = exp(-(I(0.5) + a) * I(0.5) * log(I::pi()));
  const I rade = pow(I(q) / (I(2) * I::pi()) * (I(1.5) + abs(t)), I::ratio(5, 16));
  return zeta_9_8() * pref * exp(log_abs_gamma + I::pi() * I(plan.eta) * t / I(4)) * rade;
}

RealInterval t_grid_error(std::int64_t m, const FftPlan& plan, std::int64_t q, int parity) {
  const I t = I(m) / plan.A_interval();
  const I B = plan.B_interval();
  const I pe = I::pi() * I(plan.eta) / I(4);
  const I tp = t + B, tm = t - B;
  const I gp = grid_beta(tp, parity) - pe;
  const I gm = grid_beta(tm, parity) + pe;
  if (!(gp.lo() > 0 && gm.lo() > 0)) throw BetaConditionViolated("beta condition fails at this grid point");
  const I ep = grid_majorant(tp, plan, q, parity) / (I(1) - exp(-B * gp));
  const I em = grid_majorant(tm, plan, q, parity) / (I(1) - exp(-B * gm));
  return ep + em;
}

SampleGrid smallq_samples(const ThetaCharacter& c, const FftPlan& plan, std::int64_t k_lo, std::int64_t k_hi,
                          SmallQTerms terms) {
  const std::int64_t N = plan.N;
  if (k_hi < k_lo) throw DomainError("empty sample range");
  if (!(2 * std::max(std::abs(k_lo), std::abs(k_hi)) < N)) throw DomainError("sample range exceeds the plan period");
  const int parity = c.meta.parity;
  const I B = plan.B_interval();
  const I two_pi = I(2) * I::pi();

  // Dual samples at x = 2 pi n/B, n = 0..N/2; the rest by conjugate symmetry.
  BoxVector dual(static_cast<std::size_t>(N));
  const std::int64_t half = N / 2;
  for (std::int64_t n = 0; n <= half; ++n) {
    const I x = two_pi * I(n) / B;
    ComplexBox v = fhat_impl(x, c, plan, terms.fixed_trunc, parity, terms.theta_tail);
    if (terms.alias) v = inflate(v, alias_bound_theta(n, plan, c.q, parity).hi());
    dual[static_cast<std::size_t>(n)] = v;
  }
  for (std::int64_t n = half + 1; n < N; ++n) dual[static_cast<std::size_t>(n)] = dual[static_cast<std::size_t>(N - n)].conj();

  const BoxVector y = dft(dual, Direction::backward);
  const I scale = two_pi / B;

  SampleGrid g;
  g.q = c.q;
  g.character = c.chi;
  g.meta = c.meta;
  g.t_step = Rational{plan.A.den, plan.A.num};
  g.first = k_lo;
  g.algorithm = "smallq";
  const auto count = static_cast<std::size_t>(k_hi - k_lo + 1);
  g.samples.reserve(count);
  g.usable.assign(count, 1);
  const I one_minus_eta = I(1) - I(plan.eta);
  const I pi_pow = exp((I(0.5) + I(parity)) * I(0.5) * log(I::pi()));
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const std::size_t m = static_cast<std::size_t>(((k % N) + N) % N);
    ComplexBox f = scale * y[m];
    if (terms.t_grid) {
      try {
        f = inflate(f, t_grid_error(k, plan, c.q, parity).hi());
      } catch (const BetaConditionViolated&) {
        g.samples.push_back(I::entire());
        g.usable[static_cast<std::size_t>(k - k_lo)] = 0;
        continue;
      }
    }
    const I t = I(k) / plan.A_interval();
    const ComplexBox lam = f * (pi_pow * exp(I::pi() * one_minus_eta * t / I(4)));
    g.samples.push_back(project_real(lam));
  }
  return g;
}

SampleGrid smallq_samples(const CharGroup& g, const CharIndex& chi, double t_lo, double t_hi) {
  const ThetaCharacter c = ThetaCharacter::make(g, chi);
  const FftPlan plan = FftPlan::for_height(std::max(std::fabs(t_lo), std::fabs(t_hi)));
  const double step = 5.0 / 64.0;
  const auto k_lo = static_cast<std::int64_t>(std::ceil(t_lo / step));
  const auto k_hi = static_cast<std::int64_t>(std::floor(t_hi / step));
  return smallq_samples(c, plan, k_lo, k_hi);
}

}  // namespace grh
