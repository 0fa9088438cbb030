#include "grh/turing.hpp"

#include "grh/gamma.hpp"

#include <cmath>

namespace grh {

using I = RealInterval;

RealInterval SBound::value(std::int64_t q, const TuringWindow& w) const {
  // Constants as decimal strings are not doubles; enclose them.
  const I a = I::ratio(static_cast<std::int64_t>(std::llround(c1 * 1e7)), 10000000);
  const I b = I::ratio(static_cast<std::int64_t>(std::llround(c2 * 1e7)), 10000000);
  return a + b * log(I(q) * (I(w.t0) + I(w.h)) / (I(2) * I::pi()));
}

SBound s_constants(SSource source) {
  if (source == SSource::rumely) return {1.8397, 0.1242, SSource::rumely};
  return {2.17618, 0.0679955, SSource::trudgian};
}

SSource default_source(std::int64_t q, double t0) {
  return static_cast<double>(q) * t0 < 1e6 ? SSource::rumely : SSource::trudgian;
}

RealInterval s_integral_bound(std::int64_t q, const TuringWindow& w, SSource source) {
  if (!(w.t0 > 50)) throw HypothesisViolated("the S integral bounds need t0 > 50");
  if (!(w.h > 0)) throw DomainError("window width must be positive");
  const I v = s_constants(source).value(q, w);
  return I(0, v.hi());
}

RealInterval log_gamma_integral(int parity, const TuringWindow& w, int subdivisions) {
  if (!(w.t0 > 0) || !(w.h > 0) || subdivisions < 1) throw DomainError("bad quadrature window");
  const I x0 = (I(0.5) + I(parity)) * I(0.5);
  const I dt = I(w.h) / I(subdivisions);
  I sum(0);
  for (int j = 0; j < subdivisions; ++j) {
    const I t = I(w.t0) + (I(j) + I(0.5)) * dt;
    sum += log_gamma(ComplexBox(x0, t * I(0.5))).im();
  }
  sum = sum * dt;
  // f'' = -Im psi'(z)/4 and |Im psi'(z)| <= 1/|z|^2 + min(1/x0, pi/(2 Im z)),
  // both decreasing in t, so the value at t0 bounds the window.
  const I y = I(w.t0) * I(0.5);
  const I f2 = (I(1) / (sqr(x0) + sqr(y)) + min(I(1) / x0, I::pi() / (I(2) * y))) / I(4);
  const I err = I(w.h) * sqr(dt) / I(24) * f2;
  return inflate(sum, err.hi());
}

RealInterval phi_integral(std::int64_t q, int parity, const TuringWindow& w, int subdivisions) {
  const I h(w.h), t0(w.t0);
  const I lin = (I(2) * h * t0 + sqr(h)) / I(2) * log(I(q) / I::pi());
  const I v = (lin + I(2) * log_gamma_integral(parity, w, subdivisions)) / (h * I::pi());
  if (!(v.width() <= 0.25)) throw QuadratureNotTight("phi integral enclosure wider than 0.25");
  return v;
}

RealInterval zero_count_integral(const std::vector<SignChange>& changes, const TuringWindow& w) {
  const double end = w.t0 + w.h;
  I sum(0);
  for (const auto& c : changes) {
    if (c.hi <= w.t0 || c.lo >= end) continue;
    if (c.lo < w.t0 || c.hi > end) throw DomainError("sign change straddles a window end");
    sum += I(end) - I(c.lo, c.hi);
  }
  return sum;
}

double turing_h(std::int64_t q, double t0) {
  const double step = 5.0 / 64.0;
  double h = 8;
  for (int it = 0; it < 100; ++it) {
    const TuringWindow w{t0, h};
    const double s = s_constants(default_source(q, t0)).value(q, w).hi();
    if (4 * s / h <= 0.8) break;
    h += 1;
  }
  return std::ceil(h / step) * step;
}

RealInterval turing_bracket(std::int64_t q, int parity, const TuringWindow& w, const std::vector<SignChange>& window_chi,
                            const std::vector<SignChange>& window_bar, SSource source) {
  const I phi = phi_integral(q, parity, w);
  const I h(w.h);
  const I nt = (zero_count_integral(window_chi, w) + zero_count_integral(window_bar, w)) / h;
  const double s = s_integral_bound(q, w, source).hi();
  const I sterm = I(2) * I(-s, s) / h;
  return phi - nt + sterm;
}

std::int64_t bracketed_integer(const RealInterval& bracket) {
  const double n = std::ceil(bracket.lo());
  if (!(n <= bracket.hi()) || n + 1 <= bracket.hi()) return -1;
  return static_cast<std::int64_t>(n);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::failed: return "failed";
    case Verdict::needs_escalation: return "needs_escalation";
  }
  return "failed";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "verified") return Verdict::verified;
  if (s == "failed") return Verdict::failed;
  if (s == "needs_escalation") return Verdict::needs_escalation;
  throw DomainError("unknown verdict '" + s + "'");
}

}  // namespace grh
