#include "grh/upsample.hpp"

#include <cmath>

namespace grh {

using I = RealInterval;

void UpsampleParams::validate(const SampleGrid& grid) const {
  if (spacing().num * grid.t_step.den != spacing().den * grid.t_step.num)
    throw DomainError("upsample spacing 1/(2 Bw) must equal the grid step");
  if (Nterms < 1 || !(hg > 0)) throw DomainError("upsample needs Nterms >= 1 and hg > 0");
}

RealInterval alias_bound(std::int64_t q, int parity, double t0, const UpsampleParams& params) {
  if (!(t0 >= 0)) throw DomainError("alias bound needs t0 >= 0");
  const I M = I(2.5) - I(parity);
  const I h(params.hg), pi = I::pi();
  const I B = params.Bw.interval();
  const I P = h * pi * (I(t0) + h / sqrt(I(2) * pi) + I(1) + I(1) / (I(2) * sqrt(I(2))));
  const I e = sqr(M) / (I(2) * sqr(h)) - I(2) * pi * B * M;
  return I(2) * exp(M * I(0.5) * log(I(q) / pi)) * zeta_real(M + I(0.5)) * exp(e) * P / (pi * M);
}

RealInterval gauss_term(double t0, const UpsampleParams& params, int N, int n) {
  const I B = params.Bw.interval(), h(params.hg);
  const I k(static_cast<std::int64_t>(N) + n);
  const I poly = pow(I(1.5) + I(t0) + k / (I(2) * B), I::ratio(9, 16));
  return poly * exp(-sqr(k) / (I(8) * sqr(B) * sqr(h))) / (I::pi() * k);
}

RealInterval trunc_bound(std::int64_t q, double t0, const UpsampleParams& params, int N) {
  if (N < 1) throw DomainError("trunc bound needs N >= 1");
  const I B = params.Bw.interval(), h(params.hg);
  if (!(I(N).lo() >= (I(2) * B * h).hi()))
    throw GeometricRatioNotDecreasing("need N >= 2 B h for the tail ratio to decrease");
  const I g0 = gauss_term(t0, params, N, 0), g1 = gauss_term(t0, params, N, 1);
  const I ratio = g1 / g0;
  if (!(ratio.hi() < 1)) throw GeometricRatioNotDecreasing("G(1)/G(0) >= 1; raise Nterms");
  const I pi = I::pi();
  const I lead = sqrt(pi) * zeta_9_8() * exp(I::ratio(1, 6)) * pow(I(2), I::ratio(5, 4)) *
                 pow(I(q) / (I(2) * pi), I::ratio(5, 16));
  // Gamma bound: the first branch is used above; near t = 0 the constant
  // branch can be larger.
  const I first = pow(I(2), I::ratio(1, 4)) * sqrt(pi) * exp(I::ratio(1, 6)) *
                  pow(I(1.5) + I(N) / (I(2) * B), I::ratio(1, 4));
  const I second = sqrt(I(2) * pi) * exp(pi / I(8) + I(0.25));
  const I boost = (second / first).hi() > 1 ? second / first : I(1);
  return lead * boost * g0 / (I(1) - ratio);
}

UpsampleError upsample_error(std::int64_t q, int parity, double t0, const UpsampleParams& params) {
  UpsampleError e;
  e.alias = alias_bound(q, parity, t0, params);
  e.trunc = trunc_bound(q, t0, params, params.Nterms);
  e.total = e.alias + e.trunc;
  return e;
}

namespace {

// The sum over the window with t0 given as an interval u = 2 B t0 (in sample
// units) and the index n0 nearest to it.
RealInterval window_sum(const SampleGrid& grid, const I& u, std::int64_t n_lo, std::int64_t n_hi,
                        const UpsampleParams& params) {
  const I h(params.hg);
  const I step = grid.t_step.interval();
  const I two_h2 = I(2) * sqr(h);
  // sin(pi (n - u)) = (-1)^{n+1} sin(pi u)
  const I su = sin(I::pi() * u);
  I sum(0);
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    const I d = I(n) - u;
    const I w = exp(-sqr(d * step) / two_h2);
    I kern;
    if (d.contains_zero()) {
      kern = d.is_point() ? I(1) : I(-1, 1);  // |sinc| <= 1
    } else {
      kern = su / (I::pi() * d);
      if (n % 2 == 0) kern = -kern;
    }
    sum += grid.at_index(n) * w * kern;
  }
  return sum;
}

}  // namespace

RealInterval upsample_at(const SampleGrid& grid, double t0, const UpsampleParams& params) {
  params.validate(grid);
  if (!(t0 >= 0)) throw DomainError("upsample_at needs t0 >= 0");
  const I step = grid.t_step.interval();
  const I u = I(t0) / step;
  const double uc = u.mid();
  const auto n0 = static_cast<std::int64_t>(std::floor(uc));
  const bool on_grid = u.is_point() && static_cast<double>(n0) == uc;
  const int N = params.Nterms;
  // Every sample at distance < N steps is used; the rest are bounded.
  const std::int64_t n_lo = n0 - N + 1;
  const std::int64_t n_hi = on_grid ? n0 + N - 1 : n0 + N;
  for (std::int64_t n = n_lo; n <= n_hi; ++n)
    if (!grid.usable_index(n)) throw DomainError("not enough usable samples around the upsample point");
  const I s = window_sum(grid, u, n_lo, n_hi, params);
  // Off the grid an omitted sample can sit up to one step further out than
  // the geometric majorant assumes; shift t0 in the polynomial factor.
  const double t_poly = on_grid ? t0 : (I(t0) + step).hi();
  const I alias = alias_bound(grid.q, grid.meta.parity, t0, params);
  const I trunc = trunc_bound(grid.q, t_poly, params, N);
  return inflate(s, (alias + trunc).hi());
}

std::vector<RealInterval> upsample_range(const SampleGrid& grid, std::int64_t j_lo, std::int64_t j_hi, int factor,
                                         const UpsampleParams& params) {
  if (factor < 1) throw DomainError("upsample factor must be positive");
  std::vector<RealInterval> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(0, j_hi - j_lo + 1)));
  for (std::int64_t j = j_lo; j <= j_hi; ++j) {
    const double t = static_cast<double>(j * grid.t_step.num) / static_cast<double>(grid.t_step.den * factor);
    out.push_back(upsample_at(grid, t, params));
  }
  return out;
}

}  // namespace grh
