#pragma once

// Gaussian-windowed sinc interpolation of Lambda between grid samples. For an
// evaluation point t0 put W(t) = Lambda(t) exp(-(t - t0)^2 / 2h^2); then
// W(t0) = Lambda(t0) and
//   W(t0) = sum_n W(n/2B) sinc(2 B pi (n/2B - t0)) + aliasing + truncation,
// with the sample spacing 1/(2B) equal to the grid step.

#include "grh/lfunction.hpp"

#include <cstdint>
#include <vector>

namespace grh {

struct UpsampleParams {
  Rational Bw{32, 5};  // bandwidth; spacing 1/(2 Bw)
  double hg = 0.5;     // Gaussian width h
  int Nterms = 56;     // samples used on each side

  Rational spacing() const { return Rational{Bw.den, 2 * Bw.num}; }
  /// Throws DomainError unless 1/(2 Bw) matches the grid step and Nterms >= 2 Bw h.
  void validate(const SampleGrid& grid) const;
};

struct UpsampleError {
  RealInterval alias;
  RealInterval trunc;
  RealInterval total;  // alias + trunc
};

/// I_chi <= 2 (q/pi)^{M/2} zeta(M + 1/2) exp(M^2/2h^2 - 2 pi B M) P(t0, h) / (pi M),
/// M = 5/2 - a, P(t0, h) <= h pi (t0 + h/sqrt(2 pi) + 1 + 1/(2 sqrt 2)).
/// Needs t0 >= 0.
RealInterval alias_bound(std::int64_t q, int parity, double t0, const UpsampleParams& params);

/// G(n) = (3/2 + t0 + (N+n)/2B)^{9/16} exp(-(N+n)^2 / 8B^2h^2) / (pi (N+n)).
RealInterval gauss_term(double t0, const UpsampleParams& params, int N, int n);

/// Bound on the omitted samples |n - n0| >= N:
///   sqrt(pi) zeta(9/8) e^{1/6} 2^{5/4} (q/2pi)^{5/16} G(0) / (1 - G(1)/G(0)),
/// times max(1, sqrt(2pi) e^{pi/8 + 1/4} / (2^{1/4} sqrt(pi) e^{1/6} (3/2 + N/2B)^{1/4}))
/// so that the small-|t| branch of the gamma bound is covered too.
/// Throws GeometricRatioNotDecreasing if G(1)/G(0) >= 1 or N < 2 B h (below
/// that the ratio G(n+1)/G(n) need not decrease).
RealInterval trunc_bound(std::int64_t q, double t0, const UpsampleParams& params, int N);

UpsampleError upsample_error(std::int64_t q, int parity, double t0, const UpsampleParams& params);

/// Lambda(t0) from the grid. Throws DomainError if t0 < 0 or fewer than
/// Nterms usable samples lie on either side.
RealInterval upsample_at(const SampleGrid& grid, double t0, const UpsampleParams& params = {});

/// Values at t = j * step / factor for j in [j_lo, j_hi].
std::vector<RealInterval> upsample_range(const SampleGrid& grid, std::int64_t j_lo, std::int64_t j_hi, int factor,
                                         const UpsampleParams& params = {});

}  // namespace grh
