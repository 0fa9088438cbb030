#pragma once

// Small-q sampler. For a primitive character of parity a put
//   F(t) = pi^{-(1/2+a)/2} e^{-pi (1-eta) t/4} Lambda_chi(t),
// whose Fourier transform Fhat(x) = (1/2pi) int F(t) e^{-ixt} dt is a theta
// series (u = x + i pi eta/4):
//   even: 2 eps e^{u/2}  q^{-1/4} sum_n   chi(n) exp(-pi n^2 e^{2u}/q)
//   odd:  2 eps e^{3u/2} q^{-3/4} sum_n n chi(n) exp(-pi n^2 e^{2u}/q).
// Sampling Fhat at x = 2 pi n/B and applying a backward DFT of length
// N = A B gives the B-periodisation of F at t = m/A:
//   sum_k F(m/A + kB) = (2 pi/B) sum_n Fhat~(n) e(nm/N).
// F is real, so Fhat(-x) = conj Fhat(x) supplies the negative frequencies.

#include "grh/lfunction.hpp"

#include <cstdint>
#include <vector>

namespace grh {

struct FftPlan {
  Rational A{64, 5};  // t-grid density, samples at m/A
  std::int64_t N = 0;  // A B, a power of two
  double eta = 0;

  double B() const { return static_cast<double>(N) * static_cast<double>(A.den) / static_cast<double>(A.num); }
  RealInterval A_interval() const { return A.interval(); }
  RealInterval B_interval() const { return RealInterval::ratio(N * A.den, A.num); }
  /// (pi/2)(1 - |eta|)
  RealInterval delta() const;

  /// Validates N a power of two, A >= 1/(2 pi), |eta| < 1, and N A.den
  /// divisible by A.num so that B is exact.
  static FftPlan make(std::int64_t N, double eta, Rational A = {64, 5});
  /// Default plan covering [0, t_max]: A = 64/5, B >= max(128, 8 t_max),
  /// 1 - eta = min(1, 48/B).
  static FftPlan for_height(double t_max);
};

/// A primitive character prepared for theta sums.
struct ThetaCharacter {
  std::int64_t q = 0;
  CharIndex chi;
  CharMeta meta;
  std::vector<ComplexBox> table;  // chi(0..q-1)

  static ThetaCharacter make(const CharGroup& g, const CharIndex& chi);
};

/// Smallest K with Y (K+1)^2 >= 30, Y = pi e^{2x} cos(pi eta/2)/q.
int theta_cutoff(const RealInterval& x, std::int64_t q, const FftPlan& plan);

/// Bound on the omitted terms n > K of sum n^p e^{-Y n^2} (p = 0 or 1),
/// majorised by a geometric series. Throws TailDivergence when the ratio
/// is not below 1.
double theta_tail(const RealInterval& Y, int K, int power);

/// Fhat at x with `trunc` explicit terms (trunc < 0 picks theta_cutoff).
ComplexBox fhat_even(const RealInterval& x, const ThetaCharacter& c, const FftPlan& plan, int trunc = -1);
ComplexBox fhat_odd(const RealInterval& x, const ThetaCharacter& c, const FftPlan& plan, int trunc = -1);
ComplexBox fhat(const RealInterval& x, const ThetaCharacter& c, const FftPlan& plan, int trunc = -1);

/// The closed-form aliasing bound with w1,2 = +-2 pi n/B + 2 pi A and
/// X(w) = pi delta e^{-delta} w:
///   4 (e^{w1/2 - X1}(1 + 1/(2 X1)) + e^{w2/2 - X2}(1 + 1/(2 X2))) / (q^{1/4} delta^{1/2} (1 - e^{-pi A}))
/// and the odd analogue with 3w/2, the 3/2 power and q^{3/4}.
/// Throws XConditionViolated unless X(w1), X(w2) > 1.
RealInterval alias_bound_fhat(std::int64_t n, const FftPlan& plan, std::int64_t q, int parity);

/// Aliasing bound used by the sampler, from the theta series directly:
/// |Fhat(y)| <= 2 e^{c y} q^{-c/2} e^{-Y(y)} (1 + 1/(2 Y(y))) with c = 1/2
/// (even) or 3/2 (odd), summed over y = w + 2 pi k A as a geometric series.
/// Stays valid as eta -> 1, where the closed form above needs A ~ 1/delta.
/// Throws XConditionViolated if the series does not contract (or Y < 1/2
/// in the odd case).
RealInterval alias_bound_theta(std::int64_t n, const FftPlan& plan, std::int64_t q, int parity);

/// Majorant E(t) of |F(t)| (Rademacher input), with (3/2 + |t|).
RealInterval grid_majorant(const RealInterval& t, const FftPlan& plan, std::int64_t q, int parity);
/// beta_e or beta_o.
RealInterval grid_beta(const RealInterval& t, int parity);

/// |sum_{k != 0} F(m/A + kB)|:
///   E(m/A+B)/(1 - exp(-B(beta(m/A+B) - pi eta/4))) + E(m/A-B)/(1 - exp(-B(beta(m/A-B) + pi eta/4))).
/// Throws BetaConditionViolated when either beta condition fails.
RealInterval t_grid_error(std::int64_t m, const FftPlan& plan, std::int64_t q, int parity);

/// Which error terms smallq_samples adds; all on in production. Used to
/// show that each term is needed.
struct SmallQTerms {
  bool theta_tail = true;
  bool alias = true;
  bool t_grid = true;
  int fixed_trunc = -1;  // theta terms per dual sample; < 0 picks theta_cutoff
};

/// Lambda_chi on the grid k/A for k in [k_lo, k_hi] (|k| < N/2).
SampleGrid smallq_samples(const ThetaCharacter& c, const FftPlan& plan, std::int64_t k_lo, std::int64_t k_hi,
                          SmallQTerms terms = {});
/// Convenience: grid over [t_lo, t_hi] with the default plan for t_hi.
SampleGrid smallq_samples(const CharGroup& g, const CharIndex& chi, double t_lo, double t_hi);

}  // namespace grh
