#pragma once

// Hurwitz zeta zeta(s, alpha) = sum_{n>=0} (n + alpha)^{-s}.
//
// Direct evaluation uses Euler-Maclaurin with N direct terms and K Bernoulli
// corrections:
//   zeta(s,a) = sum_{n<N} (n+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
//             + sum_{k=1}^{K} B_{2k}/(2k)! (s)_{2k-1} (N+a)^{-s-2k+1} + R,
//   |R| <= 4 |(s)_{2K}| / (2 pi)^{2K} (N+a)^{1-sigma-2K} / (sigma+2K-1).
//
// The lattice stores zeta_M(1/2+it+c, r/D), the Hurwitz zeta with the terms
// n = 0..M removed, and eval_taylor shifts from the nearest row:
//   zeta_M(s, x) = sum_k (-delta)^k (s)_k / k! zeta_M(s+k, r/D), delta = x - r/D.

#include "grh/bernoulli.hpp"
#include "grh/complex_box.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace grh {

struct EMParams {
  int terms_a = 0;  // N: direct terms n < N
  int terms_b = 0;  // K: Bernoulli corrections
};

/// Parameters giving a remainder near 2^-bits for |s| up to `s_abs`.
/// The direct sum must start past `skip`, so N > skip.
inline EMParams choose_em_params(double s_abs, int bits, int skip = -1) {
  EMParams p;
  p.terms_b = static_cast<int>(std::ceil((bits + 10) / 6.0));
  p.terms_a = static_cast<int>(std::ceil(1.27 * (s_abs + 2.0 * p.terms_b))) + 1;
  p.terms_a = std::max(p.terms_a, skip + 2);
  return p;
}

namespace detail {

/// B_{2k}/(2k)! for k = 1..K as intervals at the active tier.
template <class T>
std::vector<Interval<T>> bernoulli_coefficients(int K) {
  std::vector<Interval<T>> out;
  mpz_class fact = 1;
  for (int k = 1; k <= K; ++k) {
    fact *= (2 * k - 1);
    fact *= (2 * k);
    out.push_back(rational_interval<T>(mpq_class(bernoulli(2 * k)) / mpq_class(fact)));
  }
  return out;
}

}  // namespace detail

/// zeta_skip(s + c, alpha) for c = 0..ncols-1, where zeta_skip drops the terms
/// n <= skip (skip = -1 gives the full Hurwitz zeta). All columns share the
/// power computations.
template <class T>
std::vector<Box<T>> em_hurwitz_columns(const Box<T>& s, const Interval<T>& alpha, int skip, int ncols, EMParams p) {
  using I = Interval<T>;
  using B = Box<T>;
  using R = Rounding<T>;
  if (!alpha.is_positive()) throw DomainError("Hurwitz parameter must be positive");
  if (p.terms_a <= skip + 1 || p.terms_b < 1) throw DomainError("Euler-Maclaurin parameters too small");
  const int N = p.terms_a, K = p.terms_b;

  // Pole check on the first column (the others have larger real part).
  const B sm1 = s - B(I(1));
  if (sm1.contains_zero()) throw PoleProximity("Euler-Maclaurin evaluation at the pole s = 1");
  if (!(R::add(s.re().lo(), R::from_int(2 * K - 1, Dir::down), Dir::down) > R::zero()))
    throw DomainError("real part too negative for the remainder bound");

  std::vector<B> acc(static_cast<std::size_t>(ncols), B(I(0), I(0)));
  const B minus_s = -s;
  for (int n = skip + 1; n < N; ++n) {
    const I x = I(static_cast<std::int64_t>(n)) + alpha;
    const I lx = log(x);
    B pw = exp(B(minus_s.re() * lx, minus_s.im() * lx));
    const I inv = I(1) / x;
    for (int c = 0; c < ncols; ++c) {
      acc[static_cast<std::size_t>(c)] += pw;
      if (c + 1 < ncols) pw = pw * inv;
    }
  }

  const auto bern = detail::bernoulli_coefficients<T>(K);
  const I X = I(static_cast<std::int64_t>(N)) + alpha;
  const I lX = log(X);
  const I invX = I(1) / X;
  const I invX2 = sqr(invX);
  B P = exp(B(minus_s.re() * lX, minus_s.im() * lX));  // X^{-s-c}
  const I two_pi_2K = pow(I(2) * I::pi(), I(static_cast<std::int64_t>(2 * K)));
  for (int c = 0; c < ncols; ++c) {
    const B sc = s + B(I(static_cast<std::int64_t>(c)));
    B sum = acc[static_cast<std::size_t>(c)];
    sum += (P * X) / (sc - B(I(1)));
    sum += P * I(0.5);
    B poch = sc;        // (s)_{2k-1}
    B w = P * invX;     // X^{-s-2k+1}
    for (int k = 1; k <= K; ++k) {
      sum += poch * w * bern[static_cast<std::size_t>(k - 1)];
      if (k < K) {
        poch = poch * (sc + B(I(static_cast<std::int64_t>(2 * k - 1)))) * (sc + B(I(static_cast<std::int64_t>(2 * k))));
        w = w * invX2;
      }
    }
    // |(s)_{2K}| = |(s)_{2K-1}| |s + 2K - 1|
    const I poch_abs = abs(poch) * abs(sc + B(I(static_cast<std::int64_t>(2 * K - 1))));
    const I sigma(sc.re().lo(), sc.re().lo());
    const I denom = sigma + I(static_cast<std::int64_t>(2 * K - 1));
    const I expo = I(1) - sigma - I(static_cast<std::int64_t>(2 * K));
    const I rem = I(4) * poch_abs / two_pi_2K * exp(expo * lX) / denom;
    acc[static_cast<std::size_t>(c)] = inflate(sum, rem.hi());
    P = P * invX;
  }
  return acc;
}

/// zeta(s, alpha) at the tier of T.
template <class T>
Box<T> em_hurwitz(const Box<T>& s, const Interval<T>& alpha, EMParams p) {
  return em_hurwitz_columns(s, alpha, -1, 1, p)[0];
}

/// Convenience: chooses parameters for the tier and evaluates there, then
/// narrows to the hardware tier.
ComplexBox em_hurwitz(const ComplexBox& s, const RealInterval& alpha, PrecisionTier tier);
/// Same with the parameter given exactly as a rational a/q.
ComplexBox em_hurwitz_rational(const ComplexBox& s, std::int64_t a, std::int64_t q, PrecisionTier tier);

// ---- lattice ---------------------------------------------------------------

struct LatticeParams {
  int D = 2048;
  int ncols = 15;  // columns c = 0..ncols
  int M = 9;
  int bits = 128;
  friend bool operator==(const LatticeParams&, const LatticeParams&) = default;
};

struct HurwitzLattice {
  double t = 0;
  LatticeParams params;
  PrecisionTier tier = PrecisionTier::hardware();  // tier of the stored cells
  std::vector<ComplexBox> cells;                   // row-major, rows r = 1..D

  const ComplexBox& cell(int r, int c) const {
    return cells[static_cast<std::size_t>(r - 1) * static_cast<std::size_t>(params.ncols + 1) + static_cast<std::size_t>(c)];
  }
};

/// Builds every cell with Euler-Maclaurin at params.bits and narrows to
/// doubles. Rows are spread over `workers` threads.
HurwitzLattice build_lattice(double t, LatticeParams params, int workers = 1);

/// Encloses zeta_M(1/2 + it, a/q) (with t the lattice ordinate).
ComplexBox eval_taylor_zeta_m(const HurwitzLattice& lat, std::int64_t a, std::int64_t q);
/// Encloses zeta(1/2 + it, a/q): the Taylor shift plus the restored terms.
ComplexBox eval_taylor(const HurwitzLattice& lat, std::int64_t a, std::int64_t q);

/// Bound on the omitted Taylor terms k > Ncols used by eval_taylor_zeta_m.
double taylor_tail_bound(const HurwitzLattice& lat, std::int64_t a, std::int64_t q);

/// Nearest lattice row to a/q, ties toward the larger row, at least 1.
int nearest_row(std::int64_t a, std::int64_t q, int D);

void save_lattice(const HurwitzLattice& lat, const std::filesystem::path& file);
HurwitzLattice load_lattice(const std::filesystem::path& file);

/// Process-wide lattice store: memory first, then the on-disk cache
/// directory (if set), then a fresh build. Each (t, params) pair is built
/// at most once per process.
class LatticeStore {
 public:
  explicit LatticeStore(std::filesystem::path cache_dir = {}, int workers = 1)
      : dir_(std::move(cache_dir)), workers_(workers) {}
  std::shared_ptr<const HurwitzLattice> get(double t, const LatticeParams& params);
  int builds() const { return builds_; }
  std::filesystem::path file_for(double t, const LatticeParams& params) const;

 private:
  std::filesystem::path dir_;
  int workers_;
  int builds_ = 0;
  std::mutex mu_;
  std::map<std::pair<double, std::string>, std::shared_ptr<const HurwitzLattice>> mem_;
};

}  // namespace grh
