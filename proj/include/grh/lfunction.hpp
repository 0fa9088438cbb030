#pragma once

// Completed L-function on the critical line and the sample grids that both
// samplers produce:
//   Lambda_chi(t) = eps (q/pi)^{it/2} Gamma((1/2 + a + it)/2) e^{pi t/4} L(1/2 + it, chi),
// real for the root number chosen in characters.hpp.

#include "grh/characters.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace grh {

struct Rational {
  std::int64_t num = 5;
  std::int64_t den = 64;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  RealInterval interval() const { return RealInterval::ratio(num, den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Values of Lambda_chi at the ordinates (first + i) * t_step.
struct SampleGrid {
  std::int64_t q = 0;
  CharIndex character;
  CharMeta meta;
  Rational t_step;
  std::int64_t first = 0;
  std::vector<RealInterval> samples;
  std::vector<std::uint8_t> usable;  // 0 marks a sample that must not be used
  std::string algorithm;

  std::size_t size() const { return samples.size(); }
  /// Ordinate of sample i (exact for dyadic steps).
  double t_at(std::size_t i) const {
    return static_cast<double>((first + static_cast<std::int64_t>(i)) * t_step.num) / static_cast<double>(t_step.den);
  }
  std::int64_t last() const { return first + static_cast<std::int64_t>(samples.size()) - 1; }
  /// Sample with grid index k (absolute, i.e. t = k * t_step).
  const RealInterval& at_index(std::int64_t k) const { return samples[static_cast<std::size_t>(k - first)]; }
  bool usable_index(std::int64_t k) const {
    return k >= first && k <= last() && usable[static_cast<std::size_t>(k - first)] != 0;
  }
};

/// (q/pi)^{it/2} Gamma((1/2 + a + it)/2) e^{pi t/4}, evaluated at 128 bits
/// and narrowed. Multiply by eps and L to obtain Lambda.
ComplexBox lambda_factor(std::int64_t q, int parity, double t);

/// Lambda from an enclosure of L(1/2 + it); throws RealnessViolation when
/// the completed box is not consistent with a real value.
RealInterval lambda_from_l(const ComplexBox& l, double t, const CharMeta& meta, std::int64_t q);
/// Same with a precomputed lambda_factor.
RealInterval lambda_from_l(const ComplexBox& l, const ComplexBox& factor, const ComplexBox& epsilon);

/// Real projection: the imaginary part must contain 0; the real part is
/// widened by the imaginary radius.
RealInterval project_real(const ComplexBox& z);

/// zeta(9/8), enclosed once per process.
const RealInterval& zeta_9_8();
/// zeta(x) for real x > 1 at 128 bits.
RealInterval zeta_real(const RealInterval& x);

/// Upper bound for |L(1/2 + it, chi)|, chi primitive mod q:
/// zeta(9/8) (q/2pi)^{5/16} (3/2 + |t|)^{5/16}.
RealInterval l_function_bound(std::int64_t q, const RealInterval& t);

/// L(1/2 + it) by Euler-Maclaurin on every a/q directly (no lattice, no
/// transform): q^{-s} sum_a chi(a) zeta(s, a/q). Used by escalations.
ComplexBox l_direct(const CharGroup& g, const CharIndex& chi, double t, PrecisionTier tier);
/// Lambda_chi(t) from l_direct.
RealInterval lambda_direct(const CharGroup& g, const CharIndex& chi, const CharMeta& meta, double t, PrecisionTier tier);

/// Primitive characters mod q in flat order.
std::vector<CharIndex> primitive_characters(const CharGroup& g);

}  // namespace grh
