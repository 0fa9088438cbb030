#pragma once

// Large-q sampler: L(1/2 + it, chi) for every character mod q at once from a
// Hurwitz lattice at ordinate t and one group transform,
//   L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q).

#include "grh/dft.hpp"
#include "grh/hurwitz.hpp"
#include "grh/lfunction.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace grh {

/// L(1/2 + i lat.t, chi_k) for every character, k the flat index.
BoxVector l_values_at(const CharGroup& g, const HurwitzLattice& lat);

/// Root numbers for every primitive character from one batched Gauss-sum
/// transform (entries for imprimitive characters are 1). Falls back to the
/// big-float Gauss sum when the square-root branch is too close to call.
std::vector<ComplexBox> root_numbers(const CharGroup& g);

/// Character data shared by every ordinate of a modulus.
struct ModulusContext {
  CharGroup group;
  std::vector<CharIndex> characters;  // primitive, flat order
  std::vector<std::int64_t> flat;     // flat index of each primitive character
  std::vector<CharMeta> meta;

  static ModulusContext make(std::int64_t q);
};

/// Lambda_chi(lat.t) for each primitive character of the context.
std::vector<RealInterval> lambda_values_at(const ModulusContext& ctx, const HurwitzLattice& lat);

/// Grids of Lambda at k * step for k in [k_lo, k_hi], one per primitive
/// character, reusing one lattice per ordinate.
std::vector<SampleGrid> sample_range_all(const ModulusContext& ctx, std::int64_t k_lo, std::int64_t k_hi, Rational step,
                                         LatticeStore& store, const LatticeParams& params);

/// Grid for one character over [t_lo, t_hi]; the count is
/// floor((t_hi - t_lo) / step) + 1 when t_lo is on the grid.
SampleGrid sample_range(std::int64_t q, const CharIndex& chi, double t_lo, double t_hi, Rational step,
                        LatticeStore& store, const LatticeParams& params);

/// Batched version of sample_range for several moduli: ordinates are the
/// outer loop so each lattice is fetched once for the whole batch.
std::map<std::int64_t, std::vector<SampleGrid>> sample_range_batch(const std::vector<ModulusContext>& contexts,
                                                                    std::int64_t k_lo, std::int64_t k_hi, Rational step,
                                                                    LatticeStore& store, const LatticeParams& params);

}  // namespace grh
