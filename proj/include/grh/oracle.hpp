#pragma once

// Brute-force references for tests and cross-checks. Nothing here is tuned
// for speed; the point is a code path that does not go through the lattice,
// the transforms or the theta-series sampler.

#include "grh/characters.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace grh {

/// L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q), each Hurwitz value by
/// Euler-Maclaurin at `bits`.
ComplexBox oracle_l(const CharGroup& g, const CharIndex& chi, const ComplexBox& s, int bits = 128);

/// Lambda_chi(t) at `bits` (root number from the big-float Gauss sum).
RealInterval oracle_lambda(const CharGroup& g, const CharIndex& chi, double t, int bits = 128);

/// Sign-change brackets of Lambda_chi on [t_lo, t_hi], scanning at
/// 1/oversample of the 5/64 grid step. Throws IndeterminateSign if a scan
/// value straddles 0.
std::vector<std::pair<double, double>> oracle_zeros(const CharGroup& g, const CharIndex& chi, double t_lo, double t_hi,
                                                   int bits = 128, int oversample = 100);

/// sum_n a(n) chi(n) over the units, one character at a time.
ComplexBox oracle_char_sum(const CharGroup& g, const std::vector<ComplexBox>& a_by_residue, const CharIndex& chi);

/// Theta series behind the small-q sampler, summed at `bits` with
/// `mult` times the usual number of terms:
///   2 eps e^{c u} q^{-c/2} sum_n n^a chi(n) exp(-pi n^2 e^{2u}/q), u = x + i pi eta/4.
ComplexBox oracle_fhat(const CharGroup& g, const CharIndex& chi, double x, double eta, int mult = 10, int bits = 128);

}  // namespace grh
