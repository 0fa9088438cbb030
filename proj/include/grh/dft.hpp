#pragma once

// Discrete Fourier transforms of box vectors.
//
//   forward:  Y_m = sum_n X_n e(-nm/N)
//   backward: Y_m = sum_n X_n e(+nm/N)
//
// Power-of-two lengths use an iterative radix-2 kernel; other lengths go
// through Bluestein's chirp reformulation as a power-of-two convolution.
// group_dft evaluates sum_n a(n) chi(n) for every character mod q at once
// by transforming along each cyclic factor of the unit group.

#include "grh/characters.hpp"

#include <cstdint>
#include <vector>

namespace grh {

enum class Direction { forward, backward };

using BoxVector = std::vector<ComplexBox>;

BoxVector dft_naive(const BoxVector& x, Direction dir);
/// Requires a power-of-two length.
BoxVector dft_radix2(const BoxVector& x, Direction dir);
BoxVector dft_bluestein(const BoxVector& x, Direction dir);
/// Picks the radix-2, naive or Bluestein path by length.
BoxVector dft(const BoxVector& x, Direction dir);

bool is_power_of_two(std::size_t n);

/// Values a(n) for the units mod q, stored in the group's flat order
/// (values[i] = a(group.residue(i))).
struct GroupArray {
  const CharGroup* group = nullptr;
  BoxVector values;
};

/// out[k] encloses sum_n a(n) chi_k(n), where k is the character's flat index.
BoxVector group_dft(const GroupArray& a);

/// Gauss sums tau(chi) for every character, via one group transform of e(n/q).
BoxVector gauss_sums(const CharGroup& g);

/// Number of complex box multiplications performed by the transform kernels
/// on this thread. Deterministic, so it serves as a cost model.
std::uint64_t& dft_multiplication_count();


}  // namespace grh
