#pragma once

// Dirichlet characters mod q via the CRT decomposition of (Z/qZ)^* into
// cyclic factors.
//
// Every residue n coprime to q is written as n = prod_j G_j^{e_j} (mod q),
// where G_j is the generator of factor j lifted to Z/qZ. A character is a
// tuple of exponents k_j and acts by chi(G_j) = e(k_j / order_j), so
// chi(n) = e(sum_j k_j e_j / order_j). Residues and characters share one
// mixed-radix flat index with factor 0 varying fastest.

#include "grh/complex_box.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grh {

struct CyclicFactor {
  std::int64_t modulus;    // prime power, 2 p^a (merged), 4, or 2^a for the special pair
  std::int64_t generator;  // generator modulo `modulus`
  std::int64_t order;
  std::int64_t prime;      // the prime this factor localises at
  int exponent;            // power of `prime` dividing q
};

/// (Z/2^alpha)^* with alpha >= 3 is generated by -1 (order 2) and 5 (order 2^{alpha-2}).
struct SpecialTwo {
  int alpha;
  std::int64_t generator_minus_one;  // 2^alpha - 1
  std::int64_t generator_five;       // 5
  std::int64_t order_minus_one;      // 2
  std::int64_t order_five;           // 2^{alpha-2}
};

struct CharIndex {
  std::vector<std::int64_t> exponents;
  friend bool operator==(const CharIndex&, const CharIndex&) = default;
  friend auto operator<=>(const CharIndex&, const CharIndex&) = default;
};

class CharGroup {
 public:
  /// Builds the decomposition; throws QTooSmall for q < 3.
  static CharGroup decompose(std::int64_t q);

  std::int64_t q() const { return q_; }
  std::int64_t phi() const { return phi_; }
  /// Cyclic factors in transform order. For q divisible by 8 the last two
  /// entries are the (-1, 5) pair described by special_two().
  const std::vector<CyclicFactor>& factors() const { return factors_; }
  const std::optional<SpecialTwo>& special_two() const { return special_; }
  /// Generator of factor j lifted to Z/qZ (1 modulo the other components).
  std::int64_t lifted_generator(std::size_t j) const { return lifted_[j]; }
  std::int64_t stride(std::size_t j) const { return strides_[j]; }
  /// lcm of the factor orders; character values are e(P / lcm_order()).
  std::int64_t lcm_order() const { return lcm_; }

  /// Flat index of residue n, or -1 when gcd(n, q) > 1.
  std::int64_t index_of(std::int64_t n) const {
    std::int64_t r = n % q_;
    if (r < 0) r += q_;
    return index_of_[static_cast<std::size_t>(r)];
  }
  /// Residue with the given flat index.
  std::int64_t residue(std::int64_t flat) const { return residue_[static_cast<std::size_t>(flat)]; }
  std::vector<std::int64_t> coordinates(std::int64_t flat) const;
  std::int64_t flatten(const CharIndex& idx) const;
  CharIndex character(std::int64_t flat) const;
  /// Every character in flat order.
  std::vector<CharIndex> all_characters() const;

 private:
  std::int64_t q_ = 0;
  std::int64_t phi_ = 0;
  std::int64_t lcm_ = 1;
  std::vector<CyclicFactor> factors_;
  std::optional<SpecialTwo> special_;
  std::vector<std::int64_t> lifted_;
  std::vector<std::int64_t> strides_;
  std::vector<std::int32_t> index_of_;
  std::vector<std::int64_t> residue_;
};

// ---- number theory helpers -----------------------------------------------

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m);
std::int64_t euler_phi(std::int64_t n);
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
/// Multiplicative order of g modulo m (g coprime to m).
std::int64_t multiplicative_order(std::int64_t g, std::int64_t m);

// ---- character evaluation ------------------------------------------------

/// chi(n) = e(P / group.lcm_order()); nullopt when gcd(n, q) > 1.
std::optional<std::int64_t> phase_numerator(const CharGroup& g, const CharIndex& chi, std::int64_t n);

/// Enclosure of e(p / L) = exp(2 pi i p / L). Exact at multiples of 1/4.
template <class T>
Box<T> root_of_unity(std::int64_t p, std::int64_t L) {
  using I = Interval<T>;
  std::int64_t r = p % L;
  if (r < 0) r += L;
  if (r == 0) return Box<T>(I(1), I(0));
  if (4 * r == L) return Box<T>(I(0), I(1));
  if (2 * r == L) return Box<T>(I(-1), I(0));
  if (4 * r == 3 * L) return Box<T>(I(0), I(-1));
  // Reduce to |angle| <= pi for tight argument enclosures.
  if (2 * r > L) r -= L;
  const I angle = I(2) * I::pi() * I::ratio(r, L);
  return expi(angle);
}

ComplexBox eval_char(const CharGroup& g, const CharIndex& chi, std::int64_t n);

/// Values chi(0..q-1) as boxes (zero boxes off the unit group).
std::vector<ComplexBox> char_table(const CharGroup& g, const CharIndex& chi);

bool is_principal(const CharIndex& chi);
bool is_primitive(const CharGroup& g, const CharIndex& chi);
/// a_chi = (1 - chi(-1)) / 2.
int parity(const CharGroup& g, const CharIndex& chi);
CharIndex conjugate(const CharGroup& g, const CharIndex& chi);
/// chi takes only the values 0, +1, -1.
bool is_real(const CharGroup& g, const CharIndex& chi);

/// Gauss sum tau(chi) = sum_a chi(a) e(a/q) at the big-float tier.
BigBox gauss_sum(const CharGroup& g, const CharIndex& chi, int bits);

/// W(chi) = tau(chi) / (i^{a_chi} sqrt(q)), the unimodular constant of the
/// functional equation Lambda(s, chi) = W(chi) Lambda(1 - s, conj chi).
template <class T>
Box<T> functional_equation_sign(const Box<T>& tau, int parity, std::int64_t q) {
  using I = Interval<T>;
  Box<T> w = tau / Box<T>(sqrt(I(q)));
  if (parity == 1) w = Box<T>(w.im(), -w.re());  // divide by i
  return w;
}

/// The normaliser that makes Lambda real: a square root of conj(W). The
/// representative of a conjugate pair (smaller flat index) takes the branch
/// chosen by grh::sqrt; its partner takes the complex conjugate, so that
/// epsilon(conj chi) = conj(epsilon(chi)).
template <class T>
Box<T> epsilon_from_sign(const Box<T>& w) {
  return sqrt(w.conj());
}

/// Root number epsilon_chi for a primitive character; throws NotPrimitive.
ComplexBox root_number(const CharGroup& g, const CharIndex& chi, int bits = 128);
/// Same, kept at the big-float tier.
BigBox root_number_big(const CharGroup& g, const CharIndex& chi, int bits);

struct CharMeta {
  int parity = 0;
  bool primitive = false;
  ComplexBox epsilon;
  CharIndex conjugate;
};

/// Metadata for one character; epsilon is only computed for primitive ones.
CharMeta char_meta(const CharGroup& g, const CharIndex& chi, int bits = 128);

/// "q,e1,e2,..." decimal serialisation used in certificates.
std::string serialize_char(std::int64_t q, const CharIndex& chi);
std::pair<std::int64_t, CharIndex> parse_char(const std::string& s);

}  // namespace grh
