#include "grh/characters.hpp"

#include <numeric>
#include <sstream>

namespace grh {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  while (a1 != 0) {
    const std::int64_t t = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - t * a1);
    std::tie(x, x1) = std::make_pair(x1, x - t * x1);
  }
  if (g != 1) throw DomainError("no modular inverse");
  return ((x % m) + m) % m;
}

std::int64_t primitive_root_prime(std::int64_t p) {
  if (p == 2) return 1;
  const auto fs = factorize(p - 1);
  for (std::int64_t g = 2;; ++g) {
    bool ok = true;
    for (const auto& [r, e] : fs) {
      if (powmod(g, (p - 1) / r, p) == 1) { ok = false; break; }
    }
    if (ok) return g;
  }
}

// Generator of (Z/p^a)^* for odd p.
std::int64_t primitive_root_power(std::int64_t p, int a) {
  std::int64_t g = primitive_root_prime(p);
  if (a >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t r = 1;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

std::int64_t multiplicative_order(std::int64_t g, std::int64_t m) {
  std::int64_t ord = euler_phi(m);
  for (const auto& [p, e] : factorize(ord)) {
    for (int i = 0; i < e && ord % p == 0 && powmod(g, ord / p, m) == 1; ++i) ord /= p;
  }
  return ord;
}

CharGroup CharGroup::decompose(std::int64_t q) {
  if (q < 3) throw QTooSmall("modulus must be at least 3");
  if (q > (std::int64_t{1} << 30)) throw DomainError("modulus too large for the index table");
  CharGroup g;
  g.q_ = q;
  g.phi_ = euler_phi(q);

  const auto fs = factorize(q);
  int alpha2 = 0;
  for (const auto& [p, e] : fs)
    if (p == 2) alpha2 = e;

  bool merged_two = false;
  for (const auto& [p, e] : fs) {
    if (p == 2) continue;
    const std::int64_t pa = ipow(p, e);
    CyclicFactor f{pa, primitive_root_power(p, e), pa / p * (p - 1), p, e};
    if (alpha2 == 1 && !merged_two) {
      // The factor 2 contributes a trivial group; fold it into this modulus.
      f.modulus = 2 * pa;
      if (f.generator % 2 == 0) f.generator += pa;
      merged_two = true;
    }
    g.factors_.push_back(f);
  }
  if (alpha2 == 2) {
    g.factors_.push_back({4, 3, 2, 2, 2});
  } else if (alpha2 >= 3) {
    const std::int64_t m = ipow(2, alpha2);
    g.special_ = SpecialTwo{alpha2, m - 1, 5, 2, m / 4};
    g.factors_.push_back({m, m - 1, 2, 2, alpha2});
    g.factors_.push_back({m, 5, m / 4, 2, alpha2});
  }

  std::int64_t stride = 1;
  for (const auto& f : g.factors_) {
    // The CRT component this factor lives on: the full 2-power for the
    // special pair, otherwise the recorded modulus.
    const std::int64_t m = f.modulus;
    const std::int64_t rest = q / m;
    std::int64_t lifted = f.generator % m;
    if (rest > 1) {
      const std::int64_t k = mulmod(((f.generator - 1) % m + m) % m, inverse_mod(rest % m, m), m);
      lifted = (1 + mulmod(rest, k, q)) % q;
    }
    g.lifted_.push_back(lifted);
    g.strides_.push_back(stride);
    stride *= f.order;
    g.lcm_ = std::lcm(g.lcm_, f.order);
  }
  if (stride != g.phi_) throw DomainError("factor orders do not multiply to phi(q)");

  g.index_of_.assign(static_cast<std::size_t>(q), -1);
  g.residue_.assign(static_cast<std::size_t>(g.phi_), 0);
  std::vector<std::int64_t> list{1};
  list.reserve(static_cast<std::size_t>(g.phi_));
  for (std::size_t j = 0; j < g.factors_.size(); ++j) {
    const std::size_t old = list.size();
    std::int64_t power = 1;
    for (std::int64_t e = 1; e < g.factors_[j].order; ++e) {
      power = mulmod(power, g.lifted_[j], q);
      for (std::size_t i = 0; i < old; ++i) list.push_back(mulmod(list[i], power, q));
    }
  }
  for (std::size_t i = 0; i < list.size(); ++i) {
    auto& slot = g.index_of_[static_cast<std::size_t>(list[i])];
    if (slot != -1) throw DomainError("CRT generators do not generate the unit group");
    slot = static_cast<std::int32_t>(i);
    g.residue_[i] = list[i];
  }
  return g;
}

std::vector<std::int64_t> CharGroup::coordinates(std::int64_t flat) const {
  std::vector<std::int64_t> c(factors_.size());
  for (std::size_t j = 0; j < factors_.size(); ++j) c[j] = (flat / strides_[j]) % factors_[j].order;
  return c;
}

std::int64_t CharGroup::flatten(const CharIndex& idx) const {
  if (idx.exponents.size() != factors_.size()) throw DomainError("character index has the wrong length");
  std::int64_t f = 0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    const std::int64_t k = idx.exponents[j];
    if (k < 0 || k >= factors_[j].order) throw DomainError("character exponent out of range");
    f += k * strides_[j];
  }
  return f;
}

CharIndex CharGroup::character(std::int64_t flat) const { return CharIndex{coordinates(flat)}; }

std::vector<CharIndex> CharGroup::all_characters() const {
  std::vector<CharIndex> out;
  out.reserve(static_cast<std::size_t>(phi_));
  for (std::int64_t i = 0; i < phi_; ++i) out.push_back(character(i));
  return out;
}

std::optional<std::int64_t> phase_numerator(const CharGroup& g, const CharIndex& chi, std::int64_t n) {
  const std::int64_t flat = g.index_of(n);
  if (flat < 0) return std::nullopt;
  const std::int64_t L = g.lcm_order();
  std::int64_t p = 0;
  const auto& fs = g.factors();
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const std::int64_t e = (flat / g.stride(j)) % fs[j].order;
    p = (p + mulmod(mulmod(chi.exponents[j], e, L), L / fs[j].order, L)) % L;
  }
  return p;
}

ComplexBox eval_char(const CharGroup& g, const CharIndex& chi, std::int64_t n) {
  const auto p = phase_numerator(g, chi, n);
  if (!p) return ComplexBox(RealInterval(0), RealInterval(0));
  return root_of_unity<double>(*p, g.lcm_order());
}

std::vector<ComplexBox> char_table(const CharGroup& g, const CharIndex& chi) {
  const std::int64_t L = g.lcm_order();
  std::vector<ComplexBox> roots(static_cast<std::size_t>(L));
  for (std::int64_t j = 0; j < L; ++j) roots[static_cast<std::size_t>(j)] = root_of_unity<double>(j, L);
  std::vector<ComplexBox> out(static_cast<std::size_t>(g.q()), ComplexBox(RealInterval(0), RealInterval(0)));
  for (std::int64_t n = 0; n < g.q(); ++n) {
    if (const auto p = phase_numerator(g, chi, n)) out[static_cast<std::size_t>(n)] = roots[static_cast<std::size_t>(*p)];
  }
  return out;
}

bool is_principal(const CharIndex& chi) {
  for (auto k : chi.exponents)
    if (k != 0) return false;
  return true;
}

bool is_primitive(const CharGroup& g, const CharIndex& chi) {
  if (g.q() % 4 == 2) return false;  // induced from modulus q/2
  const auto& fs = g.factors();
  for (std::size_t j = 0; j < fs.size(); ++j) {
    const auto& f = fs[j];
    const std::int64_t k = chi.exponents[j];
    if (f.prime != 2) {
      if (f.exponent == 1 ? k == 0 : k % f.prime == 0) return false;
    } else if (f.modulus == 4) {
      if (k == 0) return false;
    } else if (f.generator == 5) {
      if (k % 2 == 0) return false;
    }
  }
  return true;
}

int parity(const CharGroup& g, const CharIndex& chi) {
  return *phase_numerator(g, chi, g.q() - 1) == 0 ? 0 : 1;
}

CharIndex conjugate(const CharGroup& g, const CharIndex& chi) {
  CharIndex out = chi;
  const auto& fs = g.factors();
  for (std::size_t j = 0; j < fs.size(); ++j) out.exponents[j] = (fs[j].order - chi.exponents[j]) % fs[j].order;
  return out;
}

bool is_real(const CharGroup& g, const CharIndex& chi) { return conjugate(g, chi) == chi; }

BigBox gauss_sum(const CharGroup& g, const CharIndex& chi, int bits) {
  PrecisionScope scope(bits);
  const std::int64_t q = g.q(), L = g.lcm_order();
  BigBox sum(BigInterval(0), BigInterval(0));
  for (std::int64_t i = 0; i < g.phi(); ++i) {
    const std::int64_t a = g.residue(i);
    const std::int64_t p = *phase_numerator(g, chi, a);
    // chi(a) e(a/q) = e((p q + a L) / (L q))
    const std::int64_t num = (mulmod(p, q, L * q) + mulmod(a, L, L * q)) % (L * q);
    sum += root_of_unity<BigFloat>(num, L * q);
  }
  return sum;
}

BigBox root_number_big(const CharGroup& g, const CharIndex& chi, int bits) {
  if (!is_primitive(g, chi)) throw NotPrimitive("root number requested for an imprimitive character");
  PrecisionScope scope(bits);
  const CharIndex partner = conjugate(g, chi);
  const bool representative = g.flatten(chi) <= g.flatten(partner);
  const CharIndex& rep = representative ? chi : partner;
  const int a = parity(g, rep);
  const BigBox w = functional_equation_sign(gauss_sum(g, rep, bits), a, g.q());
  const BigBox eps = epsilon_from_sign(w);
  return representative ? eps : eps.conj();
}

ComplexBox root_number(const CharGroup& g, const CharIndex& chi, int bits) {
  return to_hardware(root_number_big(g, chi, bits));
}

CharMeta char_meta(const CharGroup& g, const CharIndex& chi, int bits) {
  CharMeta m;
  m.parity = parity(g, chi);
  m.primitive = is_primitive(g, chi);
  m.conjugate = conjugate(g, chi);
  m.epsilon = m.primitive ? root_number(g, chi, bits) : ComplexBox(RealInterval(1), RealInterval(0));
  return m;
}

std::string serialize_char(std::int64_t q, const CharIndex& chi) {
  std::ostringstream os;
  os << q;
  for (auto k : chi.exponents) os << ',' << k;
  return os.str();
}

std::pair<std::int64_t, CharIndex> parse_char(const std::string& s) {
  std::vector<std::int64_t> parts;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) throw DomainError("empty field in character index '" + s + "'");
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw DomainError("bad integer in character index '" + s + "'");
    parts.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (parts.empty()) throw DomainError("empty character index");
  CharIndex idx{std::vector<std::int64_t>(parts.begin() + 1, parts.end())};
  return {parts[0], idx};
}

}  // namespace grh
