#include <doctest.h>

#include "grh/lfunction.hpp"
#include "grh/oracle.hpp"

#include <cmath>

using namespace grh;

namespace {

CharIndex first_with_parity(const CharGroup& g, int a) {
  for (const auto& chi : primitive_characters(g))
    if (parity(g, chi) == a) return chi;
  throw DomainError("no primitive character with that parity");
}

}  // namespace

TEST_CASE("oracle L at s = 2 for the principal character mod 3") {
  const CharGroup g = CharGroup::decompose(3);
  const CharIndex one = g.all_characters().front();
  const ComplexBox v = oracle_l(g, one, ComplexBox(2.0));
  const double expect = (1.0 - 1.0 / 9.0) * M_PI * M_PI / 6.0;
  CHECK(v.re().contains(expect));
  CHECK(v.im().contains_zero());
  CHECK(v.re().width() < 1e-14);
}

TEST_CASE("oracle Lambda is real and positive at t = 0 for the character mod 4") {
  const CharGroup g = CharGroup::decompose(4);
  const CharIndex chi = first_with_parity(g, 1);
  const RealInterval v = oracle_lambda(g, chi, 0.0);
  CHECK(v.is_positive());
  CHECK(v.width() < 1e-12);
  // L(1/2, chi_4) = 0.6676914571...
  const ComplexBox l = oracle_l(g, chi, ComplexBox(RealInterval(0.5), RealInterval(0)));
  CHECK(std::fabs(l.re().mid() - 0.6676914571896) < 1e-10);
}

TEST_CASE("oracle first zeros of the odd characters mod 3 and 4") {
  for (auto [q, first] : {std::pair<std::int64_t, double>{3, 8.0398}, {4, 6.0209}}) {
    const CharGroup g = CharGroup::decompose(q);
    const CharIndex chi = first_with_parity(g, 1);
    const auto z = oracle_zeros(g, chi, first - 0.1, first + 0.05);
    REQUIRE(z.size() == 1);
    CHECK(z[0].first <= first);
    CHECK(z[0].second >= first);
    CHECK(z[0].second - z[0].first < 1e-3);
  }
}

TEST_CASE("direct Lambda agrees with the oracle on both tiers") {
  for (std::int64_t q : {5, 7, 8, 12}) {
    const CharGroup g = CharGroup::decompose(q);
    for (const auto& chi : primitive_characters(g)) {
      const CharMeta m = char_meta(g, chi);
      for (double t : {0.0, 3.5, 17.25}) {
        const RealInterval o = oracle_lambda(g, chi, t);
        const RealInterval h = lambda_direct(g, chi, m, t, PrecisionTier::hardware());
        const RealInterval b = lambda_direct(g, chi, m, t, PrecisionTier::bigfloat(100));
        CHECK(h.intersects(o));
        CHECK(b.intersects(o));
        CHECK(b.width() <= h.width() + 1e-300);
      }
    }
  }
}

TEST_CASE("Lambda of the conjugate is the reflection with weight e^{pi t/2}") {
  const CharGroup g = CharGroup::decompose(7);
  for (const auto& chi : primitive_characters(g)) {
    const CharIndex bar = conjugate(g, chi);
    for (double t : {1.0, 6.5}) {
      const RealInterval a = oracle_lambda(g, bar, t);
      const RealInterval b = oracle_lambda(g, chi, -t) * exp(RealInterval::pi() * RealInterval(t / 2));
      CHECK(a.intersects(b));
    }
  }
}

TEST_CASE("negating the root number negates Lambda") {
  const CharGroup g = CharGroup::decompose(5);
  const CharIndex chi = first_with_parity(g, 0);
  CharMeta m = char_meta(g, chi);
  const ComplexBox l = l_direct(g, chi, 2.0, PrecisionTier::bigfloat(100));
  const RealInterval v = lambda_from_l(l, 2.0, m, 5);
  m.epsilon = -m.epsilon;
  const RealInterval w = lambda_from_l(l, 2.0, m, 5);
  CHECK(w.intersects(-v));
}

TEST_CASE("real projection rejects boxes away from the real axis") {
  const ComplexBox ok(RealInterval(1.0, 2.0), RealInterval(-1e-12, 1e-12));
  const RealInterval r = project_real(ok);
  CHECK(r.contains(RealInterval(1.0, 2.0)));
  CHECK_THROWS_AS(project_real(ComplexBox(RealInterval(1.0), RealInterval(0.1, 0.2))), RealnessViolation);
}

TEST_CASE("L bound dominates sampled values") {
  for (std::int64_t q : {3, 11}) {
    const CharGroup g = CharGroup::decompose(q);
    for (const auto& chi : primitive_characters(g))
      for (double t : {0.0, 10.0, 40.0}) {
        const ComplexBox l = l_direct(g, chi, t, PrecisionTier::hardware());
        CHECK(abs(l).hi() <= l_function_bound(q, RealInterval(t)).lo());
      }
  }
  CHECK(zeta_9_8().contains(8.5862412945105752));
  CHECK(zeta_real(RealInterval(2)).contains(M_PI * M_PI / 6));
}
