#include <doctest.h>

#include "grh/bigfloat.hpp"
#include "grh/gamma.hpp"
#include "grh/oracle.hpp"
#include "grh/sampler_largeq.hpp"
#include "grh/sampler_smallq.hpp"

#include <cmath>

using namespace grh;

namespace {

// False when the sample misses the reference or cannot even be projected to
// the real axis.
bool sample_contains(const ThetaCharacter& c, const FftPlan& plan, std::int64_t k, SmallQTerms terms,
                     const RealInterval& truth) {
  try {
    return smallq_samples(c, plan, k, k, terms).at_index(k).intersects(truth);
  } catch (const RealnessViolation&) {
    return false;
  }
}

CharIndex with_parity(const CharGroup& g, int a) {
  for (const auto& chi : primitive_characters(g))
    if (parity(g, chi) == a) return chi;
  throw DomainError("no primitive character with that parity");
}

}  // namespace

TEST_CASE("plan validation") {
  CHECK_THROWS_AS(FftPlan::make(1000, 0.0), DomainError);
  CHECK_THROWS_AS(FftPlan::make(1024, 1.0), DomainError);
  CHECK_THROWS_AS(FftPlan::make(1024, 0.0, Rational{1, 8}), DomainError);
  const FftPlan p = FftPlan::for_height(2500);
  CHECK(p.B() >= 8 * 2500);
  CHECK((p.N & (p.N - 1)) == 0);
  CHECK(p.eta < 1);
  CHECK(FftPlan::for_height(1).B() >= 128);
}

TEST_CASE("theta tail is below twice the first omitted term") {
  for (double Y : {1.0, 2.5, 6.0})
    for (int K : {1, 3, 8}) {
      const double first = std::exp(-Y * (K + 1) * (K + 1));
      CHECK(theta_tail(RealInterval(Y), K, 0) <= 2 * first);
      CHECK(theta_tail(RealInterval(Y), K, 0) >= first);
    }
  CHECK_THROWS_AS(theta_tail(RealInterval(1e-18), 0, 0), TailDivergence);
}

TEST_CASE("Fhat matches the oversummed oracle") {
  struct Case {
    std::int64_t q;
    int a;
    double x, eta;
  };
  for (const Case c : {Case{5, 0, 0.0, 0.0}, Case{3, 1, 0.0, 0.0}, Case{4, 1, 1.0, 0.0}, Case{7, 1, 0.3, 0.9},
                       Case{13, 0, -0.5, 0.99}, Case{8, 0, 2.0, 0.5}}) {
    const CharGroup g = CharGroup::decompose(c.q);
    const CharIndex chi = with_parity(g, c.a);
    const ThetaCharacter tc = ThetaCharacter::make(g, chi);
    const FftPlan plan = FftPlan::make(1024, c.eta);
    const ComplexBox v = fhat(RealInterval(c.x), tc, plan);
    const ComplexBox o = oracle_fhat(g, chi, c.x, c.eta);
    CHECK(v.intersects(o));
    CHECK(v.re().width() < 1e-10 * (1 + abs(o).mag()));
  }
}

TEST_CASE("Fhat at large x is dominated by its first term") {
  const CharGroup g = CharGroup::decompose(5);
  for (int a : {0, 1}) {
    const ThetaCharacter tc = ThetaCharacter::make(g, with_parity(g, a));
    const FftPlan plan = FftPlan::make(1024, 0.0);
    const double x = 2.0;
    const double c = a == 0 ? 0.5 : 1.5;
    const double first = 2 * std::exp(c * x) * std::pow(5.0, -c / 2) * std::exp(-M_PI * std::exp(2 * x) / 5);
    const double m = abs(fhat(RealInterval(x), tc, plan)).mid();
    CHECK(m <= 2 * first);
    CHECK(m >= first / 2);
  }
}

TEST_CASE("odd Fhat scales by e^{3 dx/2} once n = 1 dominates") {
  const CharGroup g = CharGroup::decompose(3);
  const ThetaCharacter tc = ThetaCharacter::make(g, with_parity(g, 1));
  const FftPlan plan = FftPlan::make(1024, 0.0);
  const double x = 1.5, dx = 0.01;
  const double r = abs(fhat(RealInterval(x + dx), tc, plan)).mid() / abs(fhat(RealInterval(x), tc, plan)).mid();
  const double gauss = std::exp(-M_PI * (std::exp(2 * (x + dx)) - std::exp(2 * x)) / 3);
  CHECK(r / gauss == doctest::Approx(std::exp(1.5 * dx)).epsilon(1e-6));
}

TEST_CASE("closed-form alias bound") {
  const FftPlan p4 = FftPlan::make(256, 0.0, Rational{4, 1});
  const FftPlan p8 = FftPlan::make(512, 0.0, Rational{8, 1});
  CHECK(alias_bound_fhat(0, p8, 5, 0).hi() < alias_bound_fhat(0, p4, 5, 0).lo());
  CHECK(alias_bound_fhat(3, p4, 5, 0).intersects(alias_bound_fhat(-3, p4, 5, 0)));

  // q = 5, A = 4, B = 64, eta = 0, n = 0 at 128 bits.
  PrecisionScope scope(128);
  using BI = BigInterval;
  const BI pi = BI::pi();
  const BI delta = pi / BI(2);
  const BI w = BI(2) * pi * BI(4);
  const BI X = pi * delta * exp(-delta) * w;
  const BI term = exp(w / BI(2) - X) * (BI(1) + BI(1) / (BI(2) * X));
  const BI ref = BI(4) * (term + term) / (exp(log(BI(5)) / BI(4)) * sqrt(delta) * (BI(1) - exp(-pi * BI(4))));
  const RealInterval v = alias_bound_fhat(0, p4, 5, 0);
  CHECK(v.contains(ref.lo().to_double(MPFR_RNDN)));
  CHECK(v.width() < 1e-12 * v.mid());

  // Near eta = 1 the closed form gives up.
  CHECK_THROWS_AS(alias_bound_fhat(0, FftPlan::make(1024, 0.999), 5, 0), XConditionViolated);
}

TEST_CASE("theta alias bound dominates the actual aliased terms") {
  const CharGroup g = CharGroup::decompose(13);
  for (int a : {0, 1}) {
    const CharIndex chi = with_parity(g, a);
    const FftPlan plan = FftPlan::make(64, 0.0, Rational{1, 4});
    for (std::int64_t n : {0, 5, 31}) {
      const double w = 2 * M_PI * static_cast<double>(n) / plan.B();
      const double A = 0.25;
      double actual = 0;
      for (int k = 1; k <= 3; ++k) {
        actual += abs(oracle_fhat(g, chi, w + 2 * M_PI * k * A, 0.0)).mag();
        actual += abs(oracle_fhat(g, chi, -w + 2 * M_PI * k * A, 0.0)).mag();
      }
      const RealInterval b = alias_bound_theta(n, plan, 13, a);
      CHECK(actual <= b.hi());
      CHECK(b.hi() < 100 * actual + 1e-300);
    }
  }
}

TEST_CASE("t-grid error scaling and beta limit") {
  const FftPlan plan = FftPlan::make(1024, 0.5);
  for (int a : {0, 1}) {
    const double e1 = t_grid_error(0, plan, 1000, a).mid();
    const double e2 = t_grid_error(0, plan, 16000, a).mid();
    CHECK(e2 / e1 == doctest::Approx(std::pow(16.0, 5.0 / 16.0)).epsilon(1e-9));
    const RealInterval b = grid_beta(RealInterval(1e8), a);
    CHECK(std::fabs(b.mid() - M_PI / 4) < 1e-6);
  }
}

TEST_CASE("t-grid error for q = 5, A = 4, B = 64, eta = 0, even") {
  const FftPlan plan = FftPlan::make(256, 0.0, Rational{4, 1});
  const RealInterval e = t_grid_error(0, plan, 5, 0);
  // Both neighbours sit at |t| = 64; E(64) / (1 - e^{-64 beta(64)}) twice.
  PrecisionScope scope(128);
  using BI = BigInterval;
  const BI t(64), pi = BI::pi();
  const BigBox lg = log_gamma(BigBox(BI(0.25), t / BI(2)));
  const BI zeta98 = to_bigfloat(zeta_9_8(), 128);
  const BI E = zeta98 * exp(lg.re() - log(pi) / BI(4) + log(BI(5) / (BI(2) * pi) * (BI(1.5) + t)) * BI(5) / BI(16));
  const BI beta = pi / BI(4) - atan(BI(1) / (BI(2) * t)) / BI(2) - BI(4) / (sqr(pi) * (sqr(t) - BI(0.25)));
  const BI ref = BI(2) * E / (BI(1) - exp(-t * beta));
  CHECK(e.intersects(to_hardware(ref)));
  CHECK(e.width() < 1e-6 * e.mid());
  CHECK(e.hi() < 1e-20);
}

TEST_CASE("smallq samples agree with the oracle and with largeq") {
  for (std::int64_t q : {3, 4, 5, 7, 8, 11, 12, 13}) {
    const CharGroup g = CharGroup::decompose(q);
    for (const auto& chi : primitive_characters(g)) {
      const SampleGrid grid = smallq_samples(g, chi, 0.0, 30.0);
      CHECK(grid.algorithm == "smallq");
      for (std::int64_t k : {0, 1, 64, 200, 384}) {
        REQUIRE(grid.usable_index(k));
        const double t = static_cast<double>(k) * 5.0 / 64.0;
        const RealInterval o = oracle_lambda(g, chi, t);
        CHECK(grid.at_index(k).intersects(o));
        CHECK(grid.at_index(k).width() < 1e-8);
      }
    }
  }
}

TEST_CASE("smallq gives the reflected conjugate at negative ordinates") {
  const CharGroup g = CharGroup::decompose(7);
  for (const auto& chi : primitive_characters(g)) {
    const ThetaCharacter c = ThetaCharacter::make(g, chi);
    const ThetaCharacter cb = ThetaCharacter::make(g, conjugate(g, chi));
    const FftPlan plan = FftPlan::for_height(20);
    const SampleGrid a = smallq_samples(c, plan, -100, 0);
    const SampleGrid b = smallq_samples(cb, plan, 0, 100);
    for (std::int64_t k : {0, 13, 100}) {
      const RealInterval t = RealInterval::ratio(5 * k, 64);
      CHECK(b.at_index(k).intersects(a.at_index(-k) * exp(RealInterval::pi() * t / RealInterval(2))));
    }
  }
}

TEST_CASE("smallq first zero of the odd character mod 3") {
  const CharGroup g = CharGroup::decompose(3);
  const SampleGrid grid = smallq_samples(g, with_parity(g, 1), 0.0, 10.0);
  std::vector<double> zeros;
  for (std::int64_t k = grid.first + 1; k <= grid.last(); ++k)
    if (grid.at_index(k).is_positive() != grid.at_index(k - 1).is_positive()) zeros.push_back(grid.t_at(static_cast<std::size_t>(k - grid.first)));
  REQUIRE(!zeros.empty());
  CHECK(zeros.front() > 8.0398);
  CHECK(zeros.front() - 5.0 / 64 < 8.0398);
}

TEST_CASE("default plan keeps the t = 0 error below 1e-6 up to q = 1000") {
  for (std::int64_t q : {3, 101, 499, 997, 1000}) {
    const CharGroup g = CharGroup::decompose(q);
    const auto prim = primitive_characters(g);
    REQUIRE(!prim.empty());
    for (const CharIndex& chi : {prim.front(), prim.back()}) {
      const ThetaCharacter c = ThetaCharacter::make(g, chi);
      const SampleGrid grid = smallq_samples(c, FftPlan::for_height(100), 0, 0);
      REQUIRE(grid.usable_index(0));
      CHECK(grid.at_index(0).width() < 1e-6);
    }
  }
}

TEST_CASE("each smallq error term is needed") {
  // Truncated theta sums: dropping the tail loses containment.
  {
    const CharGroup g = CharGroup::decompose(11);
    const CharIndex chi = with_parity(g, 0);
    const ThetaCharacter c = ThetaCharacter::make(g, chi);
    const FftPlan plan = FftPlan::make(1024, 0.5);
    const RealInterval o = oracle_lambda(g, chi, 0.0);
    SmallQTerms on;
    on.fixed_trunc = 2;
    SmallQTerms off = on;
    off.theta_tail = false;
    CHECK(sample_contains(c, plan, 0, on, o));
    CHECK_FALSE(sample_contains(c, plan, 0, off, o));
  }
  // Sparse t-grid with A = 1/4: the aliased dual samples matter.
  {
    const CharGroup g = CharGroup::decompose(13);
    const CharIndex chi = with_parity(g, 1);
    const ThetaCharacter c = ThetaCharacter::make(g, chi);
    const FftPlan plan = FftPlan::make(64, 0.0, Rational{1, 4});
    const RealInterval o = oracle_lambda(g, chi, 4.0);
    SmallQTerms off;
    off.alias = false;
    CHECK(sample_contains(c, plan, 1, {}, o));
    CHECK_FALSE(sample_contains(c, plan, 1, off, o));
  }
  // Short period B = 20: the neighbouring periods leak in.
  {
    const CharGroup g = CharGroup::decompose(5);
    const CharIndex chi = with_parity(g, 0);
    const ThetaCharacter c = ThetaCharacter::make(g, chi);
    const FftPlan plan = FftPlan::make(256, 0.5);
    const RealInterval o = oracle_lambda(g, chi, 0.0);
    SmallQTerms off;
    off.t_grid = false;
    CHECK(sample_contains(c, plan, 0, {}, o));
    CHECK_FALSE(sample_contains(c, plan, 0, off, o));
  }
}
