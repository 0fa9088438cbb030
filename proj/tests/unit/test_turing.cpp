#include <doctest.h>

#include "grh/oracle.hpp"
#include "grh/sampler_smallq.hpp"
#include "grh/turing.hpp"

#include <cmath>

using namespace grh;

namespace {

CharIndex with_parity(const CharGroup& g, int a) {
  for (const auto& chi : primitive_characters(g))
    if (parity(g, chi) == a) return chi;
  throw DomainError("no primitive character with that parity");
}

SampleGrid pair_grid(const CharGroup& g, const CharIndex& chi, double t0) {
  const double top = t0 + certify_margin(g.q(), t0);
  const FftPlan plan = FftPlan::for_height(top);
  return smallq_samples(ThetaCharacter::make(g, chi), plan, -64, static_cast<std::int64_t>(std::ceil(top * 64 / 5)));
}

}  // namespace

TEST_CASE("phi integral is linear in log q") {
  const TuringWindow w{60, 8};
  for (int a : {0, 1}) {
    const RealInterval d = phi_integral(10, a, w) - phi_integral(5, a, w);
    const double expect = (2 * w.t0 + w.h) / (2 * M_PI) * std::log(2.0);
    CHECK(d.contains(expect));
    CHECK(d.width() < 1e-4);
  }
}

TEST_CASE("phi integral against a finer quadrature") {
  const TuringWindow w{30, 8};
  const RealInterval a = phi_integral(5, 0, w);
  const RealInterval b = phi_integral(5, 0, w, 256);
  CHECK(a.intersects(b));
  CHECK(b.width() < a.width());
  CHECK(a.width() < 1e-4);
  // The parities differ only through the gamma argument.
  const RealInterval lg0 = log_gamma_integral(0, w), lg1 = log_gamma_integral(1, w);
  const RealInterval diff = (phi_integral(5, 1, w) - phi_integral(5, 0, w)) * RealInterval(8) * RealInterval::pi() / RealInterval(2);
  CHECK(diff.intersects(lg1 - lg0));
}

TEST_CASE("S integral bounds") {
  const TuringWindow w{60, 10};
  const double arg = std::log(13.0 * 70 / (2 * M_PI));
  CHECK(s_integral_bound(13, w, SSource::rumely).hi() == doctest::Approx(1.8397 + 0.1242 * arg).epsilon(1e-12));
  CHECK(s_integral_bound(13, w, SSource::trudgian).hi() == doctest::Approx(2.17618 + 0.0679955 * arg).epsilon(1e-12));
  CHECK(s_constants(SSource::rumely).c1 == 1.8397);
  CHECK(s_constants(SSource::rumely).c2 == 0.1242);
  CHECK(s_constants(SSource::trudgian).c1 == 2.17618);
  CHECK(s_constants(SSource::trudgian).c2 == 0.0679955);
  CHECK(s_integral_bound(14, w, SSource::rumely).hi() > s_integral_bound(13, w, SSource::rumely).hi());
  CHECK_THROWS_AS(s_integral_bound(13, TuringWindow{50, 10}, SSource::rumely), HypothesisViolated);
  CHECK(default_source(13, 60) == SSource::rumely);
  CHECK(default_source(1000, 2000) == SSource::trudgian);
}

TEST_CASE("zero count integral from sign changes") {
  const TuringWindow w{9, 8};
  CHECK(zero_count_integral({}, w).contains(0.0));
  CHECK(zero_count_integral({}, w).width() == 0);
  const RealInterval one = zero_count_integral({{10.0, 10.5}}, w);
  CHECK(one.lo() == 17 - 10.5);
  CHECK(one.hi() == 17 - 10.0);
  CHECK(zero_count_integral({{1.0, 2.0}, {20.0, 21.0}}, w).hi() == 0);
  CHECK_THROWS_AS(zero_count_integral({{8.5, 9.5}}, w), DomainError);
}

TEST_CASE("zero count integral for the odd character mod 3 on [9, 17]") {
  const CharGroup g = CharGroup::decompose(3);
  const CharIndex chi = with_parity(g, 1);
  const auto ref = oracle_zeros(g, chi, 9.0, 17.0, 128, 8);
  REQUIRE(!ref.empty());
  double lo = 0, hi = 0;
  for (const auto& z : ref) {
    lo += 17 - z.second;
    hi += 17 - z.first;
  }
  const SampleGrid grid = smallq_samples(g, chi, 0.0, 30.0);
  std::vector<SignChange> changes;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid.samples[i].is_positive() != grid.samples[i - 1].is_positive()) changes.push_back({grid.t_at(i - 1), grid.t_at(i)});
  const RealInterval v = zero_count_integral(changes, TuringWindow{9, 8});
  CHECK(v.intersects(RealInterval(lo, hi)));
}

TEST_CASE("bracketed integer") {
  CHECK(bracketed_integer(RealInterval(4.6, 5.4)) == 5);
  CHECK(bracketed_integer(RealInterval(4.1, 4.9)) == -1);
  CHECK(bracketed_integer(RealInterval(4.6, 6.1)) == -1);
  CHECK(bracketed_integer(RealInterval(5.0, 5.0)) == 5);
}

TEST_CASE("Turing window is wide enough for a unit bracket") {
  for (std::int64_t q : {3, 13, 400}) {
    for (double t0 : {60.0, 2500.0}) {
      const double h = turing_h(q, t0);
      const double s = s_integral_bound(q, TuringWindow{t0, h}, default_source(q, t0)).hi();
      CHECK(4 * s / h <= 0.8);
      CHECK(h >= 8);
    }
  }
}

TEST_CASE("certify the odd character mod 3") {
  const CharGroup g = CharGroup::decompose(3);
  const CharIndex chi = with_parity(g, 1);
  const SampleGrid grid = pair_grid(g, chi, 30);
  const ZeroCertificate c = certify(g, grid, grid, 30);
  CHECK(c.verdict == Verdict::verified);
  CHECK(c.t0 > 50);
  CHECK(c.t0_requested == 30);
  CHECK(bracketed_integer(c.bracket) == c.count);
  CHECK(static_cast<std::int64_t>(c.zeros.size()) == c.count);
  // Real character: zeros come in +- pairs, the first near 8.04.
  const auto first = std::find_if(c.zeros.begin(), c.zeros.end(), [](const SignChange& z) { return z.lo > 0; });
  REQUIRE(first != c.zeros.end());
  CHECK(first->lo < 8.0398);
  CHECK(first->hi > 8.0398);
}

TEST_CASE("certify a complex pair mod 7 and its conjugate") {
  const CharGroup g = CharGroup::decompose(7);
  for (const auto& chi : primitive_characters(g)) {
    const CharIndex bar = conjugate(g, chi);
    if (bar == chi) continue;
    const SampleGrid a = pair_grid(g, chi, 60);
    const SampleGrid b = pair_grid(g, bar, 60);
    const ZeroCertificate c1 = certify(g, a, b, 60);
    const ZeroCertificate c2 = certify(g, b, a, 60);
    CHECK(c1.verdict == Verdict::verified);
    CHECK(c2.verdict == Verdict::verified);
    CHECK(c1.count == c2.count);
    break;
  }
}

TEST_CASE("an artificially widened sample is escalated and still verified") {
  const CharGroup g = CharGroup::decompose(5);
  const CharIndex chi = with_parity(g, 0);
  SampleGrid grid = pair_grid(g, chi, 60);
  // Widen the samples around t = 20 to straddle zero.
  for (std::int64_t k = 256; k <= 258; ++k) {
    auto& v = grid.samples[static_cast<std::size_t>(k - grid.first)];
    v = RealInterval(-std::fabs(v.mid()) - 1, std::fabs(v.mid()) + 1);
  }
  const ZeroCertificate c = certify(g, grid, grid, 60);
  CHECK(c.verdict == Verdict::verified);
  CHECK(!c.escalations.empty());
}

TEST_CASE("a destroyed grid fails cleanly") {
  const CharGroup g = CharGroup::decompose(5);
  const CharIndex chi = with_parity(g, 0);
  SampleGrid grid = pair_grid(g, chi, 60);
  for (auto& v : grid.samples) v = RealInterval(-1, 1);
  CertifyOptions opt;
  opt.max_shifts = 0;
  ZeroCertificate c;
  CHECK_NOTHROW(c = certify(g, grid, grid, 60, opt));
  CHECK(c.verdict == Verdict::failed);
}
