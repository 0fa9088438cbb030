#include <doctest.h>

#include "grh/hurwitz.hpp"

#include <filesystem>
#include <fstream>
#include <random>

using namespace grh;

namespace {

const PrecisionTier kBig = PrecisionTier::bigfloat(128);

LatticeParams small_params(int M = 9) {
  LatticeParams p;
  p.D = 64;
  p.ncols = 15;
  p.M = M;
  p.bits = 128;
  return p;
}

ComplexBox direct_terms(double t, std::int64_t a, std::int64_t q, int M) {
  ComplexBox sum(RealInterval(0), RealInterval(0));
  for (int n = 0; n <= M; ++n) {
    const RealInterval l = log(RealInterval(n) + RealInterval::ratio(a, q));
    sum += exp(ComplexBox(RealInterval(-0.5) * l, RealInterval(-t) * l));
  }
  return sum;
}

}  // namespace

TEST_CASE("Euler-Maclaurin classical values") {
  const double pi2_6 = M_PI * M_PI / 6;
  CHECK(em_hurwitz(ComplexBox(2.0), RealInterval(1), kBig).re().contains(pi2_6));
  CHECK(em_hurwitz(ComplexBox(2.0), RealInterval(1), PrecisionTier::hardware()).re().contains(pi2_6));
  for (double a : {0.25, 0.5, 0.75}) {
    const ComplexBox z = em_hurwitz(ComplexBox(0.0), RealInterval(a), kBig);
    CHECK(z.re().contains(0.5 - a));
    CHECK(z.re().width() < 1e-14);
  }
  CHECK_THROWS_AS(em_hurwitz(ComplexBox(1.0), RealInterval(1), kBig), PoleProximity);
}

TEST_CASE("zeta(s, 1/2) = (2^s - 1) zeta(s)") {
  for (double t : {0.0, 3.0, 14.0}) {
    const ComplexBox s(RealInterval(0.5), RealInterval(t));
    const ComplexBox half = em_hurwitz(s, RealInterval(0.5), kBig);
    const ComplexBox one = em_hurwitz(s, RealInterval(1), kBig);
    const ComplexBox two_s = pow(RealInterval(2), s);
    CHECK(half.intersects((two_s - ComplexBox(1.0)) * one));
  }
}

TEST_CASE("lattice cells and Taylor evaluation") {
  const auto lat0 = build_lattice(0.0, small_params());
  SUBCASE("last row, column 2 at t = 0") {
    // zeta(5/2) minus its first M+1 terms.
    ComplexBox ref = em_hurwitz(ComplexBox(2.5), RealInterval(1), kBig);
    for (int n = 1; n <= 10; ++n) ref -= ComplexBox(exp(RealInterval(-2.5) * log(RealInterval(n))));
    CHECK(lat0.cell(64, 2).intersects(ref));
  }
  SUBCASE("exact row hit") {
    // 3/64 is a lattice row, so only column 0 contributes.
    const ComplexBox v = eval_taylor(lat0, 3, 64);
    CHECK(taylor_tail_bound(lat0, 3, 64) == 0.0);
    CHECK(v.intersects(lat0.cell(3, 0) + direct_terms(0, 3, 64, 9)));
  }
  SUBCASE("random a/q at t = 0") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 40; ++i) {
      const std::int64_t q = 3 + static_cast<std::int64_t>(rng() % 10000);
      const std::int64_t a = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q - 1));
      const ComplexBox ref = em_hurwitz_rational(ComplexBox(0.5), a, q, kBig);
      const ComplexBox v = eval_taylor(lat0, a, q);
      CHECK(v.intersects(ref));
      CHECK(v.re().width() < 1e-8);
    }
  }
  SUBCASE("q = 5, a = 2, t = 10") {
    const auto lat = build_lattice(10.0, small_params());
    const ComplexBox s(RealInterval(0.5), RealInterval(10));
    CHECK(eval_taylor(lat, 2, 5).intersects(em_hurwitz_rational(s, 2, 5, kBig)));
  }
  SUBCASE("tail restoration with M = 0 and M = 20") {
    const auto l0 = build_lattice(7.0, small_params(0));
    const auto l20 = build_lattice(7.0, small_params(20));
    for (std::int64_t a : {1, 5, 17}) CHECK(eval_taylor(l0, a, 29).intersects(eval_taylor(l20, a, 29)));
  }
}

TEST_CASE("Taylor tail bound dominates 50 further terms") {
  // Few columns so the tail is not negligible.
  LatticeParams p = small_params();
  p.D = 8;
  p.ncols = 3;
  std::mt19937_64 rng(8);
  for (double t : {0.0, 20.0}) {
    const auto lat = build_lattice(t, p);
    for (int i = 0; i < 5; ++i) {
      const std::int64_t q = 50 + static_cast<std::int64_t>(rng() % 500);
      const std::int64_t a = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q - 1));
      const double bound = taylor_tail_bound(lat, a, q);
      PrecisionScope scope(128);
      const int r = nearest_row(a, q, p.D);
      const BigInterval delta = BigInterval::ratio(a, q) - BigInterval::ratio(r, p.D);
      const BigBox s(BigInterval(0.5), BigInterval(t));
      const int extra = 50;
      const auto cols = em_hurwitz_columns(s, BigInterval::ratio(r, p.D), p.M, p.ncols + 1 + extra,
                                           choose_em_params(t + 60, 128, p.M));
      BigBox coef(BigInterval(1), BigInterval(0)), tail(BigInterval(0), BigInterval(0));
      for (int k = 1; k <= p.ncols + extra; ++k) {
        coef = coef * (s + BigBox(BigInterval(k - 1))) * (-delta) / BigInterval(k);
        if (k > p.ncols) tail += coef * cols[static_cast<std::size_t>(k)];
      }
      CHECK(to_hardware(abs(tail)).hi() <= bound);
    }
  }
}

TEST_CASE("alpha-derivative identity behind the Taylor shift") {
  // d/dalpha zeta(s, alpha) = -s zeta(s+1, alpha), checked by a forward
  // difference with step 2^-20 and its second-derivative error term.
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> ua(0.2, 1.0), ut(0, 20);
  PrecisionScope scope(128);
  for (int i = 0; i < 20; ++i) {
    const BigInterval alpha(ua(rng));
    const BigBox s(BigInterval(0.5), BigInterval(ut(rng)));
    const BigInterval eps(std::ldexp(1.0, -20));
    const EMParams em = choose_em_params(30, 128);
    const auto at = em_hurwitz_columns(s, alpha, -1, 3, em);
    const BigBox shifted = em_hurwitz(s, alpha + eps, em);
    const BigBox diff = (shifted - at[0]) / eps;
    const BigBox deriv = -(s * at[1]);
    // |f''| <= |s(s+1)| max |zeta(s+2, .)|; zeta(s+2, beta) <= beta^{-5/2} + zeta(5/2).
    const BigInterval bound = abs(s) * abs(s + BigBox(BigInterval(1))) *
                              (exp(BigInterval(-2.5) * log(alpha)) + BigInterval(1.35)) * eps;
    CHECK(to_hardware(inflate(diff, bound.hi())).intersects(to_hardware(deriv)));
  }
}

TEST_CASE("lattice persistence round trip") {
  LatticeParams p = small_params();
  p.D = 4;
  p.ncols = 3;
  const auto lat = build_lattice(2.5, p);
  const auto dir = std::filesystem::temp_directory_path() / "grh_lattice_test";
  std::filesystem::create_directories(dir);
  save_lattice(lat, dir / "l.txt");
  const auto back = load_lattice(dir / "l.txt");
  CHECK(back.t == 2.5);
  CHECK(back.params == p);
  REQUIRE(back.cells.size() == lat.cells.size());
  for (std::size_t i = 0; i < lat.cells.size(); ++i) {
    CHECK(back.cells[i].re().lo() == lat.cells[i].re().lo());
    CHECK(back.cells[i].im().hi() == lat.cells[i].im().hi());
  }
  LatticeStore store(dir);
  store.get(2.5, p);
  store.get(2.5, p);
  CHECK(store.builds() == 1);
  LatticeStore again(dir);
  again.get(2.5, p);
  CHECK(again.builds() == 0);
  {
    std::ofstream bad(dir / "bad.txt");
    bad << "2.5 4 3 9 128\n0x1p+0 0x1p+0 zz\n";
  }
  try {
    load_lattice(dir / "bad.txt");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::filesystem::remove_all(dir);
}
