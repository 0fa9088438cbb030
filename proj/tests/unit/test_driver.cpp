#include <doctest.h>

#include "grh/driver.hpp"
#include "grh/sampler_smallq.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace grh;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& tag) {
  static std::atomic<int> n{0};
  const fs::path p = fs::temp_directory_path() / ("grh_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(n++));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::map<std::string, std::string> files_in(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

RunConfig small_run(const fs::path& out, std::int64_t q_lo, std::int64_t q_hi, double t0) {
  RunConfig cfg;
  cfg.q_lo = q_lo;
  cfg.q_hi = q_hi;
  cfg.height = HeightPolicy::constant(t0);
  cfg.out_dir = out;
  return cfg;
}

// One real certificate to play with, computed once.
const ZeroCertificate& sample_cert() {
  static const ZeroCertificate cert = [] {
    const fs::path dir = scratch("sample");
    run_verification(small_run(dir, 5, 5, 30));
    const ZeroCertificate c = read_certificate(dir / "q5_chi_1.cert");
    fs::remove_all(dir);
    return c;
  }();
  return cert;
}

int parse_error_line(const std::string& text) {
  try {
    parse_certificate(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::string replace_line(const std::string& text, int line, const std::string& with) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string s;
  for (int i = 1; std::getline(in, s); ++i) out << (i == line ? with : s) << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("certificate text round-trips") {
  const ZeroCertificate& c = sample_cert();
  CHECK(c.verdict == Verdict::verified);
  CHECK(c.algorithm == "smallq");
  CHECK(!c.zeros.empty());
  const std::string text = certificate_text(c);
  const ZeroCertificate back = parse_certificate(text);
  CHECK(same_certificate(c, back));
  CHECK(certificate_text(back) == text);
}

TEST_CASE("round trip keeps every field, escalations included") {
  ZeroCertificate c;
  c.q = 8;
  c.chi = {{1, 0, 1}};
  c.chi_bar = c.chi;
  c.t0 = 50.5;
  c.t0_requested = 1.0 / 3;
  c.h = 8.125;
  c.algorithm = "largeq";
  c.plan = "step=5/64 D=16";
  c.source = SSource::trudgian;
  c.zeros = {{-0.0, 0x1.8p-3}, {3.5, 3.5000000000000004}};
  c.bracket = RealInterval(1.75, 2.25);
  c.count = 2;
  c.escalations = {{-0.0, "em53", "resolved"}, {12.3, "shift", "unresolved"}};
  c.verdict = Verdict::failed;
  const ZeroCertificate back = parse_certificate(certificate_text(c));
  CHECK(same_certificate(c, back));
  CHECK(std::signbit(back.zeros[0].lo));
  CHECK(back.t0_requested == 1.0 / 3);
}

TEST_CASE("needs_escalation never reaches a certificate") {
  ZeroCertificate c = sample_cert();
  c.verdict = Verdict::needs_escalation;
  CHECK_THROWS_AS(certificate_text(c), DomainError);
  const std::string text = certificate_text(sample_cert());
  const auto v = text.rfind("V ");
  CHECK(parse_error_line(text.substr(0, v) + "V needs_escalation\n") > 10);
}

TEST_CASE("malformed certificates report the offending line") {
  const std::string text = certificate_text(sample_cert());
  CHECK(parse_error_line(replace_line(text, 1, "version 7")) == 1);
  CHECK(parse_error_line(replace_line(text, 2, "q two")) == 2);
  CHECK(parse_error_line(replace_line(text, 3, "chi 6,1")) == 3);
  CHECK(parse_error_line(replace_line(text, 5, "t0 12.5")) == 5);
  CHECK(parse_error_line(replace_line(text, 8, "source guess")) == 8);
  CHECK(parse_error_line(replace_line(text, 11, "Z 0x1p+0")) == 11);
  CHECK(parse_error_line(replace_line(text, 11, "Z 0x1p+1 0x1p+0")) == 11);
  CHECK(parse_error_line(replace_line(text, 11, "Q 0x1p+0 0x1p+1")) == 11);
  CHECK(parse_error_line(replace_line(text, 4, "h 0x1p+3")) == 4);
  // Truncated file: the verdict is missing.
  const auto v = text.rfind("V ");
  const std::string cut = text.substr(0, v);
  const int lines = static_cast<int>(std::count(cut.begin(), cut.end(), '\n'));
  CHECK(parse_error_line(cut) == lines + 1);
  // Trailing garbage after the verdict.
  CHECK(parse_error_line(text + "Z 0x0p+0 0x1p+0\n") == lines + 2);
  CHECK(parse_error_line("") == 1);
}

TEST_CASE("runs are deterministic and independent of the worker count") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  RunConfig ca = small_run(a, 3, 8, 40);
  RunConfig cb = small_run(b, 3, 8, 40);
  cb.workers = 3;
  const auto sa = run_verification(ca);
  const auto sb = run_verification(cb);
  CHECK(sa.exit_status() == 0);
  CHECK(sb.exit_status() == 0);
  CHECK(sa.verified == sa.pairs);
  CHECK(files_in(a) == files_in(b));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("resume after an interrupted run gives the same certificate set") {
  const fs::path full = scratch("full"), part = scratch("part");
  run_verification(small_run(full, 3, 7, 40));
  RunConfig cfg = small_run(part, 3, 7, 40);
  run_verification(cfg);
  // Simulate a kill: one pair lost its marker, another was never written and
  // a temp file was left behind.
  fs::remove(part / "q7_chi_1.done");
  fs::remove(part / "q7_chi_2.done");
  fs::remove(part / "q7_chi_2.cert");
  std::ofstream(part / "q7_chi_2.cert.tmp") << "version 1\nq 7\n";
  cfg.resume = true;
  const auto s = run_verification(cfg);
  CHECK(s.skipped == s.pairs - 2);
  CHECK(s.verified == 2);
  fs::remove(part / "q7_chi_2.cert.tmp");
  CHECK(files_in(full) == files_in(part));
  fs::remove_all(full);
  fs::remove_all(part);
}

TEST_CASE("one certificate per conjugate pair") {
  for (std::int64_t q : {5, 7, 8, 12, 13, 15, 16}) {
    const ModulusContext ctx = ModulusContext::make(q);
    const auto pairs = conjugate_pairs(ctx);
    std::set<std::size_t> seen;
    std::size_t real = 0;
    for (const auto& p : pairs) {
      CHECK(seen.insert(p.chi).second);
      if (p.chi != p.bar) CHECK(seen.insert(p.bar).second);
      else ++real;
      CHECK(ctx.meta[p.chi].conjugate == ctx.characters[p.bar]);
    }
    CHECK(seen.size() == ctx.characters.size());
    CHECK(2 * pairs.size() - real == ctx.characters.size());
  }
}

TEST_CASE("q below 3 is rejected cleanly") {
  const fs::path dir = scratch("q2");
  RunConfig cfg = small_run(dir, 2, 4, 40);
  CHECK_THROWS_AS(run_verification(cfg), QTooSmall);
  CHECK_THROWS_AS(run_central_sweep(cfg), QTooSmall);
  CHECK(!fs::exists(dir));
}

TEST_CASE("config file overrides and diagnostics") {
  RunConfig cfg;
  std::istringstream in("# comment\nq_lo = 10\nq_hi=20  # trailing\n\nheight = 75.5\nalgo = largeq\nlattice_D = 64\n"
                        "workers = 4\nout = /tmp/x\nresume = yes\nem_bits = 120\nbits = 96\n");
  apply_config(cfg, in);
  CHECK(cfg.q_lo == 10);
  CHECK(cfg.q_hi == 20);
  CHECK(cfg.height.height(17) == 75.5);
  CHECK(cfg.algorithm == Algorithm::largeq);
  CHECK(cfg.lattice.D == 64);
  CHECK(cfg.lattice.bits == 96);
  CHECK(cfg.certify.em_bits == 120);
  CHECK(cfg.workers == 4);
  CHECK(cfg.out_dir == fs::path("/tmp/x"));
  CHECK(cfg.resume);

  auto line_of = [](const std::string& text) {
    RunConfig c;
    std::istringstream s(text);
    try {
      apply_config(c, s);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("q_lo = 3\nfrobnicate = 1\n") == 2);
  CHECK(line_of("q_lo = 3\n\nq_hi = 1x\n") == 3);
  CHECK(line_of("algo = fastest\n") == 1);
  CHECK(line_of("just words\n") == 1);
  CHECK(line_of("resume = maybe\n") == 1);
}

TEST_CASE("height policy and algorithm crossover") {
  RunConfig cfg;
  CHECK(cfg.height.height(50) == 1000);
  CHECK(cfg.height.height(1000) == 100);
  CHECK(cfg.algorithm_for(1000) == Algorithm::smallq);
  CHECK(cfg.algorithm_for(1001) == Algorithm::largeq);
  cfg.algorithm = Algorithm::largeq;
  CHECK(cfg.algorithm_for(5) == Algorithm::largeq);
  cfg.height = HeightPolicy::constant(-1);
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("reflected largeq samples agree with smallq below zero") {
  const std::int64_t q = 7;
  const ModulusContext ctx = ModulusContext::make(q);
  LatticeStore store;
  LatticeParams lp;
  lp.D = 16;
  const auto grids = sample_range_all(ctx, 0, 12, {5, 64}, store, lp);
  const FftPlan plan = FftPlan::for_height(10);
  for (const auto& p : conjugate_pairs(ctx)) {
    const SampleGrid r = reflect_extend(grids[p.chi], grids[p.bar], 12);
    CHECK(r.first == -12);
    const SampleGrid s = smallq_samples(ThetaCharacter::make(ctx.group, ctx.characters[p.chi]), plan, -12, 12);
    for (std::int64_t k = -12; k <= 12; ++k) {
      CHECK(r.at_index(k).intersects(s.at_index(k)));
      CHECK(r.at_index(k).width() < 1e-6);
    }
  }
}

TEST_CASE("largeq verification path") {
  const fs::path dir = scratch("largeq");
  RunConfig cfg = small_run(dir, 5, 5, 30);
  cfg.algorithm = Algorithm::largeq;
  cfg.lattice.D = 4;
  const auto s = run_verification(cfg);
  CHECK(s.exit_status() == 0);
  CHECK(s.lattices_built > 0);
  const ZeroCertificate c = read_certificate(dir / "q5_chi_1.cert");
  CHECK(c.algorithm == "largeq");
  // Same zeros as the smallq certificate, up to bracket placement.
  const ZeroCertificate& ref = sample_cert();
  CHECK(c.count == ref.count);
  REQUIRE(c.zeros.size() == ref.zeros.size());
  for (std::size_t i = 0; i < c.zeros.size(); ++i) {
    CHECK(c.zeros[i].lo <= ref.zeros[i].hi);
    CHECK(ref.zeros[i].lo <= c.zeros[i].hi);
  }
  fs::remove_all(dir);
}

TEST_CASE("failed pairs are listed in the manifest") {
  const fs::path dir = scratch("fail");
  RunConfig cfg = small_run(dir, 5, 5, 30);
  cfg.certify.h = 1.0;  // far too short a window for a one-integer bracket
  cfg.certify.max_shifts = 0;
  const auto s = run_verification(cfg);
  CHECK(s.exit_status() == 1);
  CHECK(s.failures.size() == static_cast<std::size_t>(s.pairs));
  CHECK(fs::exists(dir / "failures.txt"));
  CHECK(!fs::exists(dir / "q5_chi_1.done"));
  const ZeroCertificate c = read_certificate(dir / "q5_chi_1.cert");
  CHECK(c.verdict == Verdict::failed);
  fs::remove_all(dir);
}

TEST_CASE("central values: injected straddler is escalated and resolved") {
  const ModulusContext ctx = ModulusContext::make(11);
  std::vector<RealInterval> vals;
  for (std::size_t i = 0; i < ctx.characters.size(); ++i)
    vals.push_back(lambda_direct(ctx.group, ctx.characters[i], ctx.meta[i], 0.0, PrecisionTier::hardware()));
  for (const auto& v : vals) CHECK(!v.contains_zero());
  vals[2] = inflate(vals[2], std::fabs(vals[2].mid()) * 2);
  vals[5] = RealInterval::entire();
  const CentralPointReport rep = check_central(ctx, vals);
  CHECK(rep.characters_checked == static_cast<std::int64_t>(ctx.characters.size()));
  REQUIRE(rep.straddling.size() == 2);
  CHECK(rep.straddling[0].chi == ctx.characters[2]);
  CHECK(rep.straddling[0].resolved);
  CHECK(rep.straddling[0].steps.front().method == "em53");
  CHECK(rep.survivors() == 0);
}

TEST_CASE("central sweep counts match brute-force enumeration") {
  const fs::path dir = scratch("central");
  RunConfig cfg = small_run(dir, 3, 60, 1);
  cfg.lattice.D = 64;
  const auto reports = run_central_sweep(cfg);
  REQUIRE(reports.size() == 58);
  for (const auto& r : reports) {
    CHECK(r.survivors() == 0);
    // Brute force: primitive means no proper divisor d of q induces chi,
    // tested by chi(1 + d k) = 1 for all k; parity from chi(-1).
    const CharGroup g = CharGroup::decompose(r.q);
    std::int64_t even = 0, odd = 0;
    for (const auto& chi : g.all_characters()) {
      bool primitive = true;
      for (std::int64_t d = 1; d < r.q && primitive; ++d) {
        if (r.q % d != 0) continue;
        bool trivial_on_kernel = true;
        for (std::int64_t n = 1 + d; n < r.q; n += d) {
          if (gcd64(n, r.q) != 1) continue;
          const auto p = phase_numerator(g, chi, n);
          if (p && *p % g.lcm_order() != 0) trivial_on_kernel = false;
        }
        if (trivial_on_kernel) primitive = false;
      }
      if (!primitive) continue;
      const auto m1 = phase_numerator(g, chi, r.q - 1);
      (*m1 % g.lcm_order() == 0 ? even : odd) += 1;
    }
    CHECK(r.even == even);
    CHECK(r.odd == odd);
  }
  CHECK(fs::exists(dir / "central.txt"));
  fs::remove_all(dir);
}
