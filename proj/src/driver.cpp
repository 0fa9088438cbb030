#include "grh/driver.hpp"

#include "grh/sampler_smallq.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace grh {

namespace fs = std::filesystem;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::automatic: return "auto";
    case Algorithm::largeq: return "largeq";
    case Algorithm::smallq: return "smallq";
  }
  return "auto";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "auto") return Algorithm::automatic;
  if (s == "largeq") return Algorithm::largeq;
  if (s == "smallq") return Algorithm::smallq;
  throw ConfigError("unknown algorithm '" + s + "'");
}

double HeightPolicy::height(std::int64_t q) const {
  if (kind == Kind::constant) return value;
  return std::min(cap, scale / static_cast<double>(q));
}

void RunConfig::validate() const {
  if (q_lo < 3) throw QTooSmall("q_lo must be at least 3 (q = " + std::to_string(q_lo) + ")");
  if (q_hi < q_lo) throw ConfigError("q_hi below q_lo");
  if (height.kind == HeightPolicy::Kind::constant && !(height.value > 0)) throw ConfigError("height must be positive");
  if (height.kind == HeightPolicy::Kind::scaled && !(height.cap > 0 && height.scale > 0))
    throw ConfigError("scaled height needs positive cap and scale");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (crossover < 0) throw ConfigError("crossover must be non-negative");
  if (lattice.D < 1 || lattice.ncols < 1 || lattice.M < 1) throw ConfigError("lattice sizes must be positive");
  if (lattice.bits < 64) throw ConfigError("lattice precision needs at least 64 bits");
  if (certify.em_bits < 64) throw ConfigError("em_bits needs at least 64 bits");
  if (out_dir.empty()) throw ConfigError("output directory not set");
}

Algorithm RunConfig::algorithm_for(std::int64_t q) const {
  if (algorithm != Algorithm::automatic) return algorithm;
  return q <= crossover ? Algorithm::smallq : Algorithm::largeq;
}

// ---- config file ----------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::int64_t to_int(const std::string& v, int line) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer, got '" + v + "'", line);
  }
  if (used != v.size()) throw ParseError("expected an integer, got '" + v + "'", line);
  return x;
}

double to_real(const std::string& v, int line) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + v + "'", line);
  }
  if (used != v.size()) throw ParseError("expected a number, got '" + v + "'", line);
  return x;
}

bool to_bool(const std::string& v, int line) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ParseError("expected a boolean, got '" + v + "'", line);
}

}  // namespace

void apply_config(RunConfig& cfg, std::istream& in) {
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    const std::string key = trim(s.substr(0, eq));
    const std::string val = trim(s.substr(eq + 1));
    if (val.empty()) throw ParseError("empty value for '" + key + "'", line);
    if (key == "q_lo") cfg.q_lo = to_int(val, line);
    else if (key == "q_hi") cfg.q_hi = to_int(val, line);
    else if (key == "height") {
      if (val == "scaled") cfg.height.kind = HeightPolicy::Kind::scaled;
      else cfg.height = HeightPolicy::constant(to_real(val, line));
    } else if (key == "height_cap") cfg.height.cap = to_real(val, line);
    else if (key == "height_scale") cfg.height.scale = to_real(val, line);
    else if (key == "algo") {
      try {
        cfg.algorithm = algorithm_from_string(val);
      } catch (const ConfigError& e) {
        throw ParseError(e.what(), line);
      }
    } else if (key == "crossover") cfg.crossover = to_int(val, line);
    else if (key == "bits") cfg.lattice.bits = static_cast<int>(to_int(val, line));
    else if (key == "lattice_D") cfg.lattice.D = static_cast<int>(to_int(val, line));
    else if (key == "lattice_ncols") cfg.lattice.ncols = static_cast<int>(to_int(val, line));
    else if (key == "lattice_M") cfg.lattice.M = static_cast<int>(to_int(val, line));
    else if (key == "em_bits") cfg.certify.em_bits = static_cast<int>(to_int(val, line));
    else if (key == "workers") cfg.workers = static_cast<int>(to_int(val, line));
    else if (key == "out") cfg.out_dir = val;
    else if (key == "cache_dir") cfg.cache_dir = val;
    else if (key == "resume") cfg.resume = to_bool(val, line);
    else throw ParseError("unknown key '" + key + "'", line);
  }
}

void apply_config_file(RunConfig& cfg, const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  apply_config(cfg, in);
}

// ---- certificates ---------------------------------------------------------

namespace {

std::string source_name(SSource s) { return s == SSource::rumely ? "rumely" : "trudgian"; }

bool has_space(const std::string& s) { return s.find_first_of(" \t\r\n") != std::string::npos; }

bool same_interval(const RealInterval& a, const RealInterval& b) {
  return std::signbit(a.lo()) == std::signbit(b.lo()) && std::signbit(a.hi()) == std::signbit(b.hi()) &&
         a.lo() == b.lo() && a.hi() == b.hi();
}

bool same_double(double a, double b) { return a == b && std::signbit(a) == std::signbit(b); }

}  // namespace

std::string certificate_text(const ZeroCertificate& c) {
  if (c.verdict == Verdict::needs_escalation) throw DomainError("a certificate needs a final verdict before it is written");
  if (c.algorithm.empty() || has_space(c.algorithm)) throw DomainError("algorithm name must be one word");
  if (c.plan.find_first_of("\r\n") != std::string::npos) throw DomainError("plan must fit on one line");
  for (const auto& e : c.escalations)
    if (e.method.empty() || e.outcome.empty() || has_space(e.method) || has_space(e.outcome))
      throw DomainError("escalation fields must be single words");
  std::ostringstream os;
  os << "version " << kCertificateVersion << '\n';
  os << "q " << c.q << '\n';
  os << "chi " << serialize_char(c.q, c.chi) << '\n';
  os << "chibar " << serialize_char(c.q, c.chi_bar) << '\n';
  os << "t0 " << hex(c.t0) << '\n';
  os << "t0_requested " << hex(c.t0_requested) << '\n';
  os << "h " << hex(c.h) << '\n';
  os << "source " << source_name(c.source) << '\n';
  os << "algorithm " << c.algorithm << '\n';
  os << "plan " << c.plan << '\n';
  for (const auto& z : c.zeros) os << "Z " << hex(z.lo) << ' ' << hex(z.hi) << '\n';
  os << "T " << hex(c.bracket.lo()) << ' ' << hex(c.bracket.hi()) << ' ' << c.count << '\n';
  for (const auto& e : c.escalations) os << "E " << hex(e.t) << ' ' << e.method << ' ' << e.outcome << '\n';
  os << "V " << to_string(c.verdict) << '\n';
  return os.str();
}

namespace {

class CertReader {
 public:
  explicit CertReader(const std::string& text) : in_(text) {}

  // Next line split at the first space into (tag, rest); false at the end.
  bool next(std::string& tag, std::string& rest) {
    std::string s;
    if (!std::getline(in_, s)) return false;
    ++line_;
    if (!s.empty() && s.back() == '\r') fail("carriage return in certificate");
    const auto sp = s.find(' ');
    tag = s.substr(0, sp);
    rest = sp == std::string::npos ? std::string() : s.substr(sp + 1);
    return true;
  }

  void expect(const char* want, std::string& rest) {
    std::string tag;
    if (!next(tag, rest)) throw ParseError(std::string("missing '") + want + "' line", line_ + 1);
    if (tag != want) fail(std::string("expected '") + want + "', found '" + tag + "'");
  }

  std::vector<std::string> fields(const std::string& rest, std::size_t n) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto sp = rest.find(' ', pos);
      out.push_back(rest.substr(pos, sp == std::string::npos ? std::string::npos : sp - pos));
      if (out.back().empty()) fail("empty field");
      if (sp == std::string::npos) break;
      pos = sp + 1;
    }
    if (out.size() != n) fail("expected " + std::to_string(n) + " fields, found " + std::to_string(out.size()));
    return out;
  }

  double real(const std::string& s) {
    if (s.size() < 3 || s.find("0x") == std::string::npos) fail("expected a hex float, got '" + s + "'");
    try {
      return parse_hex_double(s);
    } catch (const std::exception&) {
      fail("expected a hex float, got '" + s + "'");
    }
    return 0;
  }

  std::int64_t integer(const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      fail("expected an integer, got '" + s + "'");
    }
    if (used != s.size()) fail("expected an integer, got '" + s + "'");
    return v;
  }

  CharIndex character(const std::string& s, std::int64_t q) {
    std::pair<std::int64_t, CharIndex> p;
    try {
      p = parse_char(s);
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (p.first != q) fail("character modulus " + std::to_string(p.first) + " differs from q");
    return p.second;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_); }
  int line() const { return line_; }

 private:
  std::istringstream in_;
  int line_ = 0;
};

}  // namespace

ZeroCertificate parse_certificate(const std::string& text) {
  CertReader r(text);
  ZeroCertificate c;
  std::string rest;
  r.expect("version", rest);
  if (r.integer(rest) != kCertificateVersion) r.fail("unsupported certificate version " + rest);
  r.expect("q", rest);
  c.q = r.integer(rest);
  if (c.q < 3) r.fail("q must be at least 3");
  r.expect("chi", rest);
  c.chi = r.character(rest, c.q);
  r.expect("chibar", rest);
  c.chi_bar = r.character(rest, c.q);
  r.expect("t0", rest);
  c.t0 = r.real(rest);
  r.expect("t0_requested", rest);
  c.t0_requested = r.real(rest);
  r.expect("h", rest);
  c.h = r.real(rest);
  r.expect("source", rest);
  if (rest == "rumely") c.source = SSource::rumely;
  else if (rest == "trudgian") c.source = SSource::trudgian;
  else r.fail("unknown S source '" + rest + "'");
  r.expect("algorithm", rest);
  if (rest.empty() || has_space(rest)) r.fail("bad algorithm name");
  c.algorithm = rest;
  r.expect("plan", rest);
  c.plan = rest;

  std::string tag;
  bool have_t = false, have_v = false;
  while (r.next(tag, rest)) {
    if (have_v) r.fail("content after the verdict");
    if (tag == "Z") {
      if (have_t) r.fail("Z record after the T record");
      const auto f = r.fields(rest, 2);
      SignChange z{r.real(f[0]), r.real(f[1])};
      if (!(z.lo <= z.hi)) r.fail("sign change with lo > hi");
      c.zeros.push_back(z);
    } else if (tag == "T") {
      if (have_t) r.fail("second T record");
      const auto f = r.fields(rest, 3);
      const double lo = r.real(f[0]), hi = r.real(f[1]);
      if (!(lo <= hi)) r.fail("bracket with lo > hi");
      c.bracket = RealInterval(lo, hi);
      c.count = r.integer(f[2]);
      have_t = true;
    } else if (tag == "E") {
      if (!have_t) r.fail("E record before the T record");
      const auto f = r.fields(rest, 3);
      c.escalations.push_back({r.real(f[0]), f[1], f[2]});
    } else if (tag == "V") {
      if (!have_t) r.fail("verdict before the T record");
      if (rest == "verified") c.verdict = Verdict::verified;
      else if (rest == "failed") c.verdict = Verdict::failed;
      else if (rest == "needs_escalation") r.fail("needs_escalation is not a final verdict");
      else r.fail("unknown verdict '" + rest + "'");
      have_v = true;
    } else {
      r.fail("unknown record '" + tag + "'");
    }
  }
  if (!have_v) throw ParseError("missing verdict", r.line() + 1);
  return c;
}

namespace {

std::string pair_name(std::int64_t q, const CharIndex& chi) {
  std::string s = "q" + std::to_string(q) + "_chi";
  for (auto e : chi.exponents) s += "_" + std::to_string(e);
  return s;
}

}  // namespace

std::string certificate_name(const ZeroCertificate& cert) { return pair_name(cert.q, cert.chi) + ".cert"; }

fs::path emit_certificate(const ZeroCertificate& cert, const fs::path& dir) {
  const std::string text = certificate_text(cert);
  fs::create_directories(dir);
  const fs::path target = dir / certificate_name(cert);
  const fs::path tmp = dir / (certificate_name(cert) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
  return target;
}

ZeroCertificate read_certificate(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_certificate(os.str());
}

bool same_certificate(const ZeroCertificate& a, const ZeroCertificate& b) {
  if (a.q != b.q || a.chi != b.chi || a.chi_bar != b.chi_bar) return false;
  if (!same_double(a.t0, b.t0) || !same_double(a.t0_requested, b.t0_requested) || !same_double(a.h, b.h)) return false;
  if (a.algorithm != b.algorithm || a.plan != b.plan || a.source != b.source) return false;
  if (a.zeros.size() != b.zeros.size() || a.escalations.size() != b.escalations.size()) return false;
  for (std::size_t i = 0; i < a.zeros.size(); ++i)
    if (!same_double(a.zeros[i].lo, b.zeros[i].lo) || !same_double(a.zeros[i].hi, b.zeros[i].hi)) return false;
  for (std::size_t i = 0; i < a.escalations.size(); ++i) {
    const auto &x = a.escalations[i], &y = b.escalations[i];
    if (!same_double(x.t, y.t) || x.method != y.method || x.outcome != y.outcome) return false;
  }
  return same_interval(a.bracket, b.bracket) && a.count == b.count && a.verdict == b.verdict;
}

// ---- scheduling -----------------------------------------------------------

namespace {

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// is rethrown after every thread has stopped.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
  const auto nt = static_cast<std::size_t>(std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(n, 1)))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        next = n;
      }
    }
  };
  if (nt == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nt; ++t) pool.emplace_back(body);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);
}

std::int64_t steps_to(double t, Rational step) {
  return static_cast<std::int64_t>(std::ceil(t * static_cast<double>(step.den) / static_cast<double>(step.num)));
}

std::string smallq_plan(const FftPlan& p, const UpsampleParams& u) {
  std::ostringstream os;
  os << "A=" << p.A.num << '/' << p.A.den << " N=" << p.N << " eta=" << hex(p.eta) << " Bw=" << u.Bw.num << '/'
     << u.Bw.den << " hg=" << hex(u.hg) << " Nterms=" << u.Nterms;
  return os.str();
}

std::string largeq_plan(const LatticeParams& l, Rational step, const UpsampleParams& u) {
  std::ostringstream os;
  os << "step=" << step.num << '/' << step.den << " D=" << l.D << " ncols=" << l.ncols << " M=" << l.M
     << " bits=" << l.bits << " Bw=" << u.Bw.num << '/' << u.Bw.den << " hg=" << hex(u.hg) << " Nterms=" << u.Nterms;
  return os.str();
}

}  // namespace

std::vector<PairTask> conjugate_pairs(const ModulusContext& ctx) {
  std::vector<PairTask> out;
  for (std::size_t i = 0; i < ctx.characters.size(); ++i) {
    const CharIndex& bar = ctx.meta[i].conjugate;
    const auto it = std::find(ctx.characters.begin(), ctx.characters.end(), bar);
    if (it == ctx.characters.end()) throw DomainError("conjugate of a primitive character not found");
    const auto j = static_cast<std::size_t>(it - ctx.characters.begin());
    if (ctx.flat[j] < ctx.flat[i]) continue;
    out.push_back({ctx.group.q(), i, j});
  }
  return out;
}

SampleGrid reflect_extend(const SampleGrid& grid, const SampleGrid& bar, std::int64_t extra) {
  if (grid.first != 0 || bar.first != 0) throw DomainError("reflection needs grids starting at t = 0");
  if (bar.last() < extra) throw DomainError("conjugate grid too short to reflect");
  SampleGrid out = grid;
  out.first = -extra;
  out.samples.clear();
  out.usable.clear();
  out.samples.reserve(grid.size() + static_cast<std::size_t>(extra));
  for (std::int64_t k = -extra; k < 0; ++k) {
    const RealInterval t = RealInterval::ratio(-k * grid.t_step.num, grid.t_step.den);
    out.samples.push_back(exp(-(RealInterval::pi() * t * RealInterval(0.5))) * bar.at_index(-k));
    out.usable.push_back(bar.usable[static_cast<std::size_t>(-k)]);
  }
  out.samples.insert(out.samples.end(), grid.samples.begin(), grid.samples.end());
  out.usable.insert(out.usable.end(), grid.usable.begin(), grid.usable.end());
  return out;
}

VerificationSummary run_verification(const RunConfig& cfg, const std::function<void(const std::string&)>& log) {
  cfg.validate();
  fs::create_directories(cfg.out_dir);
  std::mutex log_mu;
  auto say = [&](const std::string& s) {
    if (!log) return;
    std::lock_guard<std::mutex> lock(log_mu);
    log(s);
  };
  auto done_marker = [&](std::int64_t q, const CharIndex& chi) { return cfg.out_dir / (pair_name(q, chi) + ".done"); };

  VerificationSummary sum;
  std::mutex sum_mu;
  const Rational step{5, 64};
  const std::int64_t below = cfg.certify.upsample.Nterms + 8;  // grid steps kept below t = 0

  auto finish = [&](const ZeroCertificate& cert) {
    emit_certificate(cert, cfg.out_dir);
    const bool ok = cert.verdict == Verdict::verified;
    if (ok) std::ofstream(done_marker(cert.q, cert.chi)) << "verified\n";
    std::lock_guard<std::mutex> lock(sum_mu);
    if (ok) ++sum.verified;
    else sum.failures.push_back(certificate_name(cert));
    say(certificate_name(cert) + " " + to_string(cert.verdict) + " t0=" + std::to_string(cert.t0) +
        " zeros=" + std::to_string(cert.count));
  };

  // Pending pairs per modulus.
  std::vector<ModulusContext> small_ctx, large_ctx;
  std::map<std::int64_t, std::vector<PairTask>> pending;
  for (std::int64_t q = cfg.q_lo; q <= cfg.q_hi; ++q) {
    ModulusContext ctx = ModulusContext::make(q);
    auto pairs = conjugate_pairs(ctx);
    sum.pairs += static_cast<std::int64_t>(pairs.size());
    std::vector<PairTask> todo;
    for (const auto& p : pairs) {
      const CharIndex& chi = ctx.characters[p.chi];
      if (cfg.resume && fs::exists(done_marker(q, chi))) {
        ++sum.skipped;
        continue;
      }
      todo.push_back(p);
    }
    if (todo.empty()) continue;
    pending[q] = todo;
    (cfg.algorithm_for(q) == Algorithm::smallq ? small_ctx : large_ctx).push_back(std::move(ctx));
  }

  // smallq: every pair is independent.
  struct SmallUnit {
    const ModulusContext* ctx;
    PairTask task;
  };
  std::vector<SmallUnit> units;
  for (const auto& ctx : small_ctx)
    for (const auto& t : pending[ctx.group.q()]) units.push_back({&ctx, t});
  parallel_for(units.size(), cfg.workers, [&](std::size_t i) {
    const auto& u = units[i];
    const CharGroup& g = u.ctx->group;
    const std::int64_t q = g.q();
    const double t0 = cfg.height.height(q);
    const double top = t0 + certify_margin(q, t0, cfg.certify);
    const FftPlan plan = FftPlan::for_height(top);
    const std::int64_t k_hi = steps_to(top, step);
    auto grid_for = [&](std::size_t c) {
      return smallq_samples(ThetaCharacter::make(g, u.ctx->characters[c]), plan, -below, k_hi);
    };
    const SampleGrid gc = grid_for(u.task.chi);
    const bool real = u.task.chi == u.task.bar;
    ZeroCertificate cert = real ? certify(g, gc, gc, t0, cfg.certify) : certify(g, gc, grid_for(u.task.bar), t0, cfg.certify);
    cert.plan = smallq_plan(plan, cfg.certify.upsample);
    finish(cert);
  });

  // largeq: ordinates are shared by every modulus, so one lattice per t.
  if (!large_ctx.empty()) {
    std::int64_t k_hi = 0;
    for (const auto& ctx : large_ctx) {
      const std::int64_t q = ctx.group.q();
      const double t0 = cfg.height.height(q);
      k_hi = std::max(k_hi, steps_to(t0 + certify_margin(q, t0, cfg.certify), step));
    }
    k_hi = std::max(k_hi, below);
    LatticeStore store(cfg.cache_dir, cfg.workers);
    const auto grids = sample_range_batch(large_ctx, 0, k_hi, step, store, cfg.lattice);
    sum.lattices_built = store.builds();
    std::vector<std::pair<const ModulusContext*, PairTask>> lu;
    for (const auto& ctx : large_ctx)
      for (const auto& t : pending[ctx.group.q()]) lu.emplace_back(&ctx, t);
    parallel_for(lu.size(), cfg.workers, [&](std::size_t i) {
      const auto& [ctx, task] = lu[i];
      const std::int64_t q = ctx->group.q();
      const auto& gs = grids.at(q);
      const SampleGrid gc = reflect_extend(gs[task.chi], gs[task.bar], below);
      const double t0 = cfg.height.height(q);
      ZeroCertificate cert;
      if (task.chi == task.bar) {
        cert = certify(ctx->group, gc, gc, t0, cfg.certify);
      } else {
        const SampleGrid gb = reflect_extend(gs[task.bar], gs[task.chi], below);
        cert = certify(ctx->group, gc, gb, t0, cfg.certify);
      }
      cert.plan = largeq_plan(cfg.lattice, step, cfg.certify.upsample);
      finish(cert);
    });
  }

  std::sort(sum.failures.begin(), sum.failures.end());
  const fs::path manifest = cfg.out_dir / "failures.txt";
  if (sum.failures.empty()) {
    fs::remove(manifest);
  } else {
    std::ofstream out(manifest, std::ios::trunc);
    for (const auto& f : sum.failures) out << f << '\n';
  }
  return sum;
}

// ---- central point --------------------------------------------------------

std::int64_t CentralPointReport::survivors() const {
  return static_cast<std::int64_t>(
      std::count_if(straddling.begin(), straddling.end(), [](const StraddleRecord& r) { return !r.resolved; }));
}

CentralPointReport check_central(const ModulusContext& ctx, const std::vector<RealInterval>& values, int em_bits) {
  if (values.size() != ctx.characters.size()) throw DomainError("one central value per primitive character expected");
  CentralPointReport rep;
  rep.q = ctx.group.q();
  for (std::size_t i = 0; i < values.size(); ++i) {
    ++rep.characters_checked;
    (ctx.meta[i].parity == 0 ? rep.even : rep.odd) += 1;
    if (!values[i].contains_zero()) continue;
    StraddleRecord rec;
    rec.chi = ctx.characters[i];
    const std::pair<const char*, PrecisionTier> ladder[] = {{"em53", PrecisionTier::hardware()},
                                                             {"em100", PrecisionTier::bigfloat(em_bits)}};
    for (const auto& [method, tier] : ladder) {
      bool ok = false;
      try {
        ok = !lambda_direct(ctx.group, rec.chi, ctx.meta[i], 0.0, tier).contains_zero();
      } catch (const RealnessViolation&) {
        ok = false;
      }
      rec.steps.push_back({0.0, method, ok ? "resolved" : "unresolved"});
      if (ok) {
        rec.resolved = true;
        break;
      }
    }
    rep.straddling.push_back(std::move(rec));
  }
  return rep;
}

namespace {

// Lambda_chi(0) for every primitive character; a realness failure becomes
// the whole line so that the escalation ladder decides.
std::vector<RealInterval> central_values(const ModulusContext& ctx, const HurwitzLattice& lat) {
  std::vector<RealInterval> out;
  if (ctx.characters.empty()) return out;
  const BoxVector l = l_values_at(ctx.group, lat);
  const ComplexBox factor[2] = {lambda_factor(ctx.group.q(), 0, 0.0), lambda_factor(ctx.group.q(), 1, 0.0)};
  for (std::size_t i = 0; i < ctx.characters.size(); ++i) {
    try {
      out.push_back(lambda_from_l(l[static_cast<std::size_t>(ctx.flat[i])], factor[ctx.meta[i].parity], ctx.meta[i].epsilon));
    } catch (const RealnessViolation&) {
      out.push_back(RealInterval::entire());
    }
  }
  return out;
}

}  // namespace

std::vector<CentralPointReport> run_central_sweep(const RunConfig& cfg, const std::function<void(const std::string&)>& log) {
  cfg.validate();
  LatticeStore store(cfg.cache_dir, cfg.workers);
  const auto lat = store.get(0.0, cfg.lattice);
  const auto n = static_cast<std::size_t>(cfg.q_hi - cfg.q_lo + 1);
  std::vector<CentralPointReport> reports(n);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    const ModulusContext ctx = ModulusContext::make(cfg.q_lo + static_cast<std::int64_t>(i));
    reports[i] = check_central(ctx, central_values(ctx, *lat), cfg.certify.em_bits);
  });

  fs::create_directories(cfg.out_dir);
  std::ofstream out(cfg.out_dir / "central.txt", std::ios::trunc);
  std::int64_t survivors = 0, checked = 0;
  for (const auto& r : reports) {
    out << "q " << r.q << " checked " << r.characters_checked << " even " << r.even << " odd " << r.odd
        << " escalated " << r.straddling.size() << " survivors " << r.survivors() << '\n';
    for (const auto& s : r.straddling) {
      out << "S " << serialize_char(r.q, s.chi);
      for (const auto& e : s.steps) out << ' ' << e.method << ':' << e.outcome;
      out << '\n';
    }
    survivors += r.survivors();
    checked += r.characters_checked;
    if (log && !r.straddling.empty())
      log("q=" + std::to_string(r.q) + " escalated " + std::to_string(r.straddling.size()) + ", survivors " +
          std::to_string(r.survivors()));
  }
  out << "total checked " << checked << " survivors " << survivors << '\n';
  if (!out) throw Error("cannot write central.txt");
  return reports;
}

}  // namespace grh
