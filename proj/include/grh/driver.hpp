#pragma once

// Orchestration: run configuration, certificate files, the verification run
// over a range of moduli and the central-point sweep.

#include "grh/hurwitz.hpp"
#include "grh/sampler_largeq.hpp"
#include "grh/turing.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace grh {

enum class Algorithm { automatic, largeq, smallq };
std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

/// Height as a function of q: a constant, or min(cap, scale/q) which keeps
/// q t0 roughly constant.
struct HeightPolicy {
  enum class Kind { constant, scaled };
  Kind kind = Kind::scaled;
  double value = 0;  // constant height
  double cap = 1000;
  double scale = 1e5;

  double height(std::int64_t q) const;
  static HeightPolicy constant(double t0) { return {Kind::constant, t0, 1000, 1e5}; }
};

struct RunConfig {
  std::int64_t q_lo = 3;
  std::int64_t q_hi = 3;
  HeightPolicy height;
  Algorithm algorithm = Algorithm::automatic;
  std::int64_t crossover = 1000;  // automatic picks smallq for q <= crossover
  LatticeParams lattice;          // bits here is the lattice build precision
  CertifyOptions certify;
  int workers = 1;
  std::filesystem::path out_dir = "certificates";
  std::filesystem::path cache_dir;  // empty: lattices are kept in memory only
  bool resume = false;

  /// Throws ConfigError (QTooSmall for q_lo < 3).
  void validate() const;
  Algorithm algorithm_for(std::int64_t q) const;
};

/// Applies `key = value` lines (blank lines and # comments allowed). Keys:
/// q_lo q_hi height (a number or "scaled") height_cap height_scale algo
/// crossover bits lattice_D lattice_ncols lattice_M em_bits workers out
/// cache_dir resume. Unknown keys and bad values throw ParseError.
void apply_config(RunConfig& cfg, std::istream& in);
void apply_config_file(RunConfig& cfg, const std::filesystem::path& file);

// ---------------------------------------------------------------------------
// Certificate files

inline constexpr int kCertificateVersion = 1;

/// Text form: header lines then Z, T, E records and a final V line. All
/// reals are hex floats, so the text is lossless and deterministic. Throws
/// DomainError for a needs_escalation verdict, which never reaches disk.
std::string certificate_text(const ZeroCertificate& cert);
/// Inverse of certificate_text; throws ParseError with the line number.
ZeroCertificate parse_certificate(const std::string& text);

/// File name for the pair, keyed by the member with the smaller flat index.
std::string certificate_name(const ZeroCertificate& cert);
/// Writes atomically (temp file then rename) and returns the path.
std::filesystem::path emit_certificate(const ZeroCertificate& cert, const std::filesystem::path& dir);
ZeroCertificate read_certificate(const std::filesystem::path& file);

/// Field-by-field equality, intervals compared endpoint by endpoint.
bool same_certificate(const ZeroCertificate& a, const ZeroCertificate& b);

// ---------------------------------------------------------------------------
// Verification

struct PairTask {
  std::int64_t q = 0;
  std::size_t chi = 0;  // index into ModulusContext::characters
  std::size_t bar = 0;
};

/// One task per conjugate pair, chi the member with the smaller flat index.
std::vector<PairTask> conjugate_pairs(const ModulusContext& ctx);

/// Extends a largeq grid starting at t = 0 to negative ordinates through
/// Lambda_chi(-t) = e^{-pi t/2} Lambda_chibar(t). `bar` must start at 0
/// too and cover `extra` steps.
SampleGrid reflect_extend(const SampleGrid& grid, const SampleGrid& bar, std::int64_t extra);

struct VerificationSummary {
  std::int64_t pairs = 0;
  std::int64_t verified = 0;
  std::int64_t skipped = 0;  // already complete under resume
  std::vector<std::string> failures;  // certificate names
  std::int64_t lattices_built = 0;
  int exit_status() const { return failures.empty() ? 0 : 1; }
};

/// Certifies every primitive conjugate pair with q in range, writing one
/// certificate and one .done marker per pair. Failed pairs are listed in
/// failures.txt in the output directory. `log` receives one line per pair.
VerificationSummary run_verification(const RunConfig& cfg, const std::function<void(const std::string&)>& log = {});

// ---------------------------------------------------------------------------
// Central point

struct StraddleRecord {
  CharIndex chi;
  std::vector<Escalation> steps;  // t = 0; em53 then em100
  bool resolved = false;
};

struct CentralPointReport {
  std::int64_t q = 0;
  std::int64_t characters_checked = 0;
  std::int64_t even = 0;
  std::int64_t odd = 0;
  std::vector<StraddleRecord> straddling;  // every character that needed escalation

  std::int64_t survivors() const;
};

/// Checks Lambda_chi(0) for every primitive character of ctx given its
/// lattice values; straddlers go to Euler-Maclaurin in hardware then at
/// em_bits.
CentralPointReport check_central(const ModulusContext& ctx, const std::vector<RealInterval>& values, int em_bits = 100);

/// Sweep over q in [q_lo, q_hi] from a single lattice at t = 0. Writes
/// central.txt in the output directory.
std::vector<CentralPointReport> run_central_sweep(const RunConfig& cfg,
                                                  const std::function<void(const std::string&)>& log = {});

}  // namespace grh
