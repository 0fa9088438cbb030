#pragma once

// Turing's method for a conjugate pair (chi, chibar). With the window
// [t0, t0 + h] and N_chi(t0) the number of zeros with |Im| <= t0,
//   N_chi(t0) = (1/h pi) [ ((2 h t0 + h^2)/2) log(q/pi) + 2 int Im log Gamma((1/2 + a + it)/2) dt ]
//             - (1/h) (int Ntilde_chi + int Ntilde_chibar) + (1/h) (int S_chi + int S_chibar),
// each integral over the window. Ntilde counts zeros in [t0, t). The S
// integrals are bounded by Rumely's or Trudgian's constants.

#include "grh/lfunction.hpp"
#include "grh/upsample.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace grh {

struct TuringWindow {
  double t0 = 0;
  double h = 8;
};

enum class SSource { rumely, trudgian };

struct SBound {
  double c1 = 0;
  double c2 = 0;
  SSource source = SSource::rumely;

  /// c1 + c2 log(q (t0 + h) / 2 pi)
  RealInterval value(std::int64_t q, const TuringWindow& w) const;
};

/// Rumely: 1.8397 + 0.1242 log(...); Trudgian: 2.17618 + 0.0679955 log(...).
SBound s_constants(SSource source);
/// Rumely while q t0 < 10^6, Trudgian above.
SSource default_source(std::int64_t q, double t0);
/// Bound on |int S_chi| over the window. Throws HypothesisViolated unless t0 > 50.
RealInterval s_integral_bound(std::int64_t q, const TuringWindow& w, SSource source);

/// int_{t0}^{t0+h} Im log Gamma((1/2 + a + it)/2) dt by the midpoint rule with
/// |f''| <= (1/4)(1/|z|^2 + min(2/(1/2 + a), pi/t)) at t = t0.
RealInterval log_gamma_integral(int parity, const TuringWindow& w, int subdivisions = 64);

/// (1/h pi)[((2 h t0 + h^2)/2) log(q/pi) + 2 int Im log Gamma]. Throws
/// QuadratureNotTight when wider than 0.25.
RealInterval phi_integral(std::int64_t q, int parity, const TuringWindow& w, int subdivisions = 64);

/// A sign change of Lambda located in [lo, hi]; negative ordinates stand for
/// zeros of the conjugate character.
struct SignChange {
  double lo = 0;
  double hi = 0;
  friend bool operator==(const SignChange&, const SignChange&) = default;
};

/// int Ntilde over the window from located sign changes: a change in [a, b]
/// contributes [t0 + h - b, t0 + h - a]. Changes outside the window are
/// ignored; one straddling an end point throws DomainError. Missed zeros
/// only make the true integral larger.
RealInterval zero_count_integral(const std::vector<SignChange>& changes, const TuringWindow& w);

/// Smallest h (a multiple of the grid step, at least 8) with 4 S/h <= 0.8,
/// so that the final bracket is narrower than one.
double turing_h(std::int64_t q, double t0);

/// The bracket for N_chi(t0) from located changes in the window for chi
/// and chibar (both with positive ordinates).
RealInterval turing_bracket(std::int64_t q, int parity, const TuringWindow& w, const std::vector<SignChange>& window_chi,
                            const std::vector<SignChange>& window_bar, SSource source);

/// The single integer inside `bracket`, or -1 when there are none or several.
std::int64_t bracketed_integer(const RealInterval& bracket);

// ---------------------------------------------------------------------------
// Certification of one conjugate pair.

enum class Verdict { verified, failed, needs_escalation };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct Escalation {
  double t = 0;
  std::string method;   // upsample8 .. upsample512, em53, em100, shift
  std::string outcome;  // resolved, pair, unresolved, none
  friend bool operator==(const Escalation&, const Escalation&) = default;
};

struct ZeroCertificate {
  std::int64_t q = 0;
  CharIndex chi;
  CharIndex chi_bar;
  double t0_requested = 0;
  double t0 = 0;  // height actually certified
  double h = 0;
  std::string algorithm;
  std::string plan;
  SSource source = SSource::rumely;
  std::vector<SignChange> zeros;  // chi on [0, t0], chibar mapped to [-t0, 0)
  RealInterval bracket;
  std::int64_t count = 0;  // located zeros
  Verdict verdict = Verdict::needs_escalation;
  std::vector<Escalation> escalations;
};

struct CertifyOptions {
  UpsampleParams upsample;
  double h = 0;         // 0: turing_h
  int max_shifts = 3;   // window shifts by h/2 after the ladder is exhausted
  bool proactive = true;  // look for hidden pairs at local minima before the first bracket
  int em_bits = 100;
};

/// Extra height the grids must cover beyond t0 for certify.
double certify_margin(std::int64_t q, double t0, const CertifyOptions& opt = {});

/// Certifies the pair from grids covering [-Nterms step, t0 + certify_margin].
/// For a real character pass the same grid twice. t0 is raised above 50 if
/// needed. Never throws CertificationFailed: failure is the verdict.
ZeroCertificate certify(const CharGroup& g, const SampleGrid& grid, const SampleGrid& grid_bar, double t0,
                        const CertifyOptions& opt = {});

}  // namespace grh
