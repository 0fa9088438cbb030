#include "grh/turing.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace grh {

namespace {

using I = RealInterval;

int sign_of(const I& v) { return v.contains_zero() ? 0 : (v.is_positive() ? 1 : -1); }

// Lambda values of one character at grid and refined ordinates.
struct Track {
  const CharGroup* g = nullptr;
  const SampleGrid* grid = nullptr;
  std::map<double, I> pts;

  void load(double t_end) {
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const double t = grid->t_at(i);
      if (t < 0 || t > t_end) continue;
      pts[t] = grid->usable[i] ? grid->samples[i] : I::entire();
    }
  }

  void put(double t, const I& v) {
    auto it = pts.find(t);
    if (it == pts.end()) {
      pts.emplace(t, v);
    } else if (it->second.intersects(v)) {
      it->second = intersect(it->second, v);
    } else {
      throw CertificationFailed("two enclosures of the same value are disjoint");
    }
  }

  // Sign changes between consecutive determinate points in [lo, hi].
  std::vector<SignChange> changes(double lo, double hi) const {
    std::vector<SignChange> out;
    double prev_t = 0;
    int prev = 0;
    for (auto it = pts.lower_bound(lo); it != pts.end() && it->first <= hi; ++it) {
      const int s = sign_of(it->second);
      if (s == 0) continue;
      if (prev != 0 && s != prev) out.push_back({prev_t, it->first});
      prev = s;
      prev_t = it->first;
    }
    return out;
  }

  bool determinate(double t) const {
    auto it = pts.find(t);
    return it != pts.end() && sign_of(it->second) != 0;
  }
};

struct Region {
  double lo, hi;
};

// Runs of indeterminate points and same-sign local minima of |Lambda|,
// each as the open span between determinate neighbours.
std::vector<Region> suspects(const Track& tr, double lo, double hi) {
  std::vector<Region> out;
  std::vector<std::pair<double, I>> det;
  bool gap = false;
  for (auto it = tr.pts.lower_bound(lo); it != tr.pts.end() && it->first <= hi; ++it) {
    if (sign_of(it->second) == 0) {
      gap = true;
      continue;
    }
    if (gap && !det.empty()) out.push_back({det.back().first, it->first});
    gap = false;
    det.emplace_back(it->first, it->second);
  }
  for (std::size_t i = 1; i + 1 < det.size(); ++i) {
    const I& a = det[i - 1].second;
    const I& b = det[i].second;
    const I& c = det[i + 1].second;
    if (sign_of(a) != sign_of(b) || sign_of(b) != sign_of(c)) continue;
    if (b.mag() < a.mig() && b.mag() <= c.mig()) out.push_back({det[i - 1].first, det[i + 1].first});
  }
  std::sort(out.begin(), out.end(), [](const Region& x, const Region& y) { return x.lo < y.lo; });
  return out;
}

struct Level {
  std::string method;
  int factor;  // upsample factor; 0 for direct evaluation
  PrecisionTier tier;
};

std::vector<Level> ladder(int em_bits) {
  return {{"upsample8", 8, {}},
          {"upsample32", 32, {}},
          {"upsample128", 128, {}},
          {"upsample512", 512, {}},
          {"em53", 0, PrecisionTier::hardware()},
          {"em" + std::to_string(em_bits), 0, PrecisionTier::bigfloat(em_bits)}};
}

// Refines one region at one level; returns the escalation outcome.
std::string refine(Track& tr, const Region& r, const Level& lv, const UpsampleParams& up) {
  const auto before = tr.changes(r.lo, r.hi).size();
  const double step = tr.grid->t_step.value();
  try {
    if (lv.factor > 0) {
      const double fine = step / lv.factor;
      const auto j_lo = static_cast<std::int64_t>(std::floor(r.lo / fine)) + 1;
      const auto j_hi = static_cast<std::int64_t>(std::ceil(r.hi / fine)) - 1;
      for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        const double t = static_cast<double>(j) * fine;
        if (tr.determinate(t)) continue;
        tr.put(t, upsample_at(*tr.grid, t, up));
      }
    } else {
      std::vector<double> todo;
      for (auto it = tr.pts.upper_bound(r.lo); it != tr.pts.end() && it->first < r.hi; ++it)
        if (sign_of(it->second) == 0) todo.push_back(it->first);
      for (double t : todo) tr.put(t, lambda_direct(*tr.g, tr.grid->character, tr.grid->meta, t, lv.tier));
    }
  } catch (const DomainError&) {
    return "unresolved";
  }
  const auto after = tr.changes(r.lo, r.hi).size();
  bool clean = true;
  for (auto it = tr.pts.upper_bound(r.lo); it != tr.pts.end() && it->first < r.hi; ++it)
    if (sign_of(it->second) == 0) clean = false;
  if (after > before) return "pair";
  return clean ? "resolved" : "unresolved";
}

// First grid ordinate >= t where every track is determinate.
double snap(const std::vector<Track*>& tracks, double t) {
  const SampleGrid& grid = *tracks.front()->grid;
  const double step = grid.t_step.value();
  for (auto k = static_cast<std::int64_t>(std::ceil(t / step)); k <= grid.last(); ++k) {
    const double tk = static_cast<double>(k) * step;
    bool ok = true;
    for (const Track* tr : tracks) ok = ok && tr->determinate(tk);
    if (ok) return tk;
  }
  throw CertificationFailed("grid too short for the Turing window");
}

}  // namespace

double certify_margin(std::int64_t q, double t0, const CertifyOptions& opt) {
  const double t = std::max(t0, 50.5);
  const double h = opt.h > 0 ? opt.h : turing_h(q, t);
  return (t - t0) + h * (1 + 0.5 * opt.max_shifts) + 2.0 + opt.upsample.Nterms * opt.upsample.spacing().value();
}

ZeroCertificate certify(const CharGroup& g, const SampleGrid& grid, const SampleGrid& grid_bar, double t0,
                        const CertifyOptions& opt) {
  ZeroCertificate cert;
  cert.q = g.q();
  cert.chi = grid.character;
  cert.chi_bar = grid_bar.character;
  cert.t0_requested = t0;
  cert.algorithm = grid.algorithm;
  const bool real = grid.character == grid_bar.character;
  const int a = grid.meta.parity;

  const double t_base = std::max(t0, 50.5);
  cert.h = opt.h > 0 ? opt.h : turing_h(g.q(), t_base);
  cert.source = default_source(g.q(), t_base);
  const double up_span = opt.upsample.Nterms * opt.upsample.spacing().value();
  const double t_end = std::min(grid.t_at(grid.size() - 1), grid_bar.t_at(grid_bar.size() - 1)) - up_span;

  Track tc{&g, &grid, {}}, tb{&g, &grid_bar, {}};
  tc.load(t_end);
  if (!real) tb.load(t_end);
  std::vector<Track*> tracks = {&tc};
  if (!real) tracks.push_back(&tb);

  const auto levels = ladder(opt.em_bits);

  // Lambda(0) must have a sign; it is shared by the pair.
  for (const Level& lv : {levels[4], levels[5]}) {
    if (tc.determinate(0.0)) break;
    tc.put(0.0, lambda_direct(g, grid.character, grid.meta, 0.0, lv.tier));
    cert.escalations.push_back({0.0, lv.method, tc.determinate(0.0) ? "resolved" : "unresolved"});
  }
  if (!real && !tb.determinate(0.0) && tc.determinate(0.0)) {
    // Lambda_chibar(0) = Lambda_chi(0).
    tb.put(0.0, tc.pts.at(0.0));
  }

  auto escalate = [&](const Level& lv, bool log_all) {
    for (Track* tr : tracks) {
      for (const Region& r : suspects(*tr, 0.0, t_end)) {
        const std::string outcome = refine(*tr, r, lv, opt.upsample);
        if (log_all || outcome != "resolved") {
          const double t = tr == &tb ? -0.5 * (r.lo + r.hi) : 0.5 * (r.lo + r.hi);
          cert.escalations.push_back({t, lv.method, outcome});
        }
      }
    }
  };

  auto attempt = [&](double t_req) -> bool {
    TuringWindow w;
    w.t0 = snap(tracks, t_req);
    w.h = snap(tracks, w.t0 + cert.h) - w.t0;
    if (w.t0 + w.h > t_end) throw CertificationFailed("grid too short for the Turing window");
    const auto zc = tc.changes(0.0, w.t0);
    const auto zb = real ? zc : tb.changes(0.0, w.t0);
    // Narrow the window's sign changes; their widths enter the bracket.
    for (Track* tr : tracks)
      for (const auto& c : tr->changes(w.t0, w.t0 + w.h)) refine(*tr, {c.lo, c.hi}, levels[0], opt.upsample);
    const auto wc = tc.changes(w.t0, w.t0 + w.h);
    const auto wb = real ? wc : tb.changes(w.t0, w.t0 + w.h);
    cert.t0 = w.t0;
    cert.h = w.h;
    cert.bracket = turing_bracket(g.q(), a, w, wc, wb, cert.source);
    cert.count = static_cast<std::int64_t>(zc.size() + zb.size());
    cert.zeros.clear();
    for (const auto& z : zc) cert.zeros.push_back(z);
    for (const auto& z : zb) cert.zeros.push_back({-z.hi, -z.lo});
    std::sort(cert.zeros.begin(), cert.zeros.end(), [](const SignChange& x, const SignChange& y) { return x.lo < y.lo; });
    return bracketed_integer(cert.bracket) == cert.count;
  };

  try {
    if (!tc.determinate(0.0)) throw CertificationFailed("sign of Lambda(0) undetermined");
    if (opt.proactive) escalate(levels[0], false);
    bool ok = attempt(t_base);
    for (std::size_t i = 0; !ok && i < levels.size(); ++i) {
      escalate(levels[i], true);
      ok = attempt(t_base);
    }
    for (int s = 1; !ok && s <= opt.max_shifts; ++s) {
      const double t_req = t_base + 0.5 * s * cert.h;
      ok = attempt(t_req);
      cert.escalations.push_back({t_req, "shift", ok ? "resolved" : "unresolved"});
    }
    cert.verdict = ok ? Verdict::verified : Verdict::failed;
  } catch (const CertificationFailed&) {
    cert.verdict = Verdict::failed;
  }
  return cert;
}

}  // namespace grh
