#include "grh/hurwitz.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

namespace grh {

namespace {

double box_abs_hi(const ComplexBox& z) { return abs(z).hi(); }

BigBox to_big(const ComplexBox& s) { return to_bigfloat(s, working_precision()); }

}  // namespace

ComplexBox em_hurwitz(const ComplexBox& s, const RealInterval& alpha, PrecisionTier tier) {
  const double s_abs = box_abs_hi(s);
  if (tier.is_hardware()) return em_hurwitz(s, alpha, choose_em_params(s_abs, 53));
  PrecisionScope scope(tier.bits);
  return to_hardware(em_hurwitz(to_big(s), to_bigfloat(alpha, tier.bits), choose_em_params(s_abs, tier.bits)));
}

ComplexBox em_hurwitz_rational(const ComplexBox& s, std::int64_t a, std::int64_t q, PrecisionTier tier) {
  const double s_abs = box_abs_hi(s);
  if (tier.is_hardware()) return em_hurwitz(s, RealInterval::ratio(a, q), choose_em_params(s_abs, 53));
  PrecisionScope scope(tier.bits);
  return to_hardware(em_hurwitz(to_big(s), BigInterval::ratio(a, q), choose_em_params(s_abs, tier.bits)));
}

HurwitzLattice build_lattice(double t, LatticeParams params, int workers) {
  if (params.D < 2 || params.ncols < 2 || params.M < 0) throw DomainError("lattice needs D >= 2, Ncols >= 2, M >= 0");
  if (params.bits < 64) throw DomainError("lattice build needs at least 64 bits");
  HurwitzLattice lat;
  lat.t = t;
  lat.params = params;
  const int cols = params.ncols + 1;
  lat.cells.assign(static_cast<std::size_t>(params.D) * static_cast<std::size_t>(cols), ComplexBox());

  std::atomic<int> next{1};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    PrecisionScope scope(params.bits);
    const BigBox s(BigInterval(0.5), BigInterval(t));
    const double s_abs = std::hypot(0.5, t) + cols + 1;
    const EMParams em = choose_em_params(s_abs, params.bits, params.M);
    for (int r = next++; r <= params.D; r = next++) {
      try {
        const auto row = em_hurwitz_columns(s, BigInterval::ratio(r, params.D), params.M, cols, em);
        for (int c = 0; c < cols; ++c)
          lat.cells[static_cast<std::size_t>(r - 1) * cols + static_cast<std::size_t>(c)] = to_hardware(row[static_cast<std::size_t>(c)]);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  const int n = std::max(1, workers);
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return lat;
}

int nearest_row(std::int64_t a, std::int64_t q, int D) {
  // floor(a D / q + 1/2): ties go up.
  const auto r = static_cast<std::int64_t>((2 * static_cast<__int128>(a) * D + q) / (2 * static_cast<__int128>(q)));
  return static_cast<int>(std::clamp<std::int64_t>(r, 1, D));
}

namespace {

struct TaylorParts {
  ComplexBox sum;
  double tail = 0;
};

TaylorParts taylor_parts(const HurwitzLattice& lat, std::int64_t a, std::int64_t q) {
  using I = RealInterval;
  const auto& p = lat.params;
  const int r = nearest_row(a, q, p.D);
  const I alpha = I::ratio(r, p.D);
  const I delta = I::ratio(a, q) - alpha;
  const I minus_delta = -delta;
  const ComplexBox s(I(0.5), I(lat.t));

  TaylorParts out;
  out.sum = lat.cell(r, 0);
  ComplexBox coef(I(1), I(0));
  for (int k = 1; k <= p.ncols; ++k) {
    coef = coef * (s + ComplexBox(I(k - 1))) * minus_delta / I(k);
    out.sum += coef * lat.cell(r, k);
  }
  if (delta.is_point() && delta.contains_zero()) return out;

  // Geometric majorant of the omitted terms k >= k0, using
  // |zeta_M(s+k, alpha)| <= sum_{n>M} (n+alpha)^{-1/2-k} and the ratio
  // |delta| |s+k| / ((k+1)(M+1+alpha)) between consecutive terms.
  const int k0 = p.ncols + 1;
  const I coef0 = abs(coef * (s + ComplexBox(I(p.ncols))) * minus_delta / I(k0));
  const I base = I(static_cast<std::int64_t>(p.M + 1)) + alpha;
  const I x = I(0.5) + I(k0);
  const I z = exp(-x * log(base)) + exp((I(1) - x) * log(base)) / (x - I(1));
  const I s_abs = max(abs(s), I(1));
  const I rho = abs(delta) * (s_abs + I(k0)) / (I(k0 + 1) * base);
  if (!(rho.hi() < 1.0)) throw RadiusViolation("Taylor shift ratio is not below 1");
  out.tail = (coef0 * z / (I(1) - rho)).hi();
  return out;
}

}  // namespace

double taylor_tail_bound(const HurwitzLattice& lat, std::int64_t a, std::int64_t q) {
  return taylor_parts(lat, a, q).tail;
}

ComplexBox eval_taylor_zeta_m(const HurwitzLattice& lat, std::int64_t a, std::int64_t q) {
  const TaylorParts parts = taylor_parts(lat, a, q);
  return parts.tail == 0 ? parts.sum : inflate(parts.sum, parts.tail);
}

ComplexBox eval_taylor(const HurwitzLattice& lat, std::int64_t a, std::int64_t q) {
  using I = RealInterval;
  if (a <= 0 || a > q) throw DomainError("eval_taylor needs 0 < a <= q");
  ComplexBox sum = eval_taylor_zeta_m(lat, a, q);
  const I x = I::ratio(a, q);
  const ComplexBox minus_s(I(-0.5), I(-lat.t));
  for (int n = 0; n <= lat.params.M; ++n) {
    const I l = log(I(n) + x);
    sum += exp(ComplexBox(minus_s.re() * l, minus_s.im() * l));
  }
  return sum;
}

// ---- persistence -------------------------------------------------------------

void save_lattice(const HurwitzLattice& lat, const std::filesystem::path& file) {
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream os(tmp);
    if (!os) throw Error("cannot write lattice file " + tmp);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", lat.t);
    os << buf << ' ' << lat.params.D << ' ' << lat.params.ncols << ' ' << lat.params.M << ' ' << lat.params.bits << '\n';
    for (const auto& z : lat.cells)
      os << hex(z.re().lo()) << ' ' << hex(z.re().hi()) << ' ' << hex(z.im().lo()) << ' ' << hex(z.im().hi()) << '\n';
    if (!os) throw Error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

HurwitzLattice load_lattice(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw Error("cannot open lattice file " + file.string());
  HurwitzLattice lat;
  std::string line;
  int lineno = 1;
  if (!std::getline(is, line)) throw ParseError("missing header", lineno);
  {
    std::istringstream hs(line);
    std::string t;
    if (!(hs >> t >> lat.params.D >> lat.params.ncols >> lat.params.M >> lat.params.bits))
      throw ParseError("header must be 't D Ncols M bits'", lineno);
    std::size_t used = 0;
    lat.t = std::stod(t, &used);
    if (used != t.size()) throw ParseError("bad ordinate", lineno);
    std::string extra;
    if (hs >> extra) throw ParseError("trailing text in header", lineno);
  }
  if (lat.params.D < 2 || lat.params.ncols < 2 || lat.params.M < 0) throw ParseError("bad lattice dimensions", lineno);
  const std::size_t count = static_cast<std::size_t>(lat.params.D) * static_cast<std::size_t>(lat.params.ncols + 1);
  lat.cells.reserve(count);
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string a, b, c, d, extra;
    if (!(ls >> a >> b >> c >> d) || (ls >> extra)) throw ParseError("cell needs four hex endpoints", lineno);
    try {
      lat.cells.emplace_back(parse_real_interval(a, b), parse_real_interval(c, d));
    } catch (const Error& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  if (lat.cells.size() != count) throw ParseError("expected " + std::to_string(count) + " cells", lineno);
  return lat;
}

std::filesystem::path LatticeStore::file_for(double t, const LatticeParams& p) const {
  std::ostringstream os;
  os << "lattice_" << hex(t) << "_D" << p.D << "_N" << p.ncols << "_M" << p.M << "_b" << p.bits << ".txt";
  return dir_ / os.str();
}

std::shared_ptr<const HurwitzLattice> LatticeStore::get(double t, const LatticeParams& p) {
  std::lock_guard lock(mu_);
  std::ostringstream key;
  key << p.D << ':' << p.ncols << ':' << p.M << ':' << p.bits;
  const auto k = std::make_pair(t, key.str());
  if (auto it = mem_.find(k); it != mem_.end()) return it->second;
  std::shared_ptr<const HurwitzLattice> lat;
  if (!dir_.empty()) {
    const auto f = file_for(t, p);
    if (std::filesystem::exists(f)) {
      auto loaded = load_lattice(f);
      if (loaded.t == t && loaded.params == p) lat = std::make_shared<const HurwitzLattice>(std::move(loaded));
    }
  }
  if (!lat) {
    lat = std::make_shared<const HurwitzLattice>(build_lattice(t, p, workers_));
    ++builds_;
    if (!dir_.empty()) {
      std::filesystem::create_directories(dir_);
      save_lattice(*lat, file_for(t, p));
    }
  }
  mem_.emplace(k, lat);
  return lat;
}

}  // namespace grh
