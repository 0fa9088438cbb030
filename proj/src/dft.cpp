#include "grh/dft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

// Power-of-two transforms run on floating midpoints with an a-priori
// rounding bound instead of rectangle arithmetic: rotating a rectangle and
// re-boxing it widens it by up to sqrt(2) per butterfly stage, which
// compounds badly over log N stages.
//
// Error model. For a vector v with computed midpoints m we track one number
// err2 >= ||v - m||_2. A radix-2 transform of length M = 2^L with twiddles
// accurate to mu satisfies, per butterfly output,
//   |computed - exact| <= theta0 (|a| + |b|),
//   theta0 = mu + sqrt2 g2 (1 + mu) + u (1 + mu)(1 + sqrt2 g2),
// with u = 2^-53 and g2 = 2u / (1 - 2u). Summing the stage errors through
// the (sqrt 2)-scaled unitary stages gives
//   ||FFT_fl(m) - FFT(m)||_2 <= ((1 + sqrt2 theta0)^L - 1) sqrt(M) ||m||_2.
// Input radii are not pushed through that bound: for independent input
// radii rho_k the exact transform moves every output by at most sum rho_k.

namespace grh {

namespace {

constexpr int kTwiddleBits = 80;
constexpr double kU = 0x1p-53;
constexpr int kKernelBits = 96;

thread_local std::uint64_t g_mults = 0;

struct Cx {
  double re = 0, im = 0;
};
inline Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
inline Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
inline Cx operator*(Cx a, Cx b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
inline Cx conj(Cx a) { return {a.re, -a.im}; }

using RI = RealInterval;

ComplexBox zero_box() { return ComplexBox(RI(0), RI(0)); }

std::int64_t sqmod(std::int64_t n, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(n) * n) % m);
}

// e(+k/N) narrowed from the big-float tier.
ComplexBox unit_root(std::int64_t k, std::int64_t n) {
  PrecisionScope scope(kTwiddleBits);
  return to_hardware(root_of_unity<BigFloat>(k, n));
}

// Midpoint of a box and an upper bound on the distance from it to any point
// of the box.
Cx box_mid(const ComplexBox& z, double& err) {
  const Cx m{z.re().mid(), z.im().mid()};
  err = sqrt(sqr(RI(z.re().rad())) + sqr(RI(z.im().rad()))).hi();
  return m;
}

RI norm2(const std::vector<Cx>& v) {
  RI s(0);
  for (const Cx& z : v) s += sqr(RI(z.re)) + sqr(RI(z.im));
  return sqrt(s);
}

double max_abs(const std::vector<Cx>& v) {
  double r = 0;
  for (const Cx& z : v) r = std::max(r, sqrt(sqr(RI(z.re)) + sqr(RI(z.im))).hi());
  return r;
}

RI sqrt2_g2() { return sqrt(RI(2)) * (RI(2) * RI(kU)) / (RI(1) - RI(2) * RI(kU)); }

struct Twiddles {
  std::vector<Cx> w;  // e(-k/N), k < N/2
  double mu = 0;      // max |w_k - exact|
};

Twiddles make_twiddles(std::size_t n) {
  Twiddles t;
  t.w.resize(n / 2);
  auto put = [&](std::size_t k, const ComplexBox& z) {
    double e = 0;
    t.w[k] = box_mid(z, e);
    t.mu = std::max(t.mu, e);
  };
  if (n < 8) {
    for (std::size_t k = 0; k < n / 2; ++k) put(k, unit_root(-static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)));
    return t;
  }
  // First octant directly; the rest by exact symmetries of cos and sin.
  const std::size_t oct = n / 8;
  std::vector<RI> c(oct + 1), s(oct + 1);
  for (std::size_t k = 0; k <= oct; ++k) {
    const ComplexBox z = unit_root(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n));
    c[k] = z.re();
    s[k] = z.im();
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    RI cv, sv;
    if (k <= oct) {
      cv = c[k];
      sv = s[k];
    } else if (k <= 2 * oct) {
      cv = s[2 * oct - k];
      sv = c[2 * oct - k];
    } else if (k <= 3 * oct) {
      cv = -s[k - 2 * oct];
      sv = c[k - 2 * oct];
    } else {
      cv = -c[4 * oct - k];
      sv = s[4 * oct - k];
    }
    put(k, ComplexBox(cv, -sv));
  }
  return t;
}

std::shared_ptr<const Twiddles> twiddles(std::size_t n) {
  static std::map<std::size_t, std::shared_ptr<const Twiddles>> cache;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto t = std::make_shared<const Twiddles>(make_twiddles(n));
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(t)).first->second;
}

struct MidVec {
  std::vector<Cx> m;
  double err2 = 0;  // >= ||exact - m||_2
};

// Absolute slack for gradual underflow, which the relative model ignores.
double underflow_pad(std::size_t n) { return std::ldexp(static_cast<double>(n) + 1, -1000); }

void fft_inplace(MidVec& v, Direction dir) {
  const std::size_t n = v.m.size();
  if (n <= 1) return;
  const auto tw = twiddles(n);
  const RI in_norm = norm2(v.m);
  auto& a = v.m;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  int levels = 0;
  for (std::size_t len = 2; len <= n; len <<= 1, ++levels) {
    const std::size_t half = len / 2, step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const Cx w = dir == Direction::forward ? tw->w[j * step] : conj(tw->w[j * step]);
        const Cx t = a[i + j + half] * w;
        const Cx u = a[i + j];
        a[i + j] = u + t;
        a[i + j + half] = u - t;
      }
    }
    g_mults += n / 2;
  }
  const RI mu(tw->mu);
  const RI g = sqrt2_g2();
  const RI theta0 = mu + g * (RI(1) + mu) + RI(kU) * (RI(1) + mu) * (RI(1) + g);
  const RI growth = pow(RI(1) + sqrt(RI(2)) * theta0, RI(levels)) - RI(1);
  const RI rootn = sqrt(RI(static_cast<std::int64_t>(n)));
  const RI e = rootn * RI(v.err2) + growth * rootn * in_norm + RI(underflow_pad(n));
  v.err2 = e.hi();
  for (const Cx& z : a)
    if (!std::isfinite(z.re) || !std::isfinite(z.im)) throw DomainError("transform overflow");
}

// v <- d * v for a diagonal d known to within inf_err componentwise and
// l2_err in the l2 norm.
void mul_diag(MidVec& v, const std::vector<Cx>& d, double d_max, double inf_err, double l2_err) {
  const RI mnorm = norm2(v.m);
  const double mmax = max_abs(v.m);
  for (std::size_t k = 0; k < v.m.size(); ++k) v.m[k] = v.m[k] * d[k];
  const RI coeff = std::min((RI(inf_err) * mnorm).hi(), (RI(l2_err) * RI(mmax)).hi());
  const RI e = (RI(d_max) + RI(inf_err)) * RI(v.err2) + RI(coeff) + sqrt2_g2() * RI(d_max) * mnorm +
               RI(underflow_pad(v.m.size()));
  v.err2 = e.hi();
  g_mults += v.m.size();
}

struct Split {
  MidVec v;
  double rho_sum = 0;  // sum of input radii
};

Split split_boxes(const BoxVector& x, std::size_t padded) {
  Split s;
  s.v.m.assign(padded, Cx{});
  RI rho(0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    double e = 0;
    s.v.m[k] = box_mid(x[k], e);
    rho += RI(e);
  }
  s.rho_sum = rho.hi();
  return s;
}

BoxVector join_boxes(const MidVec& v, std::size_t n, double extra) {
  const double r = (RI(v.err2) + RI(extra)).hi();
  BoxVector out(n);
  for (std::size_t k = 0; k < n; ++k)
    out[k] = ComplexBox(inflate(RI(v.m[k].re), r), inflate(RI(v.m[k].im), r));
  return out;
}

struct BluesteinPlan {
  std::size_t m = 0;       // convolution length
  std::vector<Cx> chirp;   // e(-n^2 / 2N), n < N
  double chirp_err = 0;    // componentwise
  std::vector<Cx> kernel;  // forward FFT of the wrapped conjugate chirp
  double kernel_max = 0;
  double kernel_err = 0;   // componentwise
  double kernel_l2 = 0;    // l2
  BoxVector chirp_boxes;   // the same data as rectangles
  BoxVector kernel_boxes;
};

// In-place forward radix-2 transform in big-float rectangle arithmetic.
void big_fft_forward(std::vector<BigBox>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<BigBox> w(half);
    for (std::size_t j = 0; j < half; ++j)
      w[j] = root_of_unity<BigFloat>(-static_cast<std::int64_t>(j), static_cast<std::int64_t>(len));
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const BigBox t = a[i + j + half] * w[j];
        const BigBox u = a[i + j];
        a[i + j] = u + t;
        a[i + j + half] = u - t;
      }
    }
  }
}

// Rectangles are tighter than the midpoint bound for short transforms.
constexpr std::size_t kRectMax = 128;

// e(-j/len) as rectangles, j < len/2, for power-of-two len <= kRectMax.
const BoxVector& box_twiddles(std::size_t len) {
  static std::once_flag once;
  static std::vector<BoxVector> tables;
  std::call_once(once, [] {
    for (std::size_t l = 1; l <= kRectMax; l <<= 1) {
      BoxVector w(l / 2);
      for (std::size_t j = 0; j < l / 2; ++j) w[j] = unit_root(-static_cast<std::int64_t>(j), static_cast<std::int64_t>(l));
      tables.push_back(std::move(w));
    }
  });
  std::size_t idx = 0;
  while ((std::size_t{1} << idx) < len) ++idx;
  return tables.at(idx);
}

// Rectangle-arithmetic radix-2 pass.
void box_fft_inplace(BoxVector& a, Direction dir) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const BoxVector& w = box_twiddles(len);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const ComplexBox t = a[i + j + half] * (dir == Direction::forward ? w[j] : w[j].conj());
        const ComplexBox u = a[i + j];
        a[i + j] = u + t;
        a[i + j + half] = u - t;
      }
    }
    g_mults += n / 2;
  }
}

std::shared_ptr<const BluesteinPlan> bluestein_plan(std::size_t n) {
  static std::map<std::size_t, std::shared_ptr<const BluesteinPlan>> cache;
  static std::mutex mu;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto p = std::make_shared<BluesteinPlan>();
  p->m = 1;
  while (p->m < 2 * n - 1) p->m <<= 1;
  const auto nn = static_cast<std::int64_t>(n);
  p->chirp.resize(n);
  for (std::int64_t k = 0; k < nn; ++k) {
    double e = 0;
    p->chirp[static_cast<std::size_t>(k)] = box_mid(unit_root(-sqmod(k, 2 * nn), 2 * nn), e);
    p->chirp_err = std::max(p->chirp_err, e);
  }
  // The kernel is transformed once at the big-float tier, so its error is
  // the final narrowing only.
  {
    PrecisionScope scope(kKernelBits);
    std::vector<BigBox> b(p->m, BigBox(BigInterval(0), BigInterval(0)));
    for (std::int64_t k = 0; k < nn; ++k) {
      const BigBox c = root_of_unity<BigFloat>(sqmod(k, 2 * nn), 2 * nn);  // conj chirp
      b[static_cast<std::size_t>(k)] = c;
      if (k > 0) b[p->m - static_cast<std::size_t>(k)] = c;
    }
    big_fft_forward(b);
    p->kernel_boxes.resize(p->m);
    p->kernel.resize(p->m);
    RI l2(0);
    for (std::size_t k = 0; k < p->m; ++k) {
      p->kernel_boxes[k] = to_hardware(b[k]);
      double e = 0;
      p->kernel[k] = box_mid(p->kernel_boxes[k], e);
      p->kernel_err = std::max(p->kernel_err, e);
      l2 += sqr(RI(e));
    }
    p->kernel_l2 = sqrt(l2).hi();
    p->kernel_max = max_abs(p->kernel);
  }
  p->chirp_boxes.resize(n);
  for (std::int64_t k = 0; k < nn; ++k) p->chirp_boxes[static_cast<std::size_t>(k)] = unit_root(-sqmod(k, 2 * nn), 2 * nn);
  std::lock_guard lock(mu);
  return cache.emplace(n, std::move(p)).first->second;
}

BoxVector conj_all(BoxVector v) {
  for (auto& z : v) z = z.conj();
  return v;
}

}  // namespace

std::uint64_t& dft_multiplication_count() { return g_mults; }

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

BoxVector dft_naive(const BoxVector& x, Direction dir) {
  const std::size_t n = x.size();
  const auto nn = static_cast<std::int64_t>(n);
  BoxVector roots(n);
  for (std::int64_t k = 0; k < nn; ++k) roots[static_cast<std::size_t>(k)] = unit_root(dir == Direction::forward ? -k : k, nn);
  BoxVector y(n, zero_box());
  for (std::size_t m = 0; m < n; ++m) {
    ComplexBox acc = zero_box();
    for (std::size_t k = 0; k < n; ++k) acc += x[k] * roots[(k * m) % n];
    y[m] = acc;
  }
  g_mults += n * n;
  return y;
}

BoxVector dft_radix2(const BoxVector& x, Direction dir) {
  if (!is_power_of_two(x.size())) throw DomainError("radix-2 transform needs a power-of-two length");
  if (x.size() == 1) return x;
  if (x.size() <= kRectMax) {
    BoxVector a = x;
    box_fft_inplace(a, dir);
    return a;
  }
  Split s = split_boxes(x, x.size());
  fft_inplace(s.v, dir);
  return join_boxes(s.v, x.size(), s.rho_sum);
}

BoxVector dft_bluestein(const BoxVector& x, Direction dir) {
  const std::size_t n = x.size();
  if (n <= 1) return x;
  if (dir == Direction::backward) return conj_all(dft_bluestein(conj_all(x), Direction::forward));
  const auto plan = bluestein_plan(n);
  if (plan->m <= kRectMax) {
    BoxVector a(plan->m, zero_box());
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * plan->chirp_boxes[k];
    box_fft_inplace(a, Direction::forward);
    for (std::size_t k = 0; k < plan->m; ++k) a[k] = a[k] * plan->kernel_boxes[k];
    box_fft_inplace(a, Direction::backward);
    const RI scale(1.0 / static_cast<double>(plan->m));
    BoxVector y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = (a[k] * scale) * plan->chirp_boxes[k];
    g_mults += 2 * n + plan->m;
    return y;
  }
  // X_m = c_m sum_k (x_k c_k) conj(c_{m-k}) with c_k = e(-k^2 / 2N).
  Split s = split_boxes(x, plan->m);
  MidVec& v = s.v;
  std::vector<Cx> chirp_padded(plan->m, Cx{});
  std::copy(plan->chirp.begin(), plan->chirp.end(), chirp_padded.begin());
  const double sqrt_n = std::sqrt(static_cast<double>(n)) * (1 + 4 * kU);
  mul_diag(v, chirp_padded, 1.0, plan->chirp_err, plan->chirp_err * sqrt_n);
  fft_inplace(v, Direction::forward);
  mul_diag(v, plan->kernel, plan->kernel_max, plan->kernel_err, plan->kernel_l2);
  fft_inplace(v, Direction::backward);
  const double scale = 1.0 / static_cast<double>(plan->m);  // exact
  for (auto& z : v.m) z = {z.re * scale, z.im * scale};
  v.err2 = (RI(v.err2) * RI(scale) + RI(underflow_pad(plan->m))).hi();
  v.m.resize(n);
  mul_diag(v, plan->chirp, 1.0, plan->chirp_err, plan->chirp_err * sqrt_n);
  return join_boxes(v, n, s.rho_sum);
}

BoxVector dft(const BoxVector& x, Direction dir) {
  const std::size_t n = x.size();
  if (n <= 1) return x;
  if (is_power_of_two(n)) return dft_radix2(x, dir);
  if (n <= 6) return dft_naive(x, dir);
  return dft_bluestein(x, dir);
}

BoxVector group_dft(const GroupArray& a) {
  const CharGroup& g = *a.group;
  if (static_cast<std::int64_t>(a.values.size()) != g.phi()) throw DomainError("group array must have phi(q) entries");
  BoxVector v = a.values;
  const auto total = static_cast<std::size_t>(g.phi());
  for (std::size_t j = 0; j < g.factors().size(); ++j) {
    const auto n = static_cast<std::size_t>(g.factors()[j].order);
    const auto s = static_cast<std::size_t>(g.stride(j));
    if (n == 1) continue;
    BoxVector line(n);
    for (std::size_t hi = 0; hi < total; hi += n * s) {
      for (std::size_t lo = 0; lo < s; ++lo) {
        const std::size_t base = hi + lo;
        for (std::size_t e = 0; e < n; ++e) line[e] = v[base + e * s];
        const BoxVector out = dft(line, Direction::backward);
        for (std::size_t e = 0; e < n; ++e) v[base + e * s] = out[e];
      }
    }
  }
  return v;
}

BoxVector gauss_sums(const CharGroup& g) {
  GroupArray a{&g, BoxVector(static_cast<std::size_t>(g.phi()))};
  for (std::int64_t i = 0; i < g.phi(); ++i) a.values[static_cast<std::size_t>(i)] = unit_root(g.residue(i), g.q());
  return group_dft(a);
}

}  // namespace grh
