#include "grh/sampler_largeq.hpp"

#include <cmath>

namespace grh {

BoxVector l_values_at(const CharGroup& g, const HurwitzLattice& lat) {
  const std::int64_t q = g.q();
  GroupArray arr{&g, BoxVector(static_cast<std::size_t>(g.phi()))};
  for (std::int64_t i = 0; i < g.phi(); ++i) arr.values[static_cast<std::size_t>(i)] = eval_taylor(lat, g.residue(i), q);
  BoxVector out = group_dft(arr);

  // q^{-s} at 128 bits: log q and t log q are needed to full precision.
  ComplexBox qs;
  {
    PrecisionScope scope(128);
    const BigBox s(BigInterval(0.5), BigInterval(lat.t));
    qs = to_hardware(pow(BigInterval(q), -s));
  }
  for (auto& v : out) v = qs * v;
  return out;
}

std::vector<ComplexBox> root_numbers(const CharGroup& g) {
  const BoxVector tau = gauss_sums(g);
  const auto chars = g.all_characters();
  std::vector<ComplexBox> eps(chars.size(), ComplexBox(RealInterval(1), RealInterval(0)));
  for (std::size_t k = 0; k < chars.size(); ++k) {
    const CharIndex& chi = chars[k];
    if (!is_primitive(g, chi)) continue;
    const CharIndex partner = conjugate(g, chi);
    const auto pk = static_cast<std::size_t>(g.flatten(partner));
    const std::size_t rep = std::min(k, pk);
    const ComplexBox w = functional_equation_sign(tau[rep], parity(g, chars[rep]), g.q());
    const ComplexBox z = w.conj();
    // Branch test of grh::sqrt: Re z against -|z|/4. Too close to call at
    // this width means the big-float path decides.
    const RealInterval gap = z.re() + abs(z) * RealInterval(0.25);
    if (gap.contains_zero() || std::fabs(gap.mid()) < 1e-9) {
      eps[k] = root_number(g, chi);
      continue;
    }
    const ComplexBox e = epsilon_from_sign(w);
    eps[k] = rep == k ? e : e.conj();
  }
  return eps;
}

ModulusContext ModulusContext::make(std::int64_t q) {
  ModulusContext ctx{CharGroup::decompose(q), {}, {}, {}};
  const auto eps = root_numbers(ctx.group);
  for (const auto& chi : ctx.group.all_characters()) {
    if (!is_primitive(ctx.group, chi)) continue;
    const std::int64_t f = ctx.group.flatten(chi);
    CharMeta m;
    m.parity = parity(ctx.group, chi);
    m.primitive = true;
    m.conjugate = conjugate(ctx.group, chi);
    m.epsilon = eps[static_cast<std::size_t>(f)];
    ctx.characters.push_back(chi);
    ctx.flat.push_back(f);
    ctx.meta.push_back(std::move(m));
  }
  return ctx;
}

std::vector<RealInterval> lambda_values_at(const ModulusContext& ctx, const HurwitzLattice& lat) {
  std::vector<RealInterval> out;
  if (ctx.characters.empty()) return out;
  const BoxVector l = l_values_at(ctx.group, lat);
  const ComplexBox factor[2] = {lambda_factor(ctx.group.q(), 0, lat.t), lambda_factor(ctx.group.q(), 1, lat.t)};
  out.reserve(ctx.characters.size());
  for (std::size_t i = 0; i < ctx.characters.size(); ++i) {
    const auto& m = ctx.meta[i];
    out.push_back(lambda_from_l(l[static_cast<std::size_t>(ctx.flat[i])], factor[m.parity], m.epsilon));
  }
  return out;
}

namespace {

std::vector<SampleGrid> empty_grids(const ModulusContext& ctx, std::int64_t k_lo, std::int64_t k_hi, Rational step) {
  std::vector<SampleGrid> grids(ctx.characters.size());
  for (std::size_t i = 0; i < grids.size(); ++i) {
    auto& gr = grids[i];
    gr.q = ctx.group.q();
    gr.character = ctx.characters[i];
    gr.meta = ctx.meta[i];
    gr.t_step = step;
    gr.first = k_lo;
    gr.samples.reserve(static_cast<std::size_t>(k_hi - k_lo + 1));
    gr.usable.assign(static_cast<std::size_t>(k_hi - k_lo + 1), 1);
    gr.algorithm = "largeq";
  }
  return grids;
}

}  // namespace

std::map<std::int64_t, std::vector<SampleGrid>> sample_range_batch(const std::vector<ModulusContext>& contexts,
                                                                    std::int64_t k_lo, std::int64_t k_hi, Rational step,
                                                                    LatticeStore& store, const LatticeParams& params) {
  if (k_hi < k_lo) throw DomainError("empty sample range");
  std::map<std::int64_t, std::vector<SampleGrid>> out;
  for (const auto& ctx : contexts) out[ctx.group.q()] = empty_grids(ctx, k_lo, k_hi, step);
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    const double t = static_cast<double>(k * step.num) / static_cast<double>(step.den);
    const auto lat = store.get(t, params);
    for (const auto& ctx : contexts) {
      const auto vals = lambda_values_at(ctx, *lat);
      auto& grids = out[ctx.group.q()];
      for (std::size_t i = 0; i < vals.size(); ++i) grids[i].samples.push_back(vals[i]);
    }
  }
  return out;
}

std::vector<SampleGrid> sample_range_all(const ModulusContext& ctx, std::int64_t k_lo, std::int64_t k_hi, Rational step,
                                         LatticeStore& store, const LatticeParams& params) {
  return sample_range_batch({ctx}, k_lo, k_hi, step, store, params).begin()->second;
}

SampleGrid sample_range(std::int64_t q, const CharIndex& chi, double t_lo, double t_hi, Rational step,
                        LatticeStore& store, const LatticeParams& params) {
  if (step.num <= 0 || step.den <= 0) throw DomainError("t_step must be positive");
  const double s = step.value();
  const auto k_lo = static_cast<std::int64_t>(std::ceil(t_lo / s));
  const auto k_hi = static_cast<std::int64_t>(std::floor(t_hi / s));
  ModulusContext ctx = ModulusContext::make(q);
  for (std::size_t i = 0; i < ctx.characters.size(); ++i) {
    if (ctx.characters[i] != chi) continue;
    ModulusContext one{ctx.group, {chi}, {ctx.flat[i]}, {ctx.meta[i]}};
    return sample_range_all(one, k_lo, k_hi, step, store, params).front();
  }
  throw NotPrimitive("sample_range needs a primitive character");
}

}  // namespace grh
