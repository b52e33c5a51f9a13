#include "holant/entanglement.hpp"

#include <stdexcept>

#include "holant/detail/tensor_ops.hpp"

namespace holant {

bool Factorization::degenerate() const {
  for (const auto& f : factors)
    if (f.factor.arity() > 1) return false;
  return true;
}

Factorization factorize(const Signature& f) {
  if (f.is_zero()) throw std::invalid_argument("cannot factorize the zero signature");
  const int n = f.arity();
  Factorization out;
  out.scale = f[0].one_like();
  if (n == 0) {
    out.factors.push_back({{}, f});
    return out;
  }
  const auto blocks = detail::finest_partition(f.values(), n);
  // reference support point; each factor is the slice through it
  std::size_t ref = 0;
  while (f[ref].is_zero()) ++ref;
  for (std::uint32_t mask : blocks) {
    TensorFactor fac;
    for (int s = 0; s < n; ++s)
      if (mask & (1u << s)) fac.slots.push_back(s);
    const int k = static_cast<int>(fac.slots.size());
    std::vector<Scalar> vals(std::size_t{1} << k, f[0].zero_like());
    for (std::size_t i = 0; i < f.size(); ++i) {
      // keep block bits from i, reference bits elsewhere
      bool matches_ref = true;
      for (int s = 0; s < n && matches_ref; ++s) {
        if (!(mask & (1u << s)) &&
            detail::arg_bit(i, s, n) != detail::arg_bit(ref, s, n))
          matches_ref = false;
      }
      if (!matches_ref) continue;
      vals[detail::gather_bits(i, mask, n)] = f[i];
    }
    out.factors.push_back({std::move(fac.slots), Signature(k, std::move(vals))});
  }
  // product of slices = f * f(ref)^{k-1}
  for (std::size_t t = 1; t < out.factors.size(); ++t) out.scale *= f[ref];
  return out;
}

bool is_decomposable(const Signature& f) { return factorize(f).decomposable(); }
bool is_degenerate(const Signature& f) { return factorize(f).degenerate(); }

Scalar ghz_invariant(const Signature& f) {
  if (f.arity() != 3) throw std::invalid_argument("ternary signature required");
  const auto& v = f.values();
  const Scalar t1 = v[0] * v[7] - v[2] * v[5] + v[1] * v[6] - v[3] * v[4];
  const Scalar t2 = v[2] * v[4] - v[0] * v[6];
  const Scalar t3 = v[3] * v[5] - v[1] * v[7];
  return t1 * t1 - t1.constant_like(4) * t2 * t3;
}

namespace {

EntanglementClass decomposable_class(const Signature& f) {
  const auto fz = factorize(f);
  EntanglementClass out;
  out.tag = fz.degenerate() ? EntangleTag::Degenerate : EntangleTag::DecomposableNontrivial;
  for (const auto& fac : fz.factors) out.partition.push_back(fac.slots);
  return out;
}

std::vector<int> full_partition_slot(int n) {
  std::vector<int> s(n);
  for (int j = 0; j < n; ++j) s[j] = j;
  return s;
}

}  // namespace

EntanglementClass classify_ternary(const Signature& f) {
  if (f.arity() != 3) throw std::invalid_argument("ternary signature required");
  if (f.is_zero()) throw std::invalid_argument("zero signature has no entanglement class");
  const auto& v = f.values();
  if (!ghz_invariant(f).is_zero()) {
    return {EntangleTag::GHZ, {full_partition_slot(3)}, std::nullopt};
  }
  const bool w1 = !(v[0] * v[3] == v[1] * v[2]) || !(v[5] * v[6] == v[4] * v[7]);
  const bool w2 = !(v[1] * v[4] == v[0] * v[5]) || !(v[3] * v[6] == v[2] * v[7]);
  const bool w3 = !(v[3] * v[5] == v[1] * v[7]) || !(v[2] * v[4] == v[0] * v[6]);
  if (w1 && w2 && w3) {
    return {EntangleTag::W, {full_partition_slot(3)}, std::nullopt};
  }
  return decomposable_class(f);
}

EntanglementClass classify_ternary_symmetric(const SymSignature& f) {
  if (f.arity() != 3) throw std::invalid_argument("length-4 symmetric signature required");
  const Scalar h01 = f[1] * f[1] - f[0] * f[2];
  const Scalar h12 = f[2] * f[2] - f[1] * f[3];
  const Scalar d = f[0] * f[3] - f[1] * f[2];
  const Scalar poly = d * d - d.constant_like(4) * h01 * h12;
  if (!poly.is_zero()) return {EntangleTag::GHZ, {full_partition_slot(3)}, std::nullopt};
  if (!h01.is_zero() || !h12.is_zero())
    return {EntangleTag::W, {full_partition_slot(3)}, std::nullopt};
  return decomposable_class(f.expand());
}

EntanglementClass classify_entanglement(const Signature& f) {
  if (f.is_zero()) throw std::invalid_argument("zero signature has no entanglement class");
  const int n = f.arity();
  if (n <= 1) return {EntangleTag::Degenerate, {}, std::nullopt};
  if (n == 3) return classify_ternary(f);
  const auto fz = factorize(f);
  if (fz.factors.size() == 1) {
    return {n == 2 ? EntangleTag::BinaryEntangled : EntangleTag::HigherUnclassified,
            {full_partition_slot(n)},
            std::nullopt};
  }
  return decomposable_class(f);
}

namespace detail_witness {

GhzRoots ghz_roots(const SymSignature& f) {
  if (classify_ternary_symmetric(f).tag != EntangleTag::GHZ)
    throw std::invalid_argument("ghz witness requires a GHZ-type symmetric signature");
  GhzRoots out;
  const Scalar h = f[1] * f[1] - f[0] * f[2];
  if (h.is_zero()) {
    // one direction is (0,1); GHZ forces f0 != 0 here
    out.r2_infinite = true;
    const Scalar r = f[1] / f[0];
    out.r1 = r;
    out.big_a = f[0];
    out.big_b = f[3] - f[0] * r * r * r;
    return out;
  }
  out.p = (f[2] * f[1] - f[0] * f[3]) / h;
  out.q = (f[1] * f[3] - f[2] * f[2]) / h;
  const Scalar disc = out.p * out.p + out.p.constant_like(4) * out.q;
  const auto s = disc.sqrt();
  if (s) {
    const Scalar half = out.p.one_like() / out.p.constant_like(2);
    const Scalar r1 = (out.p + *s) * half;
    const Scalar r2 = (out.p - *s) * half;
    out.r1 = r1;
    out.r2 = r2;
    // Vandermonde weights: A + B = f0, A r1 + B r2 = f1
    out.big_a = (f[1] - r2 * f[0]) / (r1 - r2);
    out.big_b = (r1 * f[0] - f[1]) / (r1 - r2);
  }
  return out;
}

}  // namespace detail_witness

Mat2 ghz_witness(const SymSignature& f) {
  const auto roots = detail_witness::ghz_roots(f);
  Mat2 m;
  if (roots.r2_infinite) {
    const auto c = (roots.big_b / roots.big_a).cbrt();
    if (!c) throw field_error("GHZ witness leaves the conductor-24 field");
    m = Mat2{roots.big_a.one_like(), roots.big_a.zero_like(), *roots.r1, *c};
  } else {
    if (!roots.r1)
      throw field_error("GHZ witness roots leave the conductor-24 field");
    const auto c = (roots.big_b / roots.big_a).cbrt();
    if (!c) throw field_error("GHZ witness leaves the conductor-24 field");
    m = Mat2{roots.big_a.one_like(), *c, *roots.r1, *c * *roots.r2};
  }
  // verify reconstruction up to scale
  const Signature base = to_backend(Signature::standard(StdSig::EQ, 3), roots.big_a);
  if (!scale_equiv(transform(m, base), f.expand()))
    throw std::logic_error("GHZ witness reconstruction failed");
  return m;
}

Mat2 w_state_witness(const SymSignature& f) {
  if (classify_ternary_symmetric(f).tag != EntangleTag::W)
    throw std::invalid_argument("W witness requires a W-type symmetric signature");
  // work on the end with a non-singular Hankel block
  const bool flip = (f[1] * f[1] - f[0] * f[2]).is_zero();
  const SymSignature g = flip ? SymSignature({f[3], f[2], f[1], f[0]}) : f;
  const Scalar h = g[1] * g[1] - g[0] * g[2];
  const Scalar p = (g[2] * g[1] - g[0] * g[3]) / h;
  const Scalar q = (g[1] * g[3] - g[2] * g[2]) / h;
  if (!(p * p + p.constant_like(4) * q).is_zero())
    throw std::logic_error("W-type signature without a double root");
  const Scalar r = p / p.constant_like(2);
  // g_k = alpha r^k + k b1 r^{k-1} + (3-k) b0 r^k, with the one-parameter
  // gauge direction (-3, 1, r); pick a representative with alpha non-zero
  Scalar alpha = g[0];
  Scalar b0 = alpha.zero_like();
  Scalar b1 = g[1] - g[0] * r;
  if (alpha.is_zero()) {
    alpha = alpha.constant_like(-3);
    b0 = b0.one_like();
    b1 = b1 + r;
  }
  if (!(g[2] == alpha * r * r + b1.constant_like(2) * b1 * r + b0 * r * r) ||
      !(g[3] == alpha * r * r * r + b1.constant_like(3) * b1 * r * r))
    throw std::logic_error("W witness fit failed");
  Mat2 m{alpha.one_like(), b0 / alpha, r, b1 / alpha};
  if (flip) m = Mat2::x_flip() * m;

  const Signature base = to_backend(SymSignature({1, 1, 0, 0}).expand(), m.a);
  if (!scale_equiv(transform(m, base), f.expand()))
    throw std::logic_error("W witness reconstruction failed");
  return m;
}

}  // namespace holant
