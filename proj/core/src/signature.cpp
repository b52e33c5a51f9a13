#include "holant/signature.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "holant/detail/tensor_ops.hpp"

namespace holant {

int hamming(std::size_t x) { return std::popcount(x); }

Signature::Signature(int arity, std::vector<Scalar> values)
    : arity_(arity), v_(std::move(values)) {
  if (arity < 0 || arity > 28) throw std::invalid_argument("unsupported arity");
  if (v_.size() != (std::size_t{1} << arity))
    throw std::invalid_argument("value count does not match arity");
}

Signature Signature::constant(Scalar value) {
  Signature s;
  s.v_[0] = std::move(value);
  return s;
}

Signature Signature::standard(StdSig name, int arity) {
  auto fixed = [&](int want) {
    if (arity != want) throw std::invalid_argument("arity mismatch for fixed-arity signature");
  };
  switch (name) {
    case StdSig::EQ: {
      if (arity < 1) throw std::invalid_argument("EQ needs arity >= 1");
      std::vector<Scalar> v(std::size_t{1} << arity, Scalar(0));
      v.front() = 1;
      v.back() = 1;
      return {arity, std::move(v)};
    }
    case StdSig::ONE: {
      if (arity < 1) throw std::invalid_argument("ONE needs arity >= 1");
      std::vector<Scalar> v(std::size_t{1} << arity, Scalar(0));
      for (int s = 0; s < arity; ++s) v[std::size_t{1} << s] = 1;
      return {arity, std::move(v)};
    }
    case StdSig::NEQ:
      fixed(2);
      return {2, {0, 1, 1, 0}};
    case StdSig::Delta0:
      fixed(1);
      return {1, {1, 0}};
    case StdSig::Delta1:
      fixed(1);
      return {1, {0, 1}};
    case StdSig::DeltaPlus:
      fixed(1);
      return {1, {1, 1}};
    case StdSig::DeltaMinus:
      fixed(1);
      return {1, {1, -1}};
    case StdSig::DeltaI:
      fixed(1);
      return {1, {Scalar(1), Scalar::i_unit()}};
    case StdSig::DeltaMinusI:
      fixed(1);
      return {1, {Scalar(1), -Scalar::i_unit()}};
  }
  throw std::logic_error("unreachable");
}

bool Signature::is_zero() const {
  return std::all_of(v_.begin(), v_.end(), [](const Scalar& s) { return s.is_zero(); });
}

bool Signature::operator==(const Signature& o) const {
  return arity_ == o.arity_ && v_ == o.v_;
}

Signature Signature::scaled(const Scalar& c) const {
  std::vector<Scalar> v = v_;
  for (auto& x : v) x *= c;
  return {arity_, std::move(v)};
}

SymSignature::SymSignature(std::vector<Scalar> by_weight) : w_(std::move(by_weight)) {
  if (w_.empty()) throw std::invalid_argument("empty symmetric signature");
}

Signature SymSignature::expand() const {
  const int n = arity();
  std::vector<Scalar> v(std::size_t{1} << n, Scalar(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = w_[hamming(i)];
  return {n, std::move(v)};
}

std::optional<SymSignature> to_symmetric(const Signature& f) {
  const int n = f.arity();
  std::vector<Scalar> w(n + 1, Scalar(0));
  std::vector<bool> seen(n + 1, false);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const int k = hamming(i);
    if (!seen[k]) {
      w[k] = f[i];
      seen[k] = true;
    } else if (!(w[k] == f[i])) {
      return std::nullopt;
    }
  }
  return SymSignature(std::move(w));
}

std::optional<Scalar> scale_equiv(const Signature& f, const Signature& g) {
  if (f.arity() != g.arity()) throw std::invalid_argument("arity mismatch");
  std::optional<Scalar> c;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const bool fz = f[i].is_zero(), gz = g[i].is_zero();
    if (fz != gz) return std::nullopt;
    if (!gz && !c) c = f[i] / g[i];
  }
  if (!c) return Scalar(1);  // both identically zero
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] == *c * g[i])) return std::nullopt;
  }
  return c;
}

Signature tensor(const Signature& f, const Signature& g) {
  const int n = f.arity(), m = g.arity();
  std::vector<Scalar> v(std::size_t{1} << (n + m), Scalar(0));
  for (std::size_t a = 0; a < f.size(); ++a) {
    if (f[a].is_zero()) continue;
    for (std::size_t b = 0; b < g.size(); ++b) v[(a << m) | b] = f[a] * g[b];
  }
  return {n + m, std::move(v)};
}

Signature permute(const Signature& f, const std::vector<int>& perm) {
  const int n = f.arity();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("bad permutation size");
  std::vector<bool> hit(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || hit[p]) throw std::invalid_argument("not a permutation");
    hit[p] = true;
  }
  std::vector<Scalar> v(f.size(), Scalar(0));
  for (std::size_t x = 0; x < v.size(); ++x) {
    std::size_t y = 0;
    for (int j = 0; j < n; ++j)
      y = detail::with_arg_bit(y, j, n, detail::arg_bit(x, perm[j], n));
    v[x] = f[y];
  }
  return {n, std::move(v)};
}

Matricization matricize(const Signature& f, const std::vector<int>& row_slots) {
  const int n = f.arity();
  std::uint32_t mask = 0;
  for (int s : row_slots) {
    if (s < 0 || s >= n) throw std::invalid_argument("slot out of range");
    mask |= 1u << s;
  }
  if (std::popcount(mask) != static_cast<int>(row_slots.size()))
    throw std::invalid_argument("duplicate slot in row subset");
  if (mask == 0 || static_cast<int>(row_slots.size()) == n)
    throw std::invalid_argument("row subset must be proper and non-empty");
  const std::uint32_t cmask = ~mask & ((1u << n) - 1u);
  Matricization out;
  out.rows = std::size_t{1} << row_slots.size();
  out.cols = f.size() >> row_slots.size();
  out.m.assign(f.size(), Scalar(0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::size_t r = detail::gather_bits(i, mask, n);
    const std::size_t c = detail::gather_bits(i, cmask, n);
    out.m[r * out.cols + c] = f[i];
  }
  return out;
}

std::size_t matrix_rank(const Matricization& m) {
  std::vector<Scalar> a = m.m;
  const std::size_t rows = m.rows, cols = m.cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t piv = rank;
    while (piv < rows && a[piv * cols + col].is_zero()) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[rank * cols + j], a[piv * cols + j]);
    const Scalar inv = a[rank * cols + col].inverse();
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r * cols + col].is_zero()) continue;
      const Scalar factor = a[r * cols + col] * inv;
      for (std::size_t j = col; j < cols; ++j)
        a[r * cols + j] -= factor * a[rank * cols + j];
    }
    ++rank;
  }
  return rank;
}

Signature transform(const Mat2& m, const Signature& f) {
  std::vector<Scalar> v = f.values();
  for (int s = 0; s < f.arity(); ++s)
    detail::apply_leg(v, f.arity(), s, m.a, m.b, m.c, m.d);
  return {f.arity(), std::move(v)};
}

Signature transform_args(const std::vector<Mat2>& ms, const Signature& f) {
  if (static_cast<int>(ms.size()) != f.arity())
    throw std::invalid_argument("one matrix per argument required");
  std::vector<Scalar> v = f.values();
  for (int s = 0; s < f.arity(); ++s)
    detail::apply_leg(v, f.arity(), s, ms[s].a, ms[s].b, ms[s].c, ms[s].d);
  return {f.arity(), std::move(v)};
}

Scalar to_backend(const Scalar& s, const Scalar& proto) {
  if (proto.is_exact() || !s.is_exact()) return s;
  return Scalar::approx(s.to_complex(), proto.eps());
}

Signature to_backend(const Signature& f, const Scalar& proto) {
  if (proto.is_exact()) return f;
  std::vector<Scalar> v;
  v.reserve(f.size());
  for (const auto& x : f.values()) v.push_back(to_backend(x, proto));
  return {f.arity(), std::move(v)};
}

Mat2 to_backend(const Mat2& m, const Scalar& proto) {
  return {to_backend(m.a, proto), to_backend(m.b, proto), to_backend(m.c, proto),
          to_backend(m.d, proto)};
}

std::vector<std::size_t> support(const Signature& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f[i].is_zero()) out.push_back(i);
  return out;
}

}  // namespace holant
