#include "holant/families.hpp"

#include <algorithm>
#include <stdexcept>

#include "holant/affine.hpp"
#include "holant/detail/tensor_ops.hpp"
#include "holant/entanglement.hpp"

namespace holant {

namespace {

void reject_zero(const Signature& f) {
  if (f.is_zero()) throw std::invalid_argument("zero signature has no family membership");
}

Signature maybe_transform(const Signature& f, const std::optional<Mat2>& m) {
  if (!m) return f;
  if (!m->invertible()) throw field_error("singular transform");
  return transform(m->inverse(), f);
}

}  // namespace

bool in_T_closure(const Signature& f) {
  reject_zero(f);
  if (f.arity() <= 2) return true;
  const auto blocks = detail::finest_partition(f.values(), f.arity());
  for (auto b : blocks)
    if (__builtin_popcount(b) > 2) return false;
  return true;
}

bool in_E_closure(const Signature& f, const std::optional<Mat2>& transform) {
  const Signature g = maybe_transform(f, transform);
  reject_zero(g);
  const int n = g.arity();
  if (n == 0) return true;
  const auto blocks = detail::finest_partition(g.values(), n);
  for (auto b : blocks) {
    const auto supp = detail::projected_support(g.values(), n, b);
    if (supp.size() > 2) return false;
    const std::size_t full = (std::size_t{1} << __builtin_popcount(b)) - 1;
    if (supp.size() == 2 && (supp[0] ^ supp[1]) != full) return false;
  }
  return true;
}

bool in_M_closure(const Signature& f, const std::optional<Mat2>& transform) {
  const Signature g = maybe_transform(f, transform);
  reject_zero(g);
  const int n = g.arity();
  if (n == 0) return true;
  const auto blocks = detail::finest_partition(g.values(), n);
  for (auto b : blocks) {
    for (auto s : detail::projected_support(g.values(), n, b))
      if (hamming(s) > 1) return false;
  }
  return true;
}

bool in_affine(const Signature& f) { return is_affine(f); }

bool in_local_affine(const Signature& f) {
  const int n = f.arity();
  const Mat2 t = to_backend(Mat2::t_matrix(), f[0]);
  for (std::size_t idx : support(f)) {
    std::vector<Scalar> v = f.values();
    for (int s = 0; s < n; ++s) {
      if (detail::arg_bit(idx, s, n))
        detail::apply_leg(v, n, s, t.a, t.b, t.c, t.d);
    }
    if (!is_affine(Signature(n, std::move(v)))) return false;
  }
  return true;
}

bool in_B(const Mat2& m) {
  if (!m.invertible()) throw field_error("singular matrix");
  const Signature r0(1, {m.a, m.b});
  const Signature r1(1, {m.c, m.d});
  if (!is_affine(r0) || !is_affine(r1)) return false;
  const Mat2 g = m.transpose() * m;
  return is_affine(Signature(2, {g.a, g.b, g.c, g.d}));
}

bool in_B_A(const Mat2& m) {
  if (!m.invertible()) throw field_error("singular matrix");
  return is_affine(Signature(2, {m.a, m.b, m.c, m.d}));
}

bool matchgate_parity(const Signature& f) {
  if (f.arity() > 3)
    throw std::invalid_argument("matchgate parity criterion requires arity <= 3");
  bool even_ok = true, odd_ok = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    if (hamming(i) % 2 == 0) even_ok = false;
    else odd_ok = false;
  }
  return even_ok || odd_ok;
}

namespace {

bool omega_normalised_pair(const Scalar& front, const Scalar& back) {
  if (front.is_zero()) return true;
  const auto ord = (back / front).root_of_unity_order();
  return !ord || (*ord % 3 != 0);
}

}  // namespace

bool is_omega_normalised(const SymSignature& f) {
  if (f.arity() == 1) return omega_normalised_pair(f[0], f[1]);
  if (f.arity() == 2) return omega_normalised_pair(f[0], f[2]);
  throw std::invalid_argument("omega normalisation applies to unary or binary symmetric");
}

OmegaNormalisation omega_normalise(const SymSignature& f) {
  if (f.arity() != 1 && f.arity() != 2)
    throw std::invalid_argument("omega normalisation applies to unary or binary symmetric");
  const Scalar one = f[0].one_like();
  if (is_omega_normalised(f)) return {f, Mat2::identity(), false};
  const Scalar w3 = f[0].is_exact()
                        ? Scalar::omega()
                        : Scalar::approx(Scalar::omega().to_complex(), f[0].eps());
  for (const Scalar& w : {w3, w3 * w3}) {
    SymSignature cand = f.arity() == 1
                            ? SymSignature({f[0], w * f[1]})
                            : SymSignature({f[0], w * f[1], w * w * f[2]});
    if (is_omega_normalised(cand)) {
      return {cand, Mat2::diag(one, w), true};
    }
  }
  throw std::logic_error("omega normalisation failed");  // cannot happen
}

namespace {

// all t in the field with a*t^2 + b*t + c = 0 (a, b not both zero)
std::vector<Scalar> solve_quadratic(const Scalar& a, const Scalar& b, const Scalar& c) {
  std::vector<Scalar> out;
  if (a.is_zero()) {
    if (!b.is_zero()) out.push_back(-(c / b));
    return out;
  }
  const Scalar disc = b * b - a.constant_like(4) * a * c;
  const auto s = disc.sqrt();
  if (!s) return out;
  const Scalar den = (a + a).inverse();
  out.push_back((-b + *s) * den);
  if (!s->is_zero()) out.push_back((-b - *s) * den);
  return out;
}

std::vector<Mat2> enumerate_b_set() {
  const Scalar iu = Scalar::i_unit();
  const std::vector<std::pair<Scalar, Scalar>> dirs = {
      {1, 0}, {0, 1}, {1, 1}, {1, -1}, {Scalar(1), iu}, {Scalar(1), -iu}};
  std::vector<Mat2> out;
  auto push_candidate = [&](const Mat2& m) {
    if (!m.invertible() || !in_B(m)) return;
    for (const auto& seen : out)
      if (seen.proportional_to(m)) return;
    out.push_back(m);
  };
  for (std::size_t i1 = 0; i1 < dirs.size(); ++i1) {
    for (std::size_t i2 = 0; i2 < dirs.size(); ++i2) {
      if (i1 == i2) continue;
      const auto& [p, q] = dirs[i1];
      const auto& [r, s] = dirs[i2];
      if ((p * s - q * r).is_zero()) continue;
      // rows (p, q) and c(r, s); with t = c^2 the Gram function is
      // [p^2 + t r^2, pq + t rs, q^2 + t s^2]; collect every t that could
      // make it affine, then verify.
      std::vector<Scalar> ts;
      auto add_linear = [&](const Scalar& coeff, const Scalar& rhs) {
        if (!coeff.is_zero()) ts.push_back(rhs / coeff);
      };
      add_linear(r * s, -(p * q));            // w1 = 0
      add_linear(r * r, -(p * p));            // w0 = 0
      add_linear(s * s, -(q * q));            // w2 = 0
      Scalar ipow(1);
      for (int lam = 0; lam < 4; ++lam) {
        add_linear(r * s - ipow * r * r, ipow * p * p - p * q);  // w1 = i^l w0
        add_linear(r * s - ipow * s * s, ipow * q * q - p * q);  // w1 = i^l w2
        add_linear(s * s - ipow * r * r, ipow * p * p - q * q);  // w2 = i^l w0
        ipow *= iu;
      }
      // w0 w2 = +- w1^2 as quadratics in t
      for (int sign = 0; sign < 2; ++sign) {
        const Scalar sg = sign ? Scalar(-1) : Scalar(1);
        const Scalar qa = r * r * s * s - sg * r * s * r * s;
        const Scalar qb = p * p * s * s + q * q * r * r - sg * Scalar(2) * p * q * r * s;
        const Scalar qc = p * p * q * q - sg * p * q * p * q;
        if (qa.is_zero() && qb.is_zero()) continue;
        for (const auto& t : solve_quadratic(qa, qb, qc)) ts.push_back(t);
      }
      for (const auto& t : ts) {
        if (t.is_zero()) continue;
        const auto croot = t.sqrt();
        if (!croot) continue;
        for (const Scalar& c : {*croot, -*croot}) {
          push_candidate(Mat2{p, q, c * r, c * s});
        }
      }
    }
  }
  return out;
}

}  // namespace

const std::vector<Mat2>& b_set_representatives() {
  static const std::vector<Mat2> reps = enumerate_b_set();
  return reps;
}

}  // namespace holant
