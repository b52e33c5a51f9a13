#include "holant/affine.hpp"

#include <bit>
#include <stdexcept>

#include "holant/detail/tensor_ops.hpp"

namespace holant {

namespace {

std::uint32_t slotmask_of_index(std::size_t idx, int n) {
  std::uint32_t m = 0;
  for (int s = 0; s < n; ++s)
    if (detail::arg_bit(idx, s, n)) m |= 1u << s;
  return m;
}

std::size_t index_of_slotmask(std::uint32_t m, int n) {
  std::size_t idx = 0;
  for (int s = 0; s < n; ++s)
    if (m & (1u << s)) idx = detail::with_arg_bit(idx, s, n, 1);
  return idx;
}

// Reduce v against an echelonised basis; returns the residue.
std::uint32_t reduce(std::uint32_t v, const std::vector<std::uint32_t>& basis,
                     const std::vector<int>& pivot) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (v & (1u << pivot[i])) v ^= basis[i];
  return v;
}

}  // namespace

bool AffineForm::in_support(std::uint32_t x) const {
  std::uint32_t v = x ^ offset;
  for (std::uint32_t b : basis) {
    // reduce by the highest set bit of b
    const std::uint32_t hb = std::uint32_t{1} << (31 - std::countl_zero(b));
    if (v & hb) v ^= b;
  }
  return v == 0;
}

int AffineForm::phase(std::uint32_t x) const {
  int p = 0;
  for (int j = 0; j < arity; ++j) {
    if (!(x & (1u << j))) continue;
    p += linear[j];
    p += 2 * std::popcount(quad[j] & x);
  }
  return ((p % 4) + 4) % 4;
}

Scalar AffineForm::evaluate(std::uint32_t x) const {
  if (c.is_zero() || !in_support(x)) return c.zero_like();
  const Scalar iu = c.is_exact() ? Scalar::i_unit()
                                 : Scalar::approx(Scalar::i_unit().to_complex(), c.eps());
  return c * iu.pow(phase(x));
}

Signature AffineForm::to_signature() const {
  std::vector<Scalar> v(std::size_t{1} << arity, Scalar(0));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = evaluate(slotmask_of_index(i, arity));
  return {arity, std::move(v)};
}

std::optional<AffineForm> affine_normal_form(const Signature& f) {
  const int n = f.arity();
  AffineForm out;
  out.arity = n;
  out.linear.assign(n, 0);
  out.quad.assign(n, 0);

  std::vector<std::uint32_t> supp;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f[i].is_zero()) supp.push_back(slotmask_of_index(i, n));
  if (supp.empty()) {
    out.c = f[0].zero_like();
    for (int j = 0; j < n; ++j) out.basis.push_back(1u << j);
    return out;
  }

  // Support must be a coset of a linear subspace.
  const std::uint32_t x0 = supp.front();
  std::vector<std::uint32_t> basis;
  std::vector<int> pivot;
  for (std::uint32_t x : supp) {
    std::uint32_t v = reduce(x ^ x0, basis, pivot);
    if (v) {
      const int pb = 31 - std::countl_zero(v);
      // keep reduced echelon form: clear this bit from existing vectors
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] & (1u << pb)) basis[i] ^= v;
      basis.push_back(v);
      pivot.push_back(pb);
    }
  }
  const int k = static_cast<int>(basis.size());
  if (supp.size() != (std::size_t{1} << k)) return std::nullopt;

  // Phases over the parameter space t -> x0 ^ (xor of chosen basis vectors).
  const Scalar base = f[index_of_slotmask(x0, n)];
  const Scalar iu = base.is_exact() ? Scalar::i_unit()
                                    : Scalar::approx(Scalar::i_unit().to_complex(), base.eps());
  auto phase_of = [&](std::uint32_t t) -> std::optional<int> {
    std::uint32_t x = x0;
    for (int j = 0; j < k; ++j)
      if (t & (1u << j)) x ^= basis[j];
    const Scalar r = f[index_of_slotmask(x, n)] / base;
    Scalar p = base.one_like();
    for (int e = 0; e < 4; ++e) {
      if (r == p) return e;
      p *= iu;
    }
    return std::nullopt;
  };

  std::vector<int> lam(k, 0);
  std::vector<std::uint32_t> q(k, 0);
  for (int j = 0; j < k; ++j) {
    auto e = phase_of(1u << j);
    if (!e) return std::nullopt;
    lam[j] = *e;
  }
  for (int j = 0; j < k; ++j) {
    for (int l = j + 1; l < k; ++l) {
      auto e = phase_of((1u << j) | (1u << l));
      if (!e) return std::nullopt;
      const int cross = ((*e - lam[j] - lam[l]) % 4 + 4) % 4;
      if (cross == 1 || cross == 3) return std::nullopt;
      if (cross == 2) q[j] |= 1u << l;
    }
  }
  // Verify the fitted phase on every support point.
  for (std::uint32_t t = 0; t < (std::uint32_t{1} << k); ++t) {
    auto e = phase_of(t);
    if (!e) return std::nullopt;
    int fit = 0;
    for (int j = 0; j < k; ++j) {
      if (!(t & (1u << j))) continue;
      fit += lam[j];
      fit += 2 * std::popcount(q[j] & t);
    }
    if (((fit - *e) % 4 + 4) % 4 != 0) return std::nullopt;
  }

  // Re-express over the ambient pivot coordinates: t_j = x_{p_j} xor x0_{p_j}.
  // For eps = x0 bit: t = x' if eps=0, 1 - x' if eps=1 (as integers mod 4).
  int cst = 0;
  std::vector<int> amb_lin(n, 0);
  auto add_cross_amb = [&](int s1, int s2, int coeff2) {
    // phase term 2*coeff2 * x_{s1} x_{s2} with coeff2 in F2
    if (coeff2 % 2 == 0) return;
    if (s1 == s2) {
      amb_lin[s1] += 2;
      return;
    }
    const int lo = std::min(s1, s2), hi = std::max(s1, s2);
    out.quad[lo] ^= 1u << hi;
  };
  for (int j = 0; j < k; ++j) {
    const int pj = pivot[j];
    const int ej = (x0 >> pj) & 1;
    // lam[j] * t_j
    if (ej == 0) {
      amb_lin[pj] += lam[j];
    } else {
      cst += lam[j];
      amb_lin[pj] += 4 - lam[j];
    }
    for (int l = j + 1; l < k; ++l) {
      if (!(q[j] & (1u << l))) continue;
      const int pl = pivot[l];
      const int el = (x0 >> pl) & 1;
      // 2 * t_j t_l with t = eps xor x'
      // (eps_j, eps_l) = (0,0): x_j x_l ; (1,0): x_l - x_j x_l ; (0,1): x_j - ...
      // (1,1): 1 - x_j - x_l + x_j x_l.  Factor 2 makes all signs toggles.
      if (ej && el) cst += 2;
      if (ej) amb_lin[pl] += 2;
      if (el) amb_lin[pj] += 2;
      add_cross_amb(pj, pl, 1);
    }
  }
  for (int s = 0; s < n; ++s) out.linear[s] = static_cast<std::uint8_t>(((amb_lin[s] % 4) + 4) % 4);
  out.c = base * iu.pow(((cst % 4) + 4) % 4);
  out.basis = std::move(basis);
  out.offset = x0;
  return out;
}

bool is_affine(const Signature& f) { return affine_normal_form(f).has_value(); }

PhaseSystem::PhaseSystem(int nvars) : n_(nvars), lin_(nvars, 0), quad_(nvars, 0) {
  if (nvars > 63) throw std::invalid_argument("phase system limited to 63 variables");
}

void PhaseSystem::add_linear(int var, int coeff_mod4) {
  lin_[var] = static_cast<std::uint8_t>((lin_[var] + (coeff_mod4 % 4) + 4) % 4);
}

void PhaseSystem::add_cross(int v1, int v2) {
  if (v1 == v2) {
    add_linear(v1, 2);
    return;
  }
  const int lo = std::min(v1, v2), hi = std::max(v1, v2);
  quad_[lo] ^= std::uint64_t{1} << hi;
}

void PhaseSystem::add_constraint(std::uint64_t row, int parity) {
  constraints_.emplace_back(row, parity & 1);
}

namespace {

struct Eliminator {
  int n;
  Scalar c;
  int cst;
  std::vector<std::uint8_t> lin;
  std::vector<std::uint64_t> quad;
  std::uint64_t live;

  std::uint64_t neighbors(int v) const {
    std::uint64_t m = quad[v];
    for (int j = 0; j < v; ++j)
      if (quad[j] & (std::uint64_t{1} << v)) m |= std::uint64_t{1} << j;
    return m & live & ~(std::uint64_t{1} << v);
  }

  void clear_var(int v) {
    live &= ~(std::uint64_t{1} << v);
    lin[v] = 0;
    quad[v] = 0;
    for (int j = 0; j < n; ++j) quad[j] &= ~(std::uint64_t{1} << v);
  }

  // phase += m * (xor of vars in J), m in Z4, using
  // xor(J) == sum(J) + 2*sigma2(J)  (mod 4).
  void add_multiple_of_xor(std::uint64_t J, int m) {
    m = ((m % 4) + 4) % 4;
    if (m == 0) return;
    for (int j = 0; j < n; ++j) {
      if (!(J & (std::uint64_t{1} << j))) continue;
      lin[j] = static_cast<std::uint8_t>((lin[j] + m) % 4);
      if (m % 2) {
        for (int k = j + 1; k < n; ++k)
          if (J & (std::uint64_t{1} << k)) quad[j] ^= std::uint64_t{1} << k;
      }
    }
  }

  // Substitute x_p := xor(J) ^ eps into the phase polynomial and kill p.
  void substitute(int p, std::uint64_t J, int eps) {
    const int lp = lin[p];
    const std::uint64_t nb = neighbors(p);
    clear_var(p);
    // linear part: lp * x_p
    if (lp) {
      if (eps) {
        cst = (cst + lp) % 4;
        add_multiple_of_xor(J, 4 - lp);
      } else {
        add_multiple_of_xor(J, lp);
      }
    }
    // cross terms: 2 * x_p * x_k = 2 * (eps + sum_J) * x_k  (mod 4)
    for (int kk = 0; kk < n; ++kk) {
      if (!(nb & (std::uint64_t{1} << kk))) continue;
      if (eps) lin[kk] = static_cast<std::uint8_t>((lin[kk] + 2) % 4);
      for (int j = 0; j < n; ++j) {
        if (!(J & (std::uint64_t{1} << j))) continue;
        if (j == kk) lin[kk] = static_cast<std::uint8_t>((lin[kk] + 2) % 4);
        else {
          const int lo = std::min(j, kk), hi = std::max(j, kk);
          quad[lo] ^= std::uint64_t{1} << hi;
        }
      }
    }
  }

  Scalar run() {
    const Scalar iu = c.is_exact() ? Scalar::i_unit()
                                   : Scalar::approx(Scalar::i_unit().to_complex(), c.eps());
    const Scalar zero = c.zero_like();
    while (live) {
      const int v = 63 - std::countl_zero(live);
      const std::uint64_t nb = neighbors(v);
      const int lv = lin[v];
      if (lv == 1 || lv == 3) {
        c *= c.one_like() + iu.pow(lv);
        const int m = (lv == 1) ? 3 : 1;
        clear_var(v);
        add_multiple_of_xor(nb, m);
        // the xor identity above also needs the pure mod-2 cross structure;
        // add_multiple_of_xor already wrote both pieces
      } else {
        const int parity = lv / 2;
        clear_var(v);
        if (nb == 0) {
          if (parity != 0) return zero;
          c *= c.constant_like(2);
        } else {
          const int p = 63 - std::countl_zero(nb);
          c *= c.constant_like(2);
          substitute(p, nb & ~(std::uint64_t{1} << p), parity);
        }
      }
    }
    return c * iu.pow(cst);
  }
};

}  // namespace

Scalar PhaseSystem::evaluate() const {
  Eliminator e{n_, c_, const_, lin_, quad_,
               n_ == 0 ? 0 : (~std::uint64_t{0} >> (64 - n_))};

  // Reduce the constraint rows to reduced echelon form, then substitute.
  std::vector<std::pair<std::uint64_t, int>> rows = constraints_;
  std::vector<std::pair<std::uint64_t, int>> echelon;  // (row, parity), pivot = msb
  for (auto [row, parity] : rows) {
    for (auto& [er, ep] : echelon) {
      const int pb = 63 - std::countl_zero(er);
      if (row & (std::uint64_t{1} << pb)) {
        row ^= er;
        parity ^= ep;
      }
    }
    if (row == 0) {
      if (parity) return c_.zero_like();
      continue;
    }
    const int pb = 63 - std::countl_zero(row);
    for (auto& [er, ep] : echelon) {
      if (er & (std::uint64_t{1} << pb)) {
        er ^= row;
        ep ^= parity;
      }
    }
    echelon.emplace_back(row, parity);
  }
  for (auto& [row, parity] : echelon) {
    const int pb = 63 - std::countl_zero(row);
    e.substitute(pb, row & ~(std::uint64_t{1} << pb), parity);
  }
  return e.run();
}

}  // namespace holant
