#include "holant/eval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "holant/affine.hpp"
#include "holant/detail/tensor_ops.hpp"
#include "holant/entanglement.hpp"
#include "holant/families.hpp"

namespace holant {

namespace {

void require_closed(const SignatureGrid& grid) {
  const Diagnostics d = validate(grid);
  if (!d.ok()) throw std::invalid_argument("invalid grid: " + d.issues.front());
}

Scalar backend_zero(const SignatureGrid& grid) {
  const bool exact = grid.vertices.empty() || grid.vertices[0][0].is_exact();
  return exact ? Scalar(0) : Scalar::approx({0, 0});
}

}  // namespace

Scalar holant_bruteforce(const SignatureGrid& grid) {
  require_closed(grid);
  const Gadget g{grid, {}};
  return effective_signature(g)[0];
}

namespace {

// A partial contraction: dense values plus the edge id carried by each slot.
struct Tensor {
  std::vector<Scalar> vals;
  std::vector<int> edge_of_slot;
  int min_vertex_id;
  int arity() const { return static_cast<int>(edge_of_slot.size()); }
};

// Sum out two slots of one tensor joined by the same edge.
Tensor trace_out(const Tensor& t, int s1, int s2) {
  const int n = t.arity();
  Tensor out;
  out.min_vertex_id = t.min_vertex_id;
  for (int s = 0; s < n; ++s)
    if (s != s1 && s != s2) out.edge_of_slot.push_back(t.edge_of_slot[s]);
  const int m = n - 2;
  out.vals.assign(std::size_t{1} << m, t.vals[0].zero_like());
  for (std::size_t i = 0; i < t.vals.size(); ++i) {
    if (detail::arg_bit(i, s1, n) != detail::arg_bit(i, s2, n)) continue;
    std::size_t j = 0;
    int pos = 0;
    for (int s = 0; s < n; ++s) {
      if (s == s1 || s == s2) continue;
      j = detail::with_arg_bit(j, pos++, m, detail::arg_bit(i, s, n));
    }
    out.vals[j] += t.vals[i];
  }
  return out;
}

Tensor contract_pair(const Tensor& a, const Tensor& b) {
  std::set<int> shared;
  for (int e : a.edge_of_slot)
    if (std::find(b.edge_of_slot.begin(), b.edge_of_slot.end(), e) != b.edge_of_slot.end())
      shared.insert(e);
  const int na = a.arity(), nb = b.arity();
  Tensor out;
  out.min_vertex_id = std::min(a.min_vertex_id, b.min_vertex_id);
  std::vector<int> a_keep, b_keep, a_sh, b_sh;
  for (int s = 0; s < na; ++s) {
    if (shared.count(a.edge_of_slot[s])) a_sh.push_back(s);
    else {
      a_keep.push_back(s);
      out.edge_of_slot.push_back(a.edge_of_slot[s]);
    }
  }
  for (int s = 0; s < nb; ++s) {
    if (shared.count(b.edge_of_slot[s])) b_sh.push_back(s);
    else {
      b_keep.push_back(s);
      out.edge_of_slot.push_back(b.edge_of_slot[s]);
    }
  }
  // align shared slots by edge id
  std::sort(a_sh.begin(), a_sh.end(), [&](int x, int y) {
    return a.edge_of_slot[x] < a.edge_of_slot[y];
  });
  std::sort(b_sh.begin(), b_sh.end(), [&](int x, int y) {
    return b.edge_of_slot[x] < b.edge_of_slot[y];
  });
  const int k = static_cast<int>(a_sh.size());
  const int m = static_cast<int>(out.edge_of_slot.size());
  out.vals.assign(std::size_t{1} << m, a.vals[0].zero_like());
  for (std::size_t ia = 0; ia < a.vals.size(); ++ia) {
    if (a.vals[ia].is_zero()) continue;
    // shared pattern from a
    std::size_t sh = 0;
    for (int t = 0; t < k; ++t) sh = (sh << 1) | detail::arg_bit(ia, a_sh[t], na);
    std::size_t ja = 0;
    int pos = 0;
    for (int s : a_keep) ja = detail::with_arg_bit(ja, pos++, m, detail::arg_bit(ia, s, na));
    for (std::size_t ib = 0; ib < b.vals.size(); ++ib) {
      if (b.vals[ib].is_zero()) continue;
      std::size_t sh2 = 0;
      for (int t = 0; t < k; ++t) sh2 = (sh2 << 1) | detail::arg_bit(ib, b_sh[t], nb);
      if (sh2 != sh) continue;
      std::size_t j = ja;
      int pos2 = static_cast<int>(a_keep.size());
      for (int s : b_keep) j = detail::with_arg_bit(j, pos2++, m, detail::arg_bit(ib, s, nb));
      out.vals[j] += a.vals[ia] * b.vals[ib];
    }
  }
  return out;
}

void trace_self_loops(Tensor& t) {
  for (;;) {
    bool done = true;
    for (int s1 = 0; s1 < t.arity() && done; ++s1) {
      for (int s2 = s1 + 1; s2 < t.arity() && done; ++s2) {
        if (t.edge_of_slot[s1] == t.edge_of_slot[s2]) {
          t = trace_out(t, s1, s2);
          done = false;
        }
      }
    }
    if (done) return;
  }
}

}  // namespace

Scalar holant_contract(const SignatureGrid& grid, int max_intermediate_arity) {
  require_closed(grid);
  if (grid.vertices.empty()) return Scalar(1);

  std::vector<Tensor> live;
  for (int v = 0; v < static_cast<int>(grid.vertices.size()); ++v) {
    Tensor t;
    t.vals = grid.vertices[v].values();
    t.edge_of_slot.assign(grid.vertices[v].arity(), -1);
    t.min_vertex_id = v;
    live.push_back(std::move(t));
  }
  for (int e = 0; e < static_cast<int>(grid.edges.size()); ++e) {
    live[grid.edges[e].a.vertex].edge_of_slot[grid.edges[e].a.slot] = e;
    live[grid.edges[e].b.vertex].edge_of_slot[grid.edges[e].b.slot] = e;
  }
  for (auto& t : live) trace_self_loops(t);

  while (live.size() > 1) {
    // greedy: smallest resulting arity, ties by smallest (min_vertex_id pair)
    int bi = -1, bj = -1, best = -1;
    std::pair<int, int> best_ids{0, 0};
    for (int i = 0; i < static_cast<int>(live.size()); ++i) {
      for (int j = i + 1; j < static_cast<int>(live.size()); ++j) {
        int shared = 0;
        for (int e : live[i].edge_of_slot)
          if (std::find(live[j].edge_of_slot.begin(), live[j].edge_of_slot.end(), e) !=
              live[j].edge_of_slot.end())
            ++shared;
        if (shared == 0) continue;
        const int res = live[i].arity() + live[j].arity() - 2 * shared;
        const std::pair<int, int> ids{std::min(live[i].min_vertex_id, live[j].min_vertex_id),
                                      std::max(live[i].min_vertex_id, live[j].min_vertex_id)};
        if (bi < 0 || res < best || (res == best && ids < best_ids)) {
          bi = i;
          bj = j;
          best = res;
          best_ids = ids;
        }
      }
    }
    if (bi < 0) break;  // disconnected remainder: all are closed components
    if (best > max_intermediate_arity)
      throw std::runtime_error("contraction intermediate arity exceeds cap");
    Tensor merged = contract_pair(live[bi], live[bj]);
    trace_self_loops(merged);
    live.erase(live.begin() + bj);
    live.erase(live.begin() + bi);
    live.push_back(std::move(merged));
  }

  Scalar result(1);
  bool has = false;
  for (const auto& t : live) {
    if (t.arity() != 0) throw std::logic_error("contraction left open slots");
    result = has ? result * t.vals[0] : t.vals[0];
    has = true;
  }
  return has ? result : Scalar(1);
}

namespace {

// Expanded view: every vertex signature replaced by its tensor factors.
struct ExpandedGrid {
  SignatureGrid grid;
  Scalar scale = Scalar(1);  // product of the inverses of factorisation scalars
};

ExpandedGrid expand_factors(const SignatureGrid& grid) {
  ExpandedGrid out;
  if (!grid.vertices.empty()) out.scale = grid.vertices[0][0].one_like();
  std::map<std::pair<int, int>, EdgeEnd> slot_map;  // old (v, slot) -> new end
  for (int v = 0; v < static_cast<int>(grid.vertices.size()); ++v) {
    const auto& f = grid.vertices[v];
    if (f.is_zero()) throw std::invalid_argument("identically-zero signature in grid");
    const auto fz = factorize(f);
    out.scale *= fz.scale.inverse();
    for (const auto& fac : fz.factors) {
      const int nv = static_cast<int>(out.grid.vertices.size());
      out.grid.vertices.push_back(fac.factor);
      for (int pos = 0; pos < static_cast<int>(fac.slots.size()); ++pos)
        slot_map[{v, fac.slots[pos]}] = EdgeEnd{nv, pos};
    }
  }
  for (const auto& e : grid.edges)
    out.grid.edges.push_back({slot_map.at({e.a.vertex, e.a.slot}),
                              slot_map.at({e.b.vertex, e.b.slot})});
  return out;
}

}  // namespace

Scalar holant_binary_chain(const SignatureGrid& grid) {
  require_closed(grid);
  for (const auto& f : grid.vertices) {
    if (!in_T_closure(f))
      throw std::invalid_argument("binary-chain evaluation requires signatures in <T>");
  }
  ExpandedGrid ex = expand_factors(grid);
  const auto& g = ex.grid;
  const int nv = static_cast<int>(g.vertices.size());

  // adjacency through slots
  std::map<std::pair<int, int>, int> edge_at;  // (vertex, slot) -> edge
  for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
    edge_at[{g.edges[e].a.vertex, g.edges[e].a.slot}] = e;
    edge_at[{g.edges[e].b.vertex, g.edges[e].b.slot}] = e;
  }
  auto other_end = [&](int e, int v, int s) -> EdgeEnd {
    const auto& ed = g.edges[e];
    if (ed.a.vertex == v && ed.a.slot == s) return ed.b;
    return ed.a;
  };

  Scalar total = ex.scale;
  std::vector<bool> used(nv, false);
  for (int v0 = 0; v0 < nv; ++v0) {
    if (used[v0]) continue;
    const int n0 = g.vertices[v0].arity();
    if (n0 == 0) {
      used[v0] = true;
      total *= g.vertices[v0][0];
      continue;
    }
    if (n0 == 1) {
      // start of a path: walk to the other end accumulating a row vector
      used[v0] = true;
      Scalar row[2] = {g.vertices[v0][0], g.vertices[v0][1]};
      EdgeEnd cur = other_end(edge_at.at({v0, 0}), v0, 0);
      for (;;) {
        const auto& f = g.vertices[cur.vertex];
        used[cur.vertex] = true;
        if (f.arity() == 1) {
          total *= row[0] * f[0] + row[1] * f[1];
          break;
        }
        // binary: entering via cur.slot
        Scalar m00 = f[0], m01 = f[1], m10 = f[2], m11 = f[3];
        if (cur.slot == 1) {
          std::swap(m01, m10);
        }
        Scalar nr0 = row[0] * m00 + row[1] * m10;
        Scalar nr1 = row[0] * m01 + row[1] * m11;
        row[0] = nr0;
        row[1] = nr1;
        const int out_slot = 1 - cur.slot;
        cur = other_end(edge_at.at({cur.vertex, out_slot}), cur.vertex, out_slot);
      }
    }
  }
  // remaining components are cycles of binary vertices
  for (int v0 = 0; v0 < nv; ++v0) {
    if (used[v0]) continue;
    used[v0] = true;
    const auto& f0 = g.vertices[v0];
    Scalar m[2][2] = {{f0[0], f0[1]}, {f0[2], f0[3]}};
    // single vertex with a self-loop on itself: trace directly
    const int e_out = edge_at.at({v0, 1});
    EdgeEnd cur = other_end(e_out, v0, 1);
    while (!(cur.vertex == v0 && cur.slot == 0)) {
      const auto& f = g.vertices[cur.vertex];
      used[cur.vertex] = true;
      Scalar b00 = f[0], b01 = f[1], b10 = f[2], b11 = f[3];
      if (cur.slot == 1) std::swap(b01, b10);
      Scalar n00 = m[0][0] * b00 + m[0][1] * b10;
      Scalar n01 = m[0][0] * b01 + m[0][1] * b11;
      Scalar n10 = m[1][0] * b00 + m[1][1] * b10;
      Scalar n11 = m[1][0] * b01 + m[1][1] * b11;
      m[0][0] = n00;
      m[0][1] = n01;
      m[1][0] = n10;
      m[1][1] = n11;
      const int out_slot = 1 - cur.slot;
      cur = other_end(edge_at.at({cur.vertex, out_slot}), cur.vertex, out_slot);
    }
    total *= m[0][0] + m[1][1];
  }
  return total;
}

Scalar holant_generalized_equality(const SignatureGrid& grid, const Mat2& transform) {
  require_closed(grid);
  if (!transform.invertible() || !transform.orthogonal_up_to_scalar())
    throw std::invalid_argument("transform must be orthogonal up to a scalar");
  const Mat2 inv = transform.inverse();
  const Scalar lambda = (transform.transpose() * transform).a;

  SignatureGrid work = grid;
  const bool trivial = transform == Mat2::identity();
  if (!trivial) {
    for (auto& f : work.vertices) f = holant::transform(inv, f);
  }
  ExpandedGrid ex = expand_factors(work);
  const auto& g = ex.grid;
  const int nv = static_cast<int>(g.vertices.size());

  // every factor must be supported on a complementary input pair
  std::vector<std::size_t> pattern(nv, 0);
  for (int v = 0; v < nv; ++v) {
    const auto& f = g.vertices[v];
    const auto supp = support(f);
    if (supp.empty()) throw std::invalid_argument("zero factor in grid");
    const std::size_t full = f.size() - 1;
    if (supp.size() > 2 || (supp.size() == 2 && (supp[0] ^ supp[1]) != full))
      throw std::invalid_argument(
          "a signature does not lie in the generalized-equality closure");
    pattern[v] = supp[0];
  }

  // propagate: per component, the two complementary seeds
  const int ne = static_cast<int>(g.edges.size());
  std::map<std::pair<int, int>, int> edge_at;
  for (int e = 0; e < ne; ++e) {
    edge_at[{g.edges[e].a.vertex, g.edges[e].a.slot}] = e;
    edge_at[{g.edges[e].b.vertex, g.edges[e].b.slot}] = e;
  }
  std::vector<int> comp(nv, -1);
  int ncomp = 0;
  for (int v0 = 0; v0 < nv; ++v0) {
    if (comp[v0] >= 0) continue;
    std::vector<int> stack{v0};
    comp[v0] = ncomp;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges) {
        int w = -1;
        if (e.a.vertex == v) w = e.b.vertex;
        else if (e.b.vertex == v) w = e.a.vertex;
        if (w >= 0 && comp[w] < 0) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }

  Scalar total = ex.scale * lambda.pow(static_cast<long>(grid.edges.size()));
  for (int cidx = 0; cidx < ncomp; ++cidx) {
    // seed: lowest vertex of the component decides with its pattern/flip
    int seed = -1;
    for (int v = 0; v < nv && seed < 0; ++v)
      if (comp[v] == cidx) seed = v;
    Scalar comp_sum(0);
    bool got = false;
    for (int flip = 0; flip < 2; ++flip) {
      // assign per-vertex choice: pattern or its complement
      std::vector<int> choice(nv, -1);
      choice[seed] = flip;
      std::vector<int> stack{seed};
      bool consistent = true;
      while (!stack.empty() && consistent) {
        const int v = stack.back();
        stack.pop_back();
        const auto& f = g.vertices[v];
        const std::size_t pat =
            choice[v] ? (f.size() - 1) ^ pattern[v] : pattern[v];
        for (int s = 0; s < f.arity(); ++s) {
          auto it = edge_at.find({v, s});
          if (it == edge_at.end()) continue;
          const auto& ed = g.edges[it->second];
          const EdgeEnd me{v, s};
          const EdgeEnd other = (ed.a == me) ? ed.b : ed.a;
          const int bit = detail::arg_bit(pat, s, f.arity());
          const auto& fo = g.vertices[other.vertex];
          const int obit =
              detail::arg_bit(pattern[other.vertex], other.slot, fo.arity());
          const int need = (bit == obit) ? 0 : 1;
          if (choice[other.vertex] < 0) {
            choice[other.vertex] = need;
            stack.push_back(other.vertex);
          } else if (choice[other.vertex] != need) {
            consistent = false;
            break;
          }
        }
      }
      if (!consistent) continue;  // a frustrated cycle contributes nothing
      Scalar term = ex.scale.one_like();
      bool dead = false;
      for (int v = 0; v < nv && !dead; ++v) {
        if (comp[v] != cidx) continue;
        const auto& f = g.vertices[v];
        const std::size_t pat = choice[v] ? (f.size() - 1) ^ pattern[v] : pattern[v];
        if (f[pat].is_zero()) dead = true;
        else term *= f[pat];
      }
      if (dead) continue;
      comp_sum = got ? comp_sum + term : term;
      got = true;
    }
    if (!got) return backend_zero(grid);
    total *= comp_sum;
  }
  return total;
}

Scalar holant_affine(const SignatureGrid& grid) {
  require_closed(grid);
  const int ne = static_cast<int>(grid.edges.size());
  if (ne > 63) throw std::invalid_argument("affine evaluation limited to 63 edges");

  PhaseSystem sys(ne);
  std::map<std::pair<int, int>, int> edge_at;
  for (int e = 0; e < ne; ++e) {
    edge_at[{grid.edges[e].a.vertex, grid.edges[e].a.slot}] = e;
    edge_at[{grid.edges[e].b.vertex, grid.edges[e].b.slot}] = e;
  }

  for (int v = 0; v < static_cast<int>(grid.vertices.size()); ++v) {
    const auto& f = grid.vertices[v];
    auto form = affine_normal_form(f);
    if (!form) throw std::invalid_argument("non-affine signature in grid");
    if (form->c.is_zero()) return backend_zero(grid);
    sys.multiply(form->c);
    const int n = f.arity();
    auto edge_of = [&](int slot) { return edge_at.at({v, slot}); };
    // support constraints: rows of the orthogonal complement of the basis
    {
      // find all y with y . b_i = 0 via Gaussian elimination over F2
      std::vector<std::uint32_t> rows = form->basis;
      // complement basis: iterate unit vectors, reduce against echelon of rows^T
      // Simpler: collect the parity-check rows by solving for each non-pivot.
      // Echelonise basis with recorded pivots:
      std::vector<std::uint32_t> eb;
      std::vector<int> pivots;
      for (std::uint32_t b : rows) {
        std::uint32_t r = b;
        for (std::size_t i = 0; i < eb.size(); ++i)
          if (r & (1u << pivots[i])) r ^= eb[i];
        if (!r) continue;
        int pb = 31;
        while (!(r & (1u << pb))) --pb;
        for (std::size_t i = 0; i < eb.size(); ++i)
          if (eb[i] & (1u << pb)) eb[i] ^= r;
        eb.push_back(r);
        pivots.push_back(pb);
      }
      std::vector<bool> is_pivot(n, false);
      for (int p : pivots) is_pivot[p] = true;
      for (int s = 0; s < n; ++s) {
        if (is_pivot[s]) continue;
        // check row: x_s = sum over pivots p with eb-vector containing s
        std::uint64_t row = 0;
        int parity = (form->offset >> s) & 1;
        row ^= std::uint64_t{1} << edge_of(s);
        for (std::size_t i = 0; i < eb.size(); ++i) {
          if (eb[i] & (1u << s)) {
            row ^= std::uint64_t{1} << edge_of(pivots[i]);
            parity ^= (form->offset >> pivots[i]) & 1;
          }
        }
        sys.add_constraint(row, parity);
      }
    }
    for (int s = 0; s < n; ++s) sys.add_linear(edge_of(s), form->linear[s]);
    for (int s = 0; s < n; ++s)
      for (int t2 = s + 1; t2 < n; ++t2)
        if (form->quad[s] & (1u << t2)) sys.add_cross(edge_of(s), edge_of(t2));
  }
  return sys.evaluate();
}

Scalar holant_eval(const SignatureGrid& grid, EvalMethod method) {
  switch (method) {
    case EvalMethod::Brute:
      return holant_bruteforce(grid);
    case EvalMethod::Contract:
      return holant_contract(grid);
    case EvalMethod::Chain:
      return holant_binary_chain(grid);
    case EvalMethod::GenEq:
      return holant_generalized_equality(grid);
    case EvalMethod::Affine:
      return holant_affine(grid);
    case EvalMethod::Auto: {
      bool all_t = true, all_aff = true, all_e = true;
      for (const auto& f : grid.vertices) {
        if (f.is_zero()) return backend_zero(grid);
        if (all_t && !in_T_closure(f)) all_t = false;
        if (all_aff && !is_affine(f)) all_aff = false;
        if (all_e && !in_E_closure(f)) all_e = false;
      }
      if (all_t) return holant_binary_chain(grid);
      if (all_aff) return holant_affine(grid);
      if (all_e) return holant_generalized_equality(grid);
      return holant_contract(grid);
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace holant
