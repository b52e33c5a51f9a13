#include "holant/grid.hpp"

#include <algorithm>
#include <stdexcept>

#include "holant/detail/tensor_ops.hpp"

namespace holant {

int SignatureGrid::degree(int v) const {
  int d = 0;
  for (const auto& e : edges) {
    if (e.a.vertex == v) ++d;
    if (e.b.vertex == v) ++d;
  }
  return d;
}

namespace {

void validate_ends(const SignatureGrid& g, const std::vector<EdgeEnd>& dangling,
                   Diagnostics& out) {
  const int nv = static_cast<int>(g.vertices.size());
  // every slot of every vertex used exactly once
  std::vector<std::vector<int>> uses(nv);
  for (int v = 0; v < nv; ++v) uses[v].assign(g.vertices[v].arity(), 0);
  auto touch = [&](const EdgeEnd& e, const char* what) {
    if (e.vertex < 0 || e.vertex >= nv) {
      out.issues.push_back(std::string(what) + ": vertex " + std::to_string(e.vertex) +
                           " does not exist");
      return;
    }
    if (e.slot < 0 || e.slot >= g.vertices[e.vertex].arity()) {
      out.issues.push_back(std::string(what) + ": slot " + std::to_string(e.slot) +
                           " out of range for vertex " + std::to_string(e.vertex));
      return;
    }
    ++uses[e.vertex][e.slot];
  };
  for (const auto& e : g.edges) {
    touch(e.a, "edge");
    touch(e.b, "edge");
  }
  for (const auto& d : dangling) touch(d, "dangling edge");
  for (int v = 0; v < nv; ++v) {
    for (int s = 0; s < static_cast<int>(uses[v].size()); ++s) {
      if (uses[v][s] == 0)
        out.issues.push_back("vertex " + std::to_string(v) + " slot " + std::to_string(s) +
                             " is unused (degree does not match arity)");
      else if (uses[v][s] > 1)
        out.issues.push_back("vertex " + std::to_string(v) + " slot " + std::to_string(s) +
                             " is used " + std::to_string(uses[v][s]) + " times");
    }
  }
  for (const auto& [v, order] : g.rotation) {
    if (v < 0 || v >= nv) {
      out.issues.push_back("rotation lists unknown vertex " + std::to_string(v));
      continue;
    }
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    bool good = static_cast<int>(sorted.size()) == g.vertices[v].arity();
    for (int s = 0; good && s < static_cast<int>(sorted.size()); ++s) good = sorted[s] == s;
    if (!good)
      out.issues.push_back("rotation of vertex " + std::to_string(v) +
                           " is not a cyclic order of its slots");
  }
}

}  // namespace

Diagnostics validate(const SignatureGrid& grid) {
  Diagnostics d;
  validate_ends(grid, {}, d);
  return d;
}

Diagnostics validate(const Gadget& gadget) {
  Diagnostics d;
  validate_ends(gadget.grid, gadget.dangling, d);
  return d;
}

Signature effective_signature(const Gadget& gadget) {
  const Diagnostics d = validate(gadget);
  if (!d.ok()) throw std::invalid_argument("invalid gadget: " + d.issues.front());

  const auto& g = gadget.grid;
  const int nv = static_cast<int>(g.vertices.size());
  const int ne = static_cast<int>(g.edges.size());
  const int nd = static_cast<int>(gadget.dangling.size());
  if (ne + nd > 26) throw std::invalid_argument("gadget too large for direct evaluation");

  const bool exact = nv == 0 || g.vertices[0][0].is_exact();
  const Scalar zero = exact ? Scalar(0) : Scalar::approx({0, 0});

  // slot -> position of the controlling bit (edge index, or ne + dangling pos)
  std::vector<std::vector<int>> slot_bit(nv);
  for (int v = 0; v < nv; ++v) slot_bit[v].assign(g.vertices[v].arity(), -1);
  for (int e = 0; e < ne; ++e) {
    slot_bit[g.edges[e].a.vertex][g.edges[e].a.slot] = e;
    slot_bit[g.edges[e].b.vertex][g.edges[e].b.slot] = e;
  }
  for (int k = 0; k < nd; ++k)
    slot_bit[gadget.dangling[k].vertex][gadget.dangling[k].slot] = ne + k;

  std::vector<Scalar> out(std::size_t{1} << nd, zero);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    // argument k of the result is dangling edge k (first argument = MSB)
    std::size_t ybits = 0;
    for (int k = 0; k < nd; ++k)
      ybits |= static_cast<std::size_t>(detail::arg_bit(idx, k, nd)) << k;
    Scalar sum = zero;
    for (std::size_t sigma = 0; sigma < (std::size_t{1} << ne); ++sigma) {
      const std::size_t all = sigma | (ybits << ne);
      Scalar term(1);
      bool has = false, dead = false;
      for (int v = 0; v < nv && !dead; ++v) {
        const int n = g.vertices[v].arity();
        std::size_t idx = 0;
        for (int s = 0; s < n; ++s)
          idx = detail::with_arg_bit(idx, s, n, static_cast<int>((all >> slot_bit[v][s]) & 1));
        const Scalar& val = g.vertices[v][idx];
        if (val.is_zero()) dead = true;
        else {
          term = has ? term * val : val;
          has = true;
        }
      }
      if (dead) continue;
      sum += has ? term : Scalar(1);
    }
    out[idx] = sum;
  }
  return {nd, std::move(out)};
}

int genus(const SignatureGrid& grid) {
  const Diagnostics d = validate(grid);
  if (!d.ok()) throw std::invalid_argument("invalid grid: " + d.issues.front());
  const int nv = static_cast<int>(grid.vertices.size());
  for (int v = 0; v < nv; ++v) {
    if (grid.vertices[v].arity() > 0 && grid.rotation.find(v) == grid.rotation.end())
      throw std::invalid_argument("genus requires a rotation system on every vertex");
  }

  const int ne = static_cast<int>(grid.edges.size());
  // darts: 2 per edge; dart 2e is edge e at end a, 2e+1 at end b
  auto dart_end = [&](int dt) -> const EdgeEnd& {
    return (dt & 1) ? grid.edges[dt / 2].b : grid.edges[dt / 2].a;
  };
  // per-vertex successor in the rotation order
  std::map<std::pair<int, int>, int> dart_at;  // (vertex, slot) -> dart
  for (int dt = 0; dt < 2 * ne; ++dt) {
    const auto& e = dart_end(dt);
    dart_at[{e.vertex, e.slot}] = dt;
  }
  std::vector<int> sigma(2 * ne, -1);
  for (int v = 0; v < nv; ++v) {
    auto it = grid.rotation.find(v);
    if (it == grid.rotation.end()) continue;
    const auto& order = it->second;
    const int deg = static_cast<int>(order.size());
    for (int p = 0; p < deg; ++p) {
      const int from = dart_at.at({v, order[p]});
      const int to = dart_at.at({v, order[(p + 1) % deg]});
      sigma[from] = to;
    }
  }

  // connected components over vertices (via edges)
  std::vector<int> comp(nv, -1);
  int ncomp = 0;
  for (int v0 = 0; v0 < nv; ++v0) {
    if (comp[v0] >= 0) continue;
    std::vector<int> stack{v0};
    comp[v0] = ncomp;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& e : grid.edges) {
        for (int w : {e.a.vertex == v ? e.b.vertex : -1, e.b.vertex == v ? e.a.vertex : -1}) {
          if (w >= 0 && comp[w] < 0) {
            comp[w] = ncomp;
            stack.push_back(w);
          }
        }
      }
    }
    ++ncomp;
  }

  std::vector<int> cv(ncomp, 0), cedge(ncomp, 0), cface(ncomp, 0);
  for (int v = 0; v < nv; ++v) ++cv[comp[v]];
  for (const auto& e : grid.edges) ++cedge[comp[e.a.vertex]];
  // trace faces: next dart of a face is sigma(twin(d))
  std::vector<bool> seen(2 * ne, false);
  for (int d0 = 0; d0 < 2 * ne; ++d0) {
    if (seen[d0]) continue;
    int dt = d0;
    do {
      seen[dt] = true;
      const int twin = dt ^ 1;
      dt = sigma[twin];
    } while (dt != d0);
    ++cface[comp[dart_end(d0).vertex]];
  }

  int total = 0;
  for (int cidx = 0; cidx < ncomp; ++cidx) {
    if (cedge[cidx] == 0) continue;  // isolated vertices are planar
    const int chi = cv[cidx] - cedge[cidx] + cface[cidx];
    total += (2 - chi) / 2;
  }
  return total;
}

}  // namespace holant
