#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holant/signature.hpp"

namespace holant {

/// One end of an edge: an argument slot of a vertex (0-based).
struct EdgeEnd {
  int vertex = 0;
  int slot = 0;
  bool operator==(const EdgeEnd& o) const { return vertex == o.vertex && slot == o.slot; }
  bool operator<(const EdgeEnd& o) const {
    return vertex != o.vertex ? vertex < o.vertex : slot < o.slot;
  }
};

struct Edge {
  EdgeEnd a, b;
};

/// Multigraph with a signature per vertex and an explicit edge-argument
/// bijection recorded on the edge ends.  Self-loops and parallel edges are
/// allowed.  An optional rotation system (cyclic slot order per vertex)
/// carries embedding information.
struct SignatureGrid {
  std::vector<Signature> vertices;
  std::vector<Edge> edges;
  std::map<int, std::vector<int>> rotation;  // vertex -> slot order

  int degree(int v) const;
};

/// Grid fragment with ordered dangling edges; their order defines the
/// argument order of the effective signature.
struct Gadget {
  SignatureGrid grid;
  std::vector<EdgeEnd> dangling;
};

struct Diagnostics {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

Diagnostics validate(const SignatureGrid& grid);
Diagnostics validate(const Gadget& gadget);

/// Sum over internal edge assignments of the product of vertex values; the
/// dangling edges, in order, are the arguments of the result.  A closed grid
/// yields an arity-0 signature holding the holant.
Signature effective_signature(const Gadget& gadget);

/// Euler-formula genus of the embedding given by the rotation system,
/// summed over connected components; 0 certifies a planar embedding.
int genus(const SignatureGrid& grid);

}  // namespace holant
