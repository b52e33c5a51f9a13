#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holant/families.hpp"
#include "holant/mat2.hpp"
#include "holant/signature.hpp"

namespace holant {

enum class Problem {
  Conservative,     // all unary signatures freely available
  HolantPlus,       // delta_0, delta_1, delta_+, delta_- available
  HolantC,          // delta_0, delta_1 available
  Csp,              // #CSP: all equalities available
  Csp2c,            // #CSP_2^c: even variable occurrences plus pinning
  PlanarBinary,     // Pl-Holant({g} | {EQ3}) for symmetric binary g
  TernaryBipartite  // Holant({y} | {x}), symmetric binary y / ternary x
};

/// One tractable case, with its outcome: either the verified witness data or
/// the first family member defeating it.
struct CaseCheck {
  std::string name;
  bool holds = false;
  std::string detail;
  std::optional<int> failing_index;  // index into the input family
};

struct Verdict {
  Problem problem;
  bool polytime = false;
  std::string case_name;               // set when polytime
  std::optional<Mat2> transform;       // witness transform when one exists in the field
  std::vector<CaseCheck> checks;       // every case examined, in order
  std::vector<std::string> trace;      // full decision trace
  bool planar_valid = false;           // verdict also applies to planar instances
};

Verdict classify_conservative(const std::vector<Signature>& family);
Verdict classify_holant_plus(const std::vector<Signature>& family);
Verdict classify_holant_c(const std::vector<Signature>& family);
Verdict classify_csp(const std::vector<Signature>& family);
Verdict classify_csp2c(const std::vector<Signature>& family);

/// Pl-Holant({g} | {EQ3}): generalized equality, an affine cube-root twist,
/// or the [a,1,b] matchgate condition a^3 = b^3; hard otherwise.  The
/// algebraic X = ab, Y = a^3 + b^3 conditions are cross-checked.
Verdict classify_planar_binary(const SymSignature& g);

/// Holant({y} | {x}) with symmetric binary y and symmetric ternary x.
Verdict classify_ternary_bipartite(const SymSignature& y, const SymSignature& x);

}  // namespace holant
