#pragma once

#include <optional>
#include <vector>

#include "holant/mat2.hpp"
#include "holant/signature.hpp"

namespace holant {

enum class EntangleTag {
  Degenerate,
  DecomposableNontrivial,
  GHZ,
  W,
  BinaryEntangled,
  HigherUnclassified,
};

struct TensorFactor {
  std::vector<int> slots;  // ascending argument subset
  Signature factor;
};

/// Finest decomposition into non-decomposable tensor factors.  With scale c,
/// the pointwise product of the factors equals c * f exactly.
struct Factorization {
  std::vector<TensorFactor> factors;
  Scalar scale = Scalar(1);
  bool degenerate() const;
  bool decomposable() const { return factors.size() > 1; }
};

Factorization factorize(const Signature& f);  // rejects the zero signature

bool is_decomposable(const Signature& f);
bool is_degenerate(const Signature& f);

struct EntanglementClass {
  EntangleTag tag;
  std::vector<std::vector<int>> partition;  // factor slots
  std::optional<Mat2> witness;              // GHZ: M with M o EQ3 ~ f
};

/// Entanglement class of a ternary signature via the degree-4 invariant and
/// the three pair conditions.
EntanglementClass classify_ternary(const Signature& f);

EntanglementClass classify_ternary_symmetric(const SymSignature& f);

/// Any-arity convenience classification (ternary cases delegate to the
/// invariant-based test).
EntanglementClass classify_entanglement(const Signature& f);

/// The polynomial of the ternary GHZ test; non-zero iff GHZ type.
Scalar ghz_invariant(const Signature& f);

/// M with M o EQ3 equal to f up to a non-zero scalar, for symmetric
/// GHZ-type input.  Exact backend: throws field_error when no such M exists
/// over the conductor-24 field.
Mat2 ghz_witness(const SymSignature& f);

/// M with M o [1,1,0,0] equal to f up to a non-zero scalar, for W-type
/// symmetric input.  The fit is rational, so it stays in the field.
Mat2 w_state_witness(const SymSignature& f);

namespace detail_witness {

/// Root data behind ghz_witness, shared with the classifiers: f is, up to
/// X-flips and scalars, A*(1,r1)^(x3) + B*(1,r2)^(x3), where r1, r2 are the
/// roots of z^2 - p z - q (r2 = "infinity" encodes column (0,1)).
struct GhzRoots {
  bool flipped = false;          // X applied to all legs first
  bool r2_infinite = false;      // second direction is (0, 1)
  Scalar p = Scalar(0), q = Scalar(0);  // recurrence when both roots finite
  std::optional<Scalar> r1, r2;  // set when representable in the field
  Scalar big_a = Scalar(0), big_b = Scalar(0);  // weights
};

GhzRoots ghz_roots(const SymSignature& f);

}  // namespace detail_witness

}  // namespace holant
