#pragma once

#include <optional>
#include <vector>

#include "holant/mat2.hpp"
#include "holant/signature.hpp"

namespace holant {

enum class FamilyTag {
  Tclosure,
  Eclosure,
  Mclosure,
  Affine,
  LocalAffine,
  Bset,
  BAgroup,
  MatchgateParity,
};

/// f decomposes into unary and binary factors.
bool in_T_closure(const Signature& f);

/// Every tensor factor of transform^{-1} o f is supported on a pair of
/// complementary inputs (a generalized equality).
bool in_E_closure(const Signature& f, const std::optional<Mat2>& transform = std::nullopt);

/// Every tensor factor of transform^{-1} o f vanishes on inputs of Hamming
/// weight above 1.
bool in_M_closure(const Signature& f, const std::optional<Mat2>& transform = std::nullopt);

bool in_affine(const Signature& f);

/// For every a in supp(f), the T-twist of f indexed by a is affine.
bool in_local_affine(const Signature& f);

/// m^T o {EQ2, delta_0, delta_1} all affine.
bool in_B(const Mat2& m);

/// The binary function of m itself is affine (a group under multiplication).
bool in_B_A(const Mat2& m);

/// f vanishes on all even-weight inputs or on all odd-weight inputs
/// (arity <= 3 matchgate criterion).
bool matchgate_parity(const Signature& f);

struct OmegaNormalisation {
  SymSignature normalised;
  Mat2 transform;  // diag(1, w) with w^3 = 1; identity when unchanged
  bool changed = false;
};

/// Canonical form of a unary or binary symmetric signature under
/// diag(1, omega) twists with omega a cube root of unity.
OmegaNormalisation omega_normalise(const SymSignature& f);

bool is_omega_normalised(const SymSignature& f);

/// Projective representatives of all matrices m with
/// m^T o {EQ2, delta_0, delta_1} affine whose entries lie in the exact
/// field: rows are forced to be scalings of the six affine unary directions,
/// which leaves finitely many candidates up to scale.
const std::vector<Mat2>& b_set_representatives();

}  // namespace holant
