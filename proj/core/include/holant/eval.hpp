#pragma once

#include <optional>

#include "holant/grid.hpp"
#include "holant/mat2.hpp"

namespace holant {

/// Direct sum over all edge assignments.  The universal oracle; exponential
/// in the edge count.
Scalar holant_bruteforce(const SignatureGrid& grid);

/// Pairwise tensor contraction with a greedy smallest-intermediate-arity
/// order, ties broken by lowest vertex id.  Same value as brute force.
Scalar holant_contract(const SignatureGrid& grid, int max_intermediate_arity = 16);

/// Polynomial-time evaluator for grids whose signatures all decompose into
/// unary and binary factors: expand the factors, then multiply matrices
/// along the resulting paths and cycles.
Scalar holant_binary_chain(const SignatureGrid& grid);

/// Polynomial-time evaluator for grids that a holographic transform carries
/// into generalized-equality form: every signature of transform^{-1} o grid
/// must lie in the tensor closure of functions supported on a complementary
/// input pair.  The transform must be orthogonal up to a scalar.
Scalar holant_generalized_equality(const SignatureGrid& grid,
                                   const Mat2& transform = Mat2::identity());

/// Polynomial-time evaluator for all-affine grids via a quadratic Gauss sum
/// over the edge variables.
Scalar holant_affine(const SignatureGrid& grid);

enum class EvalMethod { Brute, Contract, Chain, GenEq, Affine, Auto };

/// Dispatch by family detection; falls back to contraction.
Scalar holant_eval(const SignatureGrid& grid, EvalMethod method);

}  // namespace holant
