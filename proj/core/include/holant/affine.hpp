#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "holant/signature.hpp"

namespace holant {

/// Normal form of an affine signature: c * i^{phase(x)} on an affine
/// support, 0 elsewhere, with
///   phase(x) = sum_j linear[j] x_j + 2 * sum_{j<k} quad_{jk} x_j x_k  (mod 4).
/// The support is the coset offset + span(basis); assignments are slot
/// bitmasks with bit j = argument slot j.
struct AffineForm {
  int arity = 0;
  Scalar c = Scalar(0);
  std::vector<std::uint32_t> basis;  // independent F2 vectors (slot bits)
  std::uint32_t offset = 0;
  std::vector<std::uint8_t> linear;  // Z4 coefficient per slot
  std::vector<std::uint32_t> quad;   // row j: bits k>j with a cross term

  bool in_support(std::uint32_t x) const;
  int phase(std::uint32_t x) const;  // mod 4, meaningful on support
  Scalar evaluate(std::uint32_t x) const;
  Signature to_signature() const;
};

/// Present iff f is affine (the stabilizer-state family).
std::optional<AffineForm> affine_normal_form(const Signature& f);

bool is_affine(const Signature& f);

/// Sum of c * i^{phase(t)} over t in F2^n subject to linear constraints,
/// where phase is a Z4-linear-plus-twice-quadratic polynomial.  Evaluated
/// in polynomial time by variable elimination; each step either produces a
/// factor (1 +- i) and a linear phase correction, or a factor 2 and a
/// linear constraint.
class PhaseSystem {
 public:
  explicit PhaseSystem(int nvars);

  int vars() const { return n_; }
  void multiply(const Scalar& s) { c_ *= s; }
  void add_constant_phase(int k) { const_ = (const_ + (k % 4) + 4) % 4; }
  void add_linear(int var, int coeff_mod4);
  void add_cross(int v1, int v2);  // phase term 2 * x_{v1} * x_{v2}

  /// Constrain xor of the variables in `row` to equal `parity`.
  void add_constraint(std::uint64_t row, int parity);

  /// The constrained sum; exact in whichever backend c carries.
  Scalar evaluate() const;

 private:
  int n_;
  Scalar c_ = Scalar(1);
  int const_ = 0;
  std::vector<std::uint8_t> lin_;
  std::vector<std::uint64_t> quad_;  // bit k set in row j for j < k
  std::vector<std::pair<std::uint64_t, int>> constraints_;
};

}  // namespace holant
