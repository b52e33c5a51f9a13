#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holant/mat2.hpp"
#include "holant/scalar.hpp"

namespace holant {

class SymSignature;

enum class StdSig { EQ, ONE, NEQ, Delta0, Delta1, DeltaPlus, DeltaMinus, DeltaI, DeltaMinusI };

/// A constraint function {0,1}^n -> C as a dense value table of length 2^n.
/// Indexing: the first argument is the most significant bit, so a binary f
/// reads as the matrix [[f(0,0), f(0,1)], [f(1,0), f(1,1)]] in row-major
/// order.  Argument slots are 0-based throughout the API.
class Signature {
 public:
  Signature() : arity_(0), v_{Scalar(0)} {}
  Signature(int arity, std::vector<Scalar> values);

  static Signature standard(StdSig name, int arity);
  static Signature constant(Scalar value);  // arity 0

  int arity() const { return arity_; }
  std::size_t size() const { return v_.size(); }
  const std::vector<Scalar>& values() const { return v_; }
  const Scalar& operator[](std::size_t i) const { return v_[i]; }
  Scalar& operator[](std::size_t i) { return v_[i]; }

  bool is_zero() const;
  bool operator==(const Signature& o) const;

  Signature scaled(const Scalar& c) const;

 private:
  int arity_;
  std::vector<Scalar> v_;
};

/// Symmetric signature as values by Hamming weight.
class SymSignature {
 public:
  explicit SymSignature(std::vector<Scalar> by_weight);
  int arity() const { return static_cast<int>(w_.size()) - 1; }
  const Scalar& operator[](std::size_t k) const { return w_[k]; }
  const std::vector<Scalar>& weights() const { return w_; }
  Signature expand() const;
  bool operator==(const SymSignature& o) const { return w_ == o.w_; }

 private:
  std::vector<Scalar> w_;
};

std::optional<SymSignature> to_symmetric(const Signature& f);

/// c with f = c*g, if any; both identically zero gives c = 1.
std::optional<Scalar> scale_equiv(const Signature& f, const Signature& g);

Signature tensor(const Signature& f, const Signature& g);

/// result(x_1..x_n) = f(x_{perm[1]}, ..., x_{perm[n]}), 0-based slots.
Signature permute(const Signature& f, const std::vector<int>& perm);

struct Matricization {
  std::size_t rows, cols;
  std::vector<Scalar> m;  // row-major
  const Scalar& at(std::size_t r, std::size_t c) const { return m[r * cols + c]; }
};

/// Matrix of f with the given argument subset as row indices (slot order
/// preserved on both sides).  The subset must be proper and non-empty.
Matricization matricize(const Signature& f, const std::vector<int>& row_slots);

/// Rank of a matricization (exact Gaussian elimination).
std::size_t matrix_rank(const Matricization& m);

/// m^{\otimes n} |f>, the holographic action of m on every argument.
Signature transform(const Mat2& m, const Signature& f);

/// Per-argument action (m_j applied to slot j); ms.size() == f.arity().
Signature transform_args(const std::vector<Mat2>& ms, const Signature& f);

/// Support as the list of value-table indices with non-zero entries.
std::vector<std::size_t> support(const Signature& f);

/// Copies carried into the backend of `proto` (exact values demote to the
/// float backend; float values never promote).
Scalar to_backend(const Scalar& s, const Scalar& proto);
Signature to_backend(const Signature& f, const Scalar& proto);
Mat2 to_backend(const Mat2& m, const Scalar& proto);

int hamming(std::size_t x);

}  // namespace holant
