#pragma once

#include <optional>
#include <utility>

#include "holant/scalar.hpp"

namespace holant {

/// Invertible (usually) 2x2 matrix over Scalar, row-major; row and column
/// indices are bit values.
struct Mat2 {
  Scalar a, b, c, d;  // [[a, b], [c, d]]

  Mat2() : a(0), b(0), c(0), d(0) {}
  Mat2(Scalar a_, Scalar b_, Scalar c_, Scalar d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

  static Mat2 identity() { return {1, 0, 0, 1}; }
  static Mat2 x_flip() { return {0, 1, 1, 0}; }
  static Mat2 k_matrix() { return {1, 1, Scalar::i_unit(), -Scalar::i_unit()}; }
  static Mat2 kx_matrix() { return k_matrix() * x_flip(); }
  static Mat2 t_matrix() { return diag(1, Scalar::eipi4()); }
  static Mat2 hadamard() { return {1, 1, 1, -1}; }
  static Mat2 diag(Scalar s, Scalar t) { return {std::move(s), 0, 0, std::move(t)}; }

  Scalar det() const { return a * d - b * c; }
  bool invertible() const { return !det().is_zero(); }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  Mat2 inverse() const;  // throws field_error if singular

  Mat2 operator*(const Mat2& o) const;
  Mat2 operator*(const Scalar& s) const { return {a * s, b * s, c * s, d * s}; }
  bool operator==(const Mat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }

  /// Equal up to a non-zero scalar factor.
  bool proportional_to(const Mat2& o) const;
  bool is_diagonal() const { return b.is_zero() && c.is_zero(); }
  bool is_antidiagonal() const { return a.is_zero() && d.is_zero(); }
  /// m^T m is a scalar multiple of the identity.
  bool orthogonal_up_to_scalar() const;
};

enum class QrKind { Orthogonal, K, KX };
enum class TriangleSide { Upper, Lower };

struct QrResult {
  Mat2 q;  // orthogonal up to scalar, or K / KX
  Mat2 r;  // q^{-1} m, triangular on the requested side
  QrKind kind;
};

/// Orthogonal QR decomposition over the complex field: q is orthogonal up to
/// a scalar, or one of K, KX when no orthogonal choice exists.  Projective:
/// q is not normalised, so everything stays inside the exact field.
QrResult qr_orthogonal_decompose(const Mat2& m, TriangleSide side);

/// m = q d with q orthogonal-up-to-scalar and d diagonal; present iff
/// m^T m is diagonal.
std::optional<std::pair<Mat2, Mat2>> factor_orthogonal_diagonal(const Mat2& m);

enum class AtaXKind { KD, KXD };

/// a = K d or a = KX d for an invertible diagonal d; present iff
/// a^T a is a scalar multiple of X.
std::optional<std::pair<AtaXKind, Mat2>> ata_x_form(const Mat2& a);

}  // namespace holant
