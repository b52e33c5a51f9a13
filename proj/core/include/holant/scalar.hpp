#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace holant {

/// Thrown when exact and floating-point scalars meet in one expression.
struct backend_mismatch : std::invalid_argument {
  backend_mismatch() : std::invalid_argument("exact and float scalars cannot mix") {}
};

/// Thrown when a requested exact value does not exist in the field
/// (e.g. a square root of an element that is not a square there).
struct field_error : std::domain_error {
  explicit field_error(const std::string& what) : std::domain_error(what) {}
};

/// Element of Q(z) where z = exp(2*pi*i/24), stored over the power basis
/// 1, z, ..., z^7 with z^8 = z^4 - 1.  The field contains i = z^6, the
/// primitive cube root of unity w3 = z^8, exp(i*pi/4) = z^3, sqrt(2) and
/// sqrt(3).  Coefficients are exact rationals.
class Cyc24 {
 public:
  Cyc24() = default;

  static Cyc24 from_int(long v);
  static Cyc24 from_rational(const mpq_class& v);
  static Cyc24 zeta_pow(int k);  // z^k, any integer k

  Cyc24 operator+(const Cyc24& o) const;
  Cyc24 operator-(const Cyc24& o) const;
  Cyc24 operator-() const;
  Cyc24 operator*(const Cyc24& o) const;
  bool operator==(const Cyc24& o) const { return c_ == o.c_; }

  bool is_zero() const;
  bool is_rational() const;  // only the constant coefficient non-zero
  Cyc24 inverse() const;     // throws field_error on zero
  Cyc24 galois(int k) const; // z -> z^k, gcd(k,24)=1

  const mpq_class& coeff(int j) const { return c_[j]; }
  mpq_class& coeff(int j) { return c_[j]; }

  std::complex<double> to_complex() const;

  /// Exact square/cube root within the field, if one exists.
  std::optional<Cyc24> sqrt() const;
  std::optional<Cyc24> cbrt() const;

 private:
  std::array<mpq_class, 8> c_{};  // value-initialised to 0
};

/// A complex scalar with two interchangeable backends: exact arithmetic in
/// the conductor-24 cyclotomic field, or complex<double> with a comparison
/// tolerance.  The two backends never mix within one computation; combining
/// them throws backend_mismatch.
class Scalar {
 public:
  static constexpr double kDefaultEps = 1e-9;

  Scalar() : exact_(true) {}  // exact zero
  /* implicit */ Scalar(long v) : exact_(true), ex_(Cyc24::from_int(v)) {}
  /* implicit */ Scalar(int v) : Scalar(static_cast<long>(v)) {}

  static Scalar integer(long v) { return Scalar(v); }
  static Scalar rational(long num, long den);
  static Scalar from_mpq(const mpq_class& v);
  static Scalar zeta(int k);          // z^k, z = exp(2 pi i / 24)
  static Scalar i_unit() { return zeta(6); }
  static Scalar omega() { return zeta(8); }   // primitive cube root of unity
  static Scalar eipi4() { return zeta(3); }   // exp(i pi / 4)
  static Scalar approx(std::complex<double> v, double eps = kDefaultEps);

  bool is_exact() const { return exact_; }
  double eps() const { return eps_; }

  /// Constants in the same backend as this value.
  Scalar zero_like() const { return constant_like(0); }
  Scalar one_like() const { return constant_like(1); }
  Scalar constant_like(long v) const {
    return exact_ ? Scalar(v) : approx({static_cast<double>(v), 0}, eps_);
  }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws on zero divisor
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_one() const { return *this == Scalar(1); }
  Scalar inverse() const;
  Scalar pow(long e) const;  // e may be negative for invertible values

  std::complex<double> to_complex() const;
  const Cyc24& exact_value() const;

  /// Square/cube root staying in the same backend.  For the exact backend,
  /// absent when no root exists in the field; the float backend always
  /// returns the principal root.
  std::optional<Scalar> sqrt() const;
  std::optional<Scalar> cbrt() const;

  /// Multiplicative order if this is a root of unity (necessarily dividing
  /// 24 in the exact field); absent otherwise.
  std::optional<int> root_of_unity_order() const;

  /// Total order usable for deterministic tie-breaking and dedup.
  static bool total_less(const Scalar& a, const Scalar& b);

 private:
  bool exact_;
  Cyc24 ex_;
  std::complex<double> ap_{0.0, 0.0};
  double eps_ = kDefaultEps;

  void check_same(const Scalar& o) const {
    if (exact_ != o.exact_) throw backend_mismatch();
  }
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

}  // namespace holant
