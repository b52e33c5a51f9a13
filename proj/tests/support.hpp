#pragma once

// Shared helpers for randomized tests: a deterministic generator of small
// exact scalars, signatures and matrices.

#include <random>

#include "holant/entanglement.hpp"
#include "holant/mat2.hpp"
#include "holant/signature.hpp"

namespace holant::testsupport {

class Rng {
 public:
  explicit Rng(unsigned seed) : eng_(seed) {}

  int uniform(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng_);
  }

  Scalar small_rational() {
    const int num = uniform(-4, 4);
    const int den = uniform(1, 3);
    return Scalar::rational(num, den);
  }

  Scalar scalar() {
    // rational combination of a few roots of unity, biased towards simple values
    Scalar s = small_rational();
    if (uniform(0, 2) == 0) s += small_rational() * Scalar::zeta(uniform(1, 23));
    return s;
  }

  Scalar nonzero_scalar() {
    for (;;) {
      Scalar s = scalar();
      if (!s.is_zero()) return s;
    }
  }

  Signature signature(int arity) {
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < (std::size_t{1} << arity); ++i) v.push_back(scalar());
    return {arity, std::move(v)};
  }

  Signature nonzero_signature(int arity) {
    for (;;) {
      Signature f = signature(arity);
      if (!f.is_zero()) return f;
    }
  }

  Signature nondecomposable_signature(int arity) {
    for (;;) {
      Signature f = nonzero_signature(arity);
      if (!is_decomposable(f)) return f;
    }
  }

  Mat2 invertible_mat2() {
    for (;;) {
      Mat2 m{scalar(), scalar(), scalar(), scalar()};
      if (m.invertible()) return m;
    }
  }

  // orthogonal up to scalar, entries in the field
  Mat2 scaled_orthogonal() {
    for (;;) {
      const Scalar c = scalar(), s = scalar();
      if ((c * c + s * s).is_zero()) continue;
      if (uniform(0, 1)) return Mat2{c, -s, s, c};
      return Mat2{c, s, s, -c};
    }
  }

 private:
  std::mt19937 eng_;
};

}  // namespace holant::testsupport
