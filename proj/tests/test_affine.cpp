#include "doctest.h"

#include "holant/affine.hpp"
#include "support.hpp"

using namespace holant;
using testsupport::Rng;

namespace {

// brute-force oracle for constrained quadratic phase sums
Scalar brute_phase_sum(int n, const std::vector<int>& lin,
                       const std::vector<std::uint64_t>& quad,
                       const std::vector<std::pair<std::uint64_t, int>>& constraints) {
  Scalar total(0);
  const Scalar iu = Scalar::i_unit();
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << n); ++t) {
    bool ok = true;
    for (const auto& [row, parity] : constraints) {
      if ((__builtin_popcountll(row & t) & 1) != parity) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    int phase = 0;
    for (int j = 0; j < n; ++j) {
      if (!(t & (std::uint64_t{1} << j))) continue;
      phase += lin[j];
      for (int k = j + 1; k < n; ++k)
        if ((quad[j] >> k) & 1 && (t >> k) & 1) phase += 2;
    }
    total += iu.pow(phase % 4);
  }
  return total;
}

// random affine form generator
AffineForm random_affine(Rng& rng, int n) {
  AffineForm f;
  f.arity = n;
  f.c = rng.nonzero_scalar();
  f.linear.assign(n, 0);
  f.quad.assign(n, 0);
  for (int j = 0; j < n; ++j) f.linear[j] = static_cast<std::uint8_t>(rng.uniform(0, 3));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (rng.uniform(0, 1)) f.quad[j] |= 1u << k;
  // random subspace + offset, kept in echelon form
  std::vector<std::uint32_t> basis;
  for (int tries = 0; tries < n; ++tries) {
    std::uint32_t v = static_cast<std::uint32_t>(rng.uniform(0, (1 << n) - 1));
    for (auto b : basis) {
      const std::uint32_t hb = 1u << (31 - __builtin_clz(b));
      if (v & hb) v ^= b;
    }
    if (!v) continue;
    for (auto& b : basis) {
      const std::uint32_t hv = 1u << (31 - __builtin_clz(v));
      if (b & hv) b ^= v;
    }
    basis.push_back(v);
  }
  f.basis = basis;
  f.offset = static_cast<std::uint32_t>(rng.uniform(0, (1 << n) - 1));
  return f;
}

}  // namespace

TEST_CASE("affine normal form of standard signatures") {
  const auto eq2 = Signature::standard(StdSig::EQ, 2);
  auto form = affine_normal_form(eq2);
  REQUIRE(form.has_value());
  CHECK(form->basis.size() == 1);
  CHECK(form->linear == std::vector<std::uint8_t>{0, 0});
  CHECK(form->quad == std::vector<std::uint32_t>{0, 0});
  CHECK(form->c == Scalar(1));
  CHECK(form->to_signature() == eq2);

  // (-1)^{x1 x2}: quadratic cross term
  const Signature f(2, {1, 1, 1, -1});
  auto form2 = affine_normal_form(f);
  REQUIRE(form2.has_value());
  CHECK(form2->basis.size() == 2);
  CHECK(form2->quad[0] == 2u);  // cross term between slots 0 and 1
  CHECK(form2->to_signature() == f);

  // ONE3 support is not affine: 001 ^ 010 ^ 100 = 111 is off-support
  CHECK_FALSE(affine_normal_form(Signature::standard(StdSig::ONE, 3)).has_value());

  // i^{x} on one variable
  const Signature g(1, {Scalar(1), Scalar::i_unit()});
  auto form3 = affine_normal_form(g);
  REQUIRE(form3.has_value());
  CHECK(form3->linear[0] == 1);
}

TEST_CASE("affine forms round trip") {
  Rng rng(41);
  for (int t = 0; t < 500; ++t) {
    const int n = rng.uniform(0, 5);
    const AffineForm f = random_affine(rng, n);
    const Signature sig = f.to_signature();
    const auto back = affine_normal_form(sig);
    REQUIRE(back.has_value());
    CHECK(back->to_signature() == sig);
  }
}

TEST_CASE("non-affine rejections") {
  // constant modulus violated
  CHECK_FALSE(affine_normal_form(Signature(1, {1, 2})).has_value());
  // eighth root of unity phase
  CHECK_FALSE(affine_normal_form(Signature(1, {Scalar(1), Scalar::eipi4()})).has_value());
  // support not a coset
  CHECK_FALSE(affine_normal_form(Signature(2, {1, 1, 1, 0})).has_value());
}

TEST_CASE("gauss sums match brute force") {
  Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const int n = rng.uniform(0, 8);
    std::vector<int> lin(n);
    std::vector<std::uint64_t> quad(n, 0);
    PhaseSystem sys(n);
    for (int j = 0; j < n; ++j) {
      lin[j] = rng.uniform(0, 3);
      sys.add_linear(j, lin[j]);
      for (int k = j + 1; k < n; ++k) {
        if (rng.uniform(0, 1)) {
          quad[j] |= std::uint64_t{1} << k;
          sys.add_cross(j, k);
        }
      }
    }
    std::vector<std::pair<std::uint64_t, int>> cons;
    const int ncons = rng.uniform(0, 2);
    for (int c = 0; c < ncons; ++c) {
      const std::uint64_t row =
          static_cast<std::uint64_t>(rng.uniform(0, (1 << n) - 1));
      const int parity = rng.uniform(0, 1);
      cons.emplace_back(row, parity);
      sys.add_constraint(row, parity);
    }
    CHECK(sys.evaluate() == brute_phase_sum(n, lin, quad, cons));
  }
}

TEST_CASE("gauss sums at twelve variables") {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    const int n = 12;
    std::vector<int> lin(n);
    std::vector<std::uint64_t> quad(n, 0);
    PhaseSystem sys(n);
    for (int j = 0; j < n; ++j) {
      lin[j] = rng.uniform(0, 3);
      sys.add_linear(j, lin[j]);
      for (int k = j + 1; k < n; ++k) {
        if (rng.uniform(0, 1)) {
          quad[j] |= std::uint64_t{1} << k;
          sys.add_cross(j, k);
        }
      }
    }
    CHECK(sys.evaluate() == brute_phase_sum(n, lin, quad, {}));
  }
}
