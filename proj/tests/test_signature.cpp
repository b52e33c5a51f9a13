#include "doctest.h"

#include "holant/signature.hpp"
#include "support.hpp"

using namespace holant;
using testsupport::Rng;

TEST_CASE("standard signatures") {
  const auto eq3 = Signature::standard(StdSig::EQ, 3);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(eq3[i] == ((i == 0 || i == 7) ? Scalar(1) : Scalar(0)));

  const auto one3 = Signature::standard(StdSig::ONE, 3);
  CHECK(to_symmetric(one3).has_value());
  CHECK(one3[1] == Scalar(1));
  CHECK(one3[2] == Scalar(1));
  CHECK(one3[4] == Scalar(1));
  CHECK(one3[3] == Scalar(0));
  CHECK(one3[7] == Scalar(0));

  const auto dm = Signature::standard(StdSig::DeltaMinus, 1);
  CHECK(dm[0] == Scalar(1));
  CHECK(dm[1] == Scalar(-1));

  CHECK_THROWS(Signature::standard(StdSig::NEQ, 3));
  CHECK_THROWS(Signature::standard(StdSig::Delta0, 2));
}

TEST_CASE("indexing convention: first argument is the most significant bit") {
  // f(x1,x2,x3) with value 1 exactly at (1,0,0) must sit at index 4
  std::vector<Scalar> v(8, Scalar(0));
  v[4] = 1;
  const Signature f(3, v);
  const auto m = matricize(f, {0});
  CHECK(m.rows == 2);
  CHECK(m.cols == 4);
  CHECK(m.at(1, 0) == Scalar(1));
  CHECK(m.at(0, 0) == Scalar(0));
}

TEST_CASE("to_symmetric round trips") {
  const auto eq3 = Signature::standard(StdSig::EQ, 3);
  auto s = to_symmetric(eq3);
  REQUIRE(s.has_value());
  CHECK(s->weights() == std::vector<Scalar>{1, 0, 0, 1});
  CHECK(s->expand() == eq3);

  const auto one4 = Signature::standard(StdSig::ONE, 4);
  auto s4 = to_symmetric(one4);
  REQUIRE(s4.has_value());
  CHECK(s4->weights() == std::vector<Scalar>{0, 1, 0, 0, 0});

  std::vector<Scalar> v(4, Scalar(0));
  v[1] = 1;  // f(0,1) != f(1,0)
  CHECK_FALSE(to_symmetric(Signature(2, v)).has_value());

  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    std::vector<Scalar> w;
    for (int k = 0; k <= 4; ++k) w.push_back(rng.scalar());
    const SymSignature sym(w);
    auto round = to_symmetric(sym.expand());
    REQUIRE(round.has_value());
    CHECK(round->weights() == w);
  }
}

TEST_CASE("scale_equiv") {
  const auto eq2 = Signature::standard(StdSig::EQ, 2);
  const auto c = scale_equiv(eq2.scaled(Scalar(2)), eq2);
  REQUIRE(c.has_value());
  CHECK(*c == Scalar(2));

  const auto d0 = Signature::standard(StdSig::Delta0, 1);
  const auto d1 = Signature::standard(StdSig::Delta1, 1);
  CHECK_FALSE(scale_equiv(d0, d1).has_value());

  // K o delta_0 equals delta_i exactly
  const auto di = Signature::standard(StdSig::DeltaI, 1);
  const auto kd0 = transform(Mat2::k_matrix(), d0);
  const auto c2 = scale_equiv(kd0, di);
  REQUIRE(c2.has_value());
  CHECK(*c2 == Scalar(1));

  const Signature z(2, std::vector<Scalar>(4, Scalar(0)));
  CHECK(scale_equiv(z, z) == Scalar(1));
  CHECK_THROWS(scale_equiv(d0, eq2));
}

TEST_CASE("scale equivalence is an equivalence relation on non-zero signatures") {
  Rng rng(35);
  for (int t = 0; t < 50; ++t) {
    const auto f = rng.nonzero_signature(2);
    const Scalar c = rng.nonzero_scalar();
    const auto g = f.scaled(c);
    CHECK(scale_equiv(f, f) == Scalar(1));
    const auto fwd = scale_equiv(g, f);
    const auto bwd = scale_equiv(f, g);
    REQUIRE(fwd.has_value());
    REQUIRE(bwd.has_value());
    CHECK(*fwd * *bwd == Scalar(1));
    const auto h = g.scaled(rng.nonzero_scalar());
    const auto a = scale_equiv(h, g), b = scale_equiv(g, f), ab = scale_equiv(h, f);
    REQUIRE((a && b && ab));
    CHECK(*ab == *a * *b);
  }
}

TEST_CASE("tensor and permute") {
  const auto d0 = Signature::standard(StdSig::Delta0, 1);
  const auto d1 = Signature::standard(StdSig::Delta1, 1);
  const auto t = tensor(d0, d1);
  CHECK(t.arity() == 2);
  CHECK(t[1] == Scalar(1));  // non-zero exactly at x = 01
  CHECK(t[0] == Scalar(0));
  CHECK(t[2] == Scalar(0));

  CHECK(permute(t, {1, 0}) == tensor(d1, d0));
  const auto eq3 = Signature::standard(StdSig::EQ, 3);
  CHECK(permute(eq3, {2, 0, 1}) == eq3);
  CHECK_THROWS(permute(eq3, {0, 0, 1}));

  Rng rng(32);
  for (int t2 = 0; t2 < 30; ++t2) {
    const auto f = rng.signature(2);
    const auto g = rng.signature(1);
    const auto h = rng.signature(2);
    CHECK(tensor(tensor(f, g), h) == tensor(f, tensor(g, h)));
  }
}

TEST_CASE("matricize examples and tensor rank") {
  const auto eq2 = Signature::standard(StdSig::EQ, 2);
  const auto m1 = matricize(eq2, {0});
  CHECK(matrix_rank(m1) == 2);

  const auto dp = Signature::standard(StdSig::DeltaPlus, 1);
  const auto m2 = matricize(tensor(dp, dp), {0});
  CHECK(matrix_rank(m2) == 1);

  const auto one3 = Signature::standard(StdSig::ONE, 3);
  const auto m3 = matricize(one3, {0});
  CHECK(m3.rows == 2);
  CHECK(m3.cols == 4);
  // [[0,1,1,0],[1,0,0,0]]
  CHECK(m3.at(0, 0) == Scalar(0));
  CHECK(m3.at(0, 1) == Scalar(1));
  CHECK(m3.at(0, 2) == Scalar(1));
  CHECK(m3.at(0, 3) == Scalar(0));
  CHECK(m3.at(1, 0) == Scalar(1));
  CHECK(m3.at(1, 1) == Scalar(0));
  CHECK(matrix_rank(m3) == 2);

  Rng rng(33);
  for (int t = 0; t < 30; ++t) {
    const auto f = rng.nonzero_signature(2);
    const auto g = rng.nonzero_signature(2);
    const auto m = matricize(tensor(f, g), {0, 1});
    CHECK(matrix_rank(m) == 1);
  }
  CHECK_THROWS(matricize(eq2, {}));
  CHECK_THROWS(matricize(eq2, {0, 1}));
}

TEST_CASE("holographic transform") {
  const auto d0 = Signature::standard(StdSig::Delta0, 1);
  const auto kd0 = transform(Mat2::k_matrix(), d0);
  CHECK(kd0[0] == Scalar(1));
  CHECK(kd0[1] == Scalar::i_unit());

  // X flips all arguments: EQ3 is invariant
  const auto eq3 = Signature::standard(StdSig::EQ, 3);
  CHECK(transform(Mat2::x_flip(), eq3) == eq3);

  // transform_args with distinct matrices
  Rng rng(34);
  for (int t = 0; t < 20; ++t) {
    const Mat2 a = rng.invertible_mat2(), b = rng.invertible_mat2();
    const auto f = rng.signature(2);
    const auto lhs = transform_args({a, b}, f);
    // contract against tensor e_x ⊗ e_y by brute force
    for (std::size_t x = 0; x < 2; ++x) {
      for (std::size_t y = 0; y < 2; ++y) {
        Scalar expect(0);
        for (std::size_t u = 0; u < 2; ++u) {
          for (std::size_t v = 0; v < 2; ++v) {
            const Scalar av = (x == 0) ? (u == 0 ? a.a : a.b) : (u == 0 ? a.c : a.d);
            const Scalar bv = (y == 0) ? (v == 0 ? b.a : b.b) : (v == 0 ? b.c : b.d);
            expect += av * bv * f[(u << 1) | v];
          }
        }
        CHECK(lhs[(x << 1) | y] == expect);
      }
    }
  }
}
