#include "doctest.h"

#include "holant/mat2.hpp"
#include "support.hpp"

using namespace holant;
using testsupport::Rng;

namespace {

bool is_lower_triangular(const Mat2& m) { return m.b.is_zero(); }
bool is_upper_triangular(const Mat2& m) { return m.c.is_zero(); }

}  // namespace

TEST_CASE("named constants match their definitions") {
  const Mat2 k = Mat2::k_matrix();
  CHECK(k.a == Scalar(1));
  CHECK(k.b == Scalar(1));
  CHECK(k.c == Scalar::i_unit());
  CHECK(k.d == -Scalar::i_unit());
  const Mat2 kk = k.transpose() * k;
  CHECK(kk.proportional_to(Mat2::x_flip()));  // K^T K = 2X
  CHECK(Mat2::t_matrix().d == Scalar::eipi4());
}

TEST_CASE("qr decomposition identity and K cases") {
  const auto r1 = qr_orthogonal_decompose(Mat2::identity(), TriangleSide::Lower);
  CHECK(r1.kind == QrKind::Orthogonal);
  CHECK(is_lower_triangular(r1.r));

  const auto r2 = qr_orthogonal_decompose(Mat2::k_matrix(), TriangleSide::Lower);
  CHECK(r2.kind == QrKind::K);
  CHECK(r2.r.proportional_to(Mat2::identity()));
}

TEST_CASE("qr decomposition of the worked 2x2 example") {
  const Mat2 m{1, 2, 3, 4};
  const auto res = qr_orthogonal_decompose(m, TriangleSide::Lower);
  CHECK(res.kind == QrKind::Orthogonal);
  CHECK(res.q.inverse().proportional_to(Mat2{4, -2, 2, 4}));
  CHECK(res.r.proportional_to(Mat2{-2, 0, 14, 20}));
}

TEST_CASE("qr decomposition on random invertible matrices") {
  Rng rng(21);
  for (int t = 0; t < 150; ++t) {
    const Mat2 m = rng.invertible_mat2();
    for (auto side : {TriangleSide::Lower, TriangleSide::Upper}) {
      const auto res = qr_orthogonal_decompose(m, side);
      if (res.kind == QrKind::Orthogonal) {
        CHECK(res.q.orthogonal_up_to_scalar());
      } else {
        CHECK((res.q == Mat2::k_matrix() || res.q == Mat2::kx_matrix()));
      }
      CHECK((side == TriangleSide::Lower ? is_lower_triangular(res.r)
                                         : is_upper_triangular(res.r)));
      CHECK(res.q * res.r == m);
    }
  }
  // matrices forcing the K / KX branches
  Rng rng2(22);
  for (int t = 0; t < 40; ++t) {
    const Scalar x = rng2.nonzero_scalar(), y = rng2.nonzero_scalar();
    const Mat2 m = Mat2::k_matrix() * Mat2::diag(x, y);
    const auto res = qr_orthogonal_decompose(m, TriangleSide::Lower);
    CHECK(res.kind != QrKind::Orthogonal);
    CHECK(res.q * res.r == m);
  }
}

TEST_CASE("factor_orthogonal_diagonal examples") {
  const auto r1 = factor_orthogonal_diagonal(Mat2::diag(2, 3));
  REQUIRE(r1.has_value());
  CHECK(r1->first.orthogonal_up_to_scalar());
  CHECK(r1->second.is_diagonal());
  CHECK(r1->first * r1->second == Mat2::diag(2, 3));

  const Mat2 m{3, -4, 4, 3};
  const auto r2 = factor_orthogonal_diagonal(m);
  REQUIRE(r2.has_value());
  CHECK(r2->first.proportional_to(m));
  CHECK((m.transpose() * m).proportional_to(Mat2::identity()));
  CHECK(r2->first * r2->second == m);

  CHECK_FALSE(factor_orthogonal_diagonal(Mat2{1, 1, 1, 2}).has_value());
}

TEST_CASE("factor_orthogonal_diagonal accepts exactly diagonal gram matrices") {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const Mat2 m = rng.invertible_mat2();
    const Mat2 g = m.transpose() * m;
    const auto res = factor_orthogonal_diagonal(m);
    CHECK(res.has_value() == (g.b.is_zero() && g.c.is_zero()));
    if (res) {
      CHECK(res->first * res->second == m);
      CHECK(res->first.orthogonal_up_to_scalar());
      CHECK(res->second.is_diagonal());
    }
  }
  // random scaled-orthogonal times diagonal must always be accepted
  for (int t = 0; t < 100; ++t) {
    const Mat2 m = rng.scaled_orthogonal() *
                   Mat2::diag(rng.nonzero_scalar(), rng.nonzero_scalar());
    const auto res = factor_orthogonal_diagonal(m);
    REQUIRE(res.has_value());
    CHECK(res->first * res->second == m);
  }
}

TEST_CASE("ata_x_form characterises KD and KXD") {
  const auto r1 = ata_x_form(Mat2::k_matrix());
  REQUIRE(r1.has_value());
  CHECK(r1->first == AtaXKind::KD);
  CHECK(r1->second.proportional_to(Mat2::identity()));

  const Mat2 m = Mat2::kx_matrix() * Mat2::diag(1, 5);
  const auto r2 = ata_x_form(m);
  REQUIRE(r2.has_value());
  CHECK(r2->first == AtaXKind::KXD);
  CHECK(r2->second == Mat2::diag(1, 5));
  CHECK(Mat2::kx_matrix() * r2->second == m);

  CHECK_FALSE(ata_x_form(Mat2::identity()).has_value());

  Rng rng(24);
  for (int t = 0; t < 250; ++t) {
    const Mat2 d = Mat2::diag(rng.nonzero_scalar(), rng.nonzero_scalar());
    const auto rk = ata_x_form(Mat2::k_matrix() * d);
    REQUIRE(rk.has_value());
    CHECK(rk->first == AtaXKind::KD);
    CHECK(Mat2::k_matrix() * rk->second == Mat2::k_matrix() * d);
    const auto rkx = ata_x_form(Mat2::kx_matrix() * d);
    REQUIRE(rkx.has_value());
    CHECK(rkx->first == AtaXKind::KXD);
  }
  int rejected = 0;
  for (int t = 0; t < 250; ++t) {
    const Mat2 m = rng.invertible_mat2();
    const Mat2 g = m.transpose() * m;
    const bool is_x = g.a.is_zero() && g.d.is_zero() && !g.b.is_zero();
    CHECK(ata_x_form(m).has_value() == is_x);
    if (!is_x) ++rejected;
  }
  CHECK(rejected > 200);  // random matrices are almost never of the special form
}
