#include "holant/mat2.hpp"

namespace holant {

Mat2 Mat2::inverse() const {
  const Scalar dt = det();
  if (dt.is_zero()) throw field_error("singular matrix");
  const Scalar inv = dt.inverse();
  return {d * inv, -b * inv, -c * inv, a * inv};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d,
          c * o.a + d * o.c, c * o.b + d * o.d};
}

bool Mat2::proportional_to(const Mat2& o) const {
  // cross-multiplied equality on all entry pairs, plus a shared support check
  const Scalar* m1[4] = {&a, &b, &c, &d};
  const Scalar* m2[4] = {&o.a, &o.b, &o.c, &o.d};
  int pivot = -1;
  for (int j = 0; j < 4; ++j) {
    if (!m2[j]->is_zero()) { pivot = j; break; }
  }
  if (pivot < 0) return a.is_zero() && b.is_zero() && c.is_zero() && d.is_zero();
  if (m1[pivot]->is_zero()) return false;
  for (int j = 0; j < 4; ++j) {
    if (!(*m1[j] * *m2[pivot] == *m1[pivot] * *m2[j])) return false;
  }
  return true;
}

bool Mat2::orthogonal_up_to_scalar() const {
  const Mat2 g = transpose() * *this;
  return g.b.is_zero() && g.c.is_zero() && g.a == g.d && !g.a.is_zero();
}

QrResult qr_orthogonal_decompose(const Mat2& m, TriangleSide side) {
  if (!m.invertible()) throw field_error("qr decomposition of a singular matrix");
  const Scalar i = Scalar::i_unit();
  if (side == TriangleSide::Lower) {
    // kill the top-right entry of q^{-1} m, which depends on (b, d)
    const Scalar s = m.b * m.b + m.d * m.d;
    if (!s.is_zero()) {
      const Mat2 q{m.d, m.b, -m.b, m.d};
      return {q, q.inverse() * m, QrKind::Orthogonal};
    }
    if (m.d == -(i * m.b)) {
      const Mat2 q = Mat2::k_matrix();
      return {q, q.inverse() * m, QrKind::K};
    }
    const Mat2 q = Mat2::kx_matrix();
    return {q, q.inverse() * m, QrKind::KX};
  }
  // upper: kill the bottom-left entry, which depends on (a, c)
  const Scalar s = m.a * m.a + m.c * m.c;
  if (!s.is_zero()) {
    const Mat2 q{m.a, -m.c, m.c, m.a};
    return {q, q.inverse() * m, QrKind::Orthogonal};
  }
  if (m.c == i * m.a) {
    const Mat2 q = Mat2::k_matrix();
    return {q, q.inverse() * m, QrKind::K};
  }
  const Mat2 q = Mat2::kx_matrix();
  return {q, q.inverse() * m, QrKind::KX};
}

std::optional<std::pair<Mat2, Mat2>> factor_orthogonal_diagonal(const Mat2& m) {
  if (!m.invertible()) throw field_error("factorisation of a singular matrix");
  const Mat2 g = m.transpose() * m;
  if (!g.b.is_zero() || !g.c.is_zero()) return std::nullopt;
  // Columns are orthogonal, so col2 = t * rot90(col1) with rot90(x,y)=(-y,x);
  // q = [col1 | rot90(col1)] then satisfies q^T q = g.a * I and m = q diag(1,t).
  Scalar t(0);
  if (!m.a.is_zero()) t = m.d / m.a;
  else t = -(m.b / m.c);
  const Mat2 q{m.a, -m.c, m.c, m.a};
  return std::make_pair(q, Mat2::diag(1, t));
}

std::optional<std::pair<AtaXKind, Mat2>> ata_x_form(const Mat2& a) {
  if (!a.invertible()) throw field_error("singular matrix");
  const Mat2 g = a.transpose() * a;
  if (!g.a.is_zero() || !g.d.is_zero() || g.b.is_zero()) return std::nullopt;
  const Scalar i = Scalar::i_unit();
  // K D = [[x, y], [ix, -iy]];  KX D = [[x, y], [-ix, iy]]
  if (a.c == i * a.a && a.d == -(i * a.b)) {
    return std::make_pair(AtaXKind::KD, Mat2::diag(a.a, a.b));
  }
  if (a.c == -(i * a.a) && a.d == i * a.b) {
    return std::make_pair(AtaXKind::KXD, Mat2::diag(a.a, a.b));
  }
  return std::nullopt;
}

}  // namespace holant
