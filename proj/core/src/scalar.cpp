#include "holant/scalar.hpp"

#include <cmath>
#include <numbers>

namespace holant {

namespace {

// z^m over the power basis, for m in 0..23.  Built once from z^8 = z^4 - 1.
struct PowerTable {
  std::array<std::array<int, 8>, 24> t{};
  PowerTable() {
    std::array<int, 16> cur{};  // working coefficients up to degree 15
    cur[0] = 1;
    for (int m = 0; m < 24; ++m) {
      for (int j = 0; j < 8; ++j) t[m][j] = cur[j];
      // multiply by z
      for (int j = 15; j > 0; --j) cur[j] = cur[j - 1];
      cur[0] = 0;
      for (int j = 15; j >= 8; --j) {
        if (cur[j] != 0) {
          cur[j - 4] += cur[j];
          cur[j - 8] -= cur[j];
          cur[j] = 0;
        }
      }
    }
  }
};

const PowerTable& power_table() {
  static const PowerTable p;
  return p;
}

std::complex<double> zeta_c(int k) {
  const double a = std::numbers::pi * static_cast<double>(((k % 24) + 24) % 24) / 12.0;
  return {std::cos(a), std::sin(a)};
}

// Embeddings sigma_k with k coprime to 24; the other four are conjugates.
constexpr int kEmbeddings[4] = {1, 5, 7, 11};

}  // namespace

Cyc24 Cyc24::from_int(long v) {
  Cyc24 r;
  r.c_[0] = v;
  return r;
}

Cyc24 Cyc24::from_rational(const mpq_class& v) {
  Cyc24 r;
  r.c_[0] = v;
  return r;
}

Cyc24 Cyc24::zeta_pow(int k) {
  k = ((k % 24) + 24) % 24;
  Cyc24 r;
  for (int j = 0; j < 8; ++j) r.c_[j] = power_table().t[k][j];
  return r;
}

Cyc24 Cyc24::operator+(const Cyc24& o) const {
  Cyc24 r;
  for (int j = 0; j < 8; ++j) r.c_[j] = c_[j] + o.c_[j];
  return r;
}

Cyc24 Cyc24::operator-(const Cyc24& o) const {
  Cyc24 r;
  for (int j = 0; j < 8; ++j) r.c_[j] = c_[j] - o.c_[j];
  return r;
}

Cyc24 Cyc24::operator-() const {
  Cyc24 r;
  for (int j = 0; j < 8; ++j) r.c_[j] = -c_[j];
  return r;
}

Cyc24 Cyc24::operator*(const Cyc24& o) const {
  std::array<mpq_class, 15> full{};
  for (int a = 0; a < 8; ++a) {
    if (c_[a] == 0) continue;
    for (int b = 0; b < 8; ++b) {
      if (o.c_[b] == 0) continue;
      full[a + b] += c_[a] * o.c_[b];
    }
  }
  for (int d = 14; d >= 8; --d) {
    if (full[d] == 0) continue;
    full[d - 4] += full[d];
    full[d - 8] -= full[d];
    full[d] = 0;
  }
  Cyc24 r;
  for (int j = 0; j < 8; ++j) r.c_[j] = full[j];
  return r;
}

bool Cyc24::is_zero() const {
  for (const auto& q : c_)
    if (q != 0) return false;
  return true;
}

bool Cyc24::is_rational() const {
  for (int j = 1; j < 8; ++j)
    if (c_[j] != 0) return false;
  return true;
}

Cyc24 Cyc24::galois(int k) const {
  Cyc24 r;
  for (int j = 0; j < 8; ++j) {
    if (c_[j] == 0) continue;
    const auto& row = power_table().t[(j * k) % 24];
    for (int t = 0; t < 8; ++t) r.c_[t] += c_[j] * row[t];
  }
  return r;
}

Cyc24 Cyc24::inverse() const {
  if (is_zero()) throw field_error("division by zero");
  // Product of the seven non-identity conjugates; then a * b = Norm(a) in Q.
  static constexpr int ks[7] = {5, 7, 11, 13, 17, 19, 23};
  Cyc24 b = galois(ks[0]);
  for (int t = 1; t < 7; ++t) b = b * galois(ks[t]);
  const Cyc24 n = *this * b;
  // The norm is rational; any residue in higher coefficients would be a bug.
  if (!n.is_rational() || n.c_[0] == 0) throw field_error("norm computation failed");
  const mpq_class inv_n = 1 / n.c_[0];
  Cyc24 r;
  for (int j = 0; j < 8; ++j) r.c_[j] = b.c_[j] * inv_n;
  return r;
}

std::complex<double> Cyc24::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  for (int j = 0; j < 8; ++j) {
    if (c_[j] == 0) continue;
    acc += mpq_get_d(c_[j].get_mpq_t()) * zeta_c(j);
  }
  return acc;
}

namespace {

// High-precision complex arithmetic for the root reconstruction.  The
// embedding constants cos/sin(pi k / 12) are combinations of sqrt(2) and
// sqrt(3), so everything is computable with mpf square roots alone; the
// roots themselves come from Newton iteration seeded in double precision.
constexpr int kRootPrec = 768;

struct Cpx {
  mpf_class re{0, kRootPrec}, im{0, kRootPrec};
  Cpx() = default;
  Cpx(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}
  Cpx operator+(const Cpx& o) const { return {re + o.re, im + o.im}; }
  Cpx operator-(const Cpx& o) const { return {re - o.re, im - o.im}; }
  Cpx operator*(const Cpx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cpx operator*(const mpf_class& s) const { return {re * s, im * s}; }
  Cpx inverse() const {
    mpf_class n = re * re + im * im;
    return {re / n, -im / n};
  }
};

// zeta^k as a high-precision complex value
Cpx zeta_f(int k) {
  k = ((k % 24) + 24) % 24;
  static const mpf_class half = mpf_class(1, kRootPrec) / 2;
  const mpf_class r2 = sqrt(mpf_class(2, kRootPrec));
  const mpf_class r6 = sqrt(mpf_class(6, kRootPrec));
  const mpf_class c15 = (r6 + r2) / 4;  // cos(pi/12)
  const mpf_class s15 = (r6 - r2) / 4;  // sin(pi/12)
  Cpx z{c15, s15};
  Cpx acc{mpf_class(1, kRootPrec), mpf_class(0, kRootPrec)};
  for (int t = 0; t < k; ++t) acc = acc * z;
  return acc;
}

struct HighPrecSolver {
  Cpx zpow[4][8];
  // inverse of the 8x8 real matrix (stacked Re/Im rows) via Gauss-Jordan
  mpf_class inv[8][8];
  HighPrecSolver() {
    for (int e = 0; e < 4; ++e)
      for (int j = 0; j < 8; ++j) zpow[e][j] = zeta_f(kEmbeddings[e] * j);
    std::vector<std::vector<mpf_class>> m(8, std::vector<mpf_class>(16, mpf_class(0, kRootPrec)));
    for (int e = 0; e < 4; ++e) {
      for (int j = 0; j < 8; ++j) {
        m[2 * e][j] = zpow[e][j].re;
        m[2 * e + 1][j] = zpow[e][j].im;
      }
    }
    for (int r = 0; r < 8; ++r) m[r][8 + r] = 1;
    for (int col = 0; col < 8; ++col) {
      int piv = col;
      for (int r = col + 1; r < 8; ++r)
        if (abs(m[r][col]) > abs(m[piv][col])) piv = r;
      std::swap(m[piv], m[col]);
      const mpf_class d = m[col][col];
      for (int c = 0; c < 16; ++c) m[col][c] /= d;
      for (int r = 0; r < 8; ++r) {
        if (r == col) continue;
        const mpf_class f = m[r][col];
        if (f == 0) continue;
        for (int c = 0; c < 16; ++c) m[r][c] -= f * m[col][c];
      }
    }
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) inv[r][c] = m[r][8 + c];
  }
};

const HighPrecSolver& hp_solver() {
  static const HighPrecSolver s;
  return s;
}

// principal-branch deg-th root by Newton iteration, seeded in double
std::optional<Cpx> newton_root(const Cpx& x, int deg) {
  const double xr = mpf_get_d(x.re.get_mpf_t());
  const double xi = mpf_get_d(x.im.get_mpf_t());
  const std::complex<double> seed =
      deg == 2 ? std::sqrt(std::complex<double>(xr, xi))
               : std::pow(std::complex<double>(xr, xi), 1.0 / 3.0);
  if (!std::isfinite(seed.real()) || !std::isfinite(seed.imag())) return std::nullopt;
  if (std::abs(seed) == 0.0) return Cpx{};
  Cpx y{mpf_class(seed.real(), kRootPrec), mpf_class(seed.imag(), kRootPrec)};
  const mpf_class dEG(deg, kRootPrec);
  for (int it = 0; it < 64; ++it) {
    // y <- ((deg-1) y + x / y^{deg-1}) / deg
    Cpx ypow = y;
    for (int t = 2; t < deg; ++t) ypow = ypow * y;
    const Cpx corr = x * ypow.inverse();
    Cpx next = (y * mpf_class(deg - 1, kRootPrec) + corr);
    next.re /= dEG;
    next.im /= dEG;
    const mpf_class delta = abs(next.re - y.re) + abs(next.im - y.im);
    y = next;
    if (delta == 0) break;
  }
  return y;
}

// Reconstructs y with y^deg == x (deg = 2 or 3) from high-precision
// embeddings, then verifies exactly.
std::optional<Cyc24> nth_root(const Cyc24& x, int deg) {
  if (x.is_zero()) return Cyc24();
  // Scale so the root, if it exists, has integer coefficients: with v the
  // common denominator, (v*y)^deg = v^deg * x has integer coefficients and
  // v*y lies in Z[zeta], the ring of integers.
  mpz_class v(1);
  for (int j = 0; j < 8; ++j) {
    mpz_class den = mpq_class(x.coeff(j)).get_den();
    mpz_lcm(v.get_mpz_t(), v.get_mpz_t(), den.get_mpz_t());
  }
  Cyc24 target = x;
  mpq_class vpow(v);
  for (int t = 1; t < deg; ++t) vpow *= mpq_class(v);
  for (int j = 0; j < 8; ++j) target.coeff(j) *= vpow;

  const auto& solver = hp_solver();
  Cpx principal[4];
  for (int e = 0; e < 4; ++e) {
    Cpx acc;
    for (int j = 0; j < 8; ++j) {
      if (target.coeff(j) == 0) continue;
      mpf_class cf(0, kRootPrec);
      mpf_set_q(cf.get_mpf_t(), target.coeff(j).get_mpq_t());
      acc = acc + solver.zpow[e][j] * cf;
    }
    const auto root = newton_root(acc, deg);
    if (!root) return std::nullopt;
    principal[e] = *root;
  }

  // branch phases: deg-th roots of unity
  std::vector<Cpx> phases;
  phases.push_back(Cpx{mpf_class(1, kRootPrec), mpf_class(0, kRootPrec)});
  if (deg == 2) {
    phases.push_back(Cpx{mpf_class(-1, kRootPrec), mpf_class(0, kRootPrec)});
  } else {
    const mpf_class half = mpf_class(1, kRootPrec) / 2;
    const mpf_class s3 = sqrt(mpf_class(3, kRootPrec)) / 2;
    phases.push_back(Cpx{-half, s3});
    phases.push_back(Cpx{-half, -s3});
  }

  const int patterns = (deg == 2) ? 16 : 81;
  const mpf_class tol = mpf_class(1, kRootPrec) / (mpz_class(1) << 64);
  for (int pat = 0; pat < patterns; ++pat) {
    mpf_class rhs[8];
    int p = pat;
    for (int e = 0; e < 4; ++e) {
      const Cpx w = principal[e] * phases[p % deg];
      p /= deg;
      rhs[2 * e] = w.re;
      rhs[2 * e + 1] = w.im;
    }
    Cyc24 cand;
    bool plausible = true;
    for (int j = 0; j < 8 && plausible; ++j) {
      mpf_class acc(0, kRootPrec);
      for (int c = 0; c < 8; ++c) acc += solver.inv[j][c] * rhs[c];
      // round to the nearest integer and check the residue is tiny
      mpf_class shifted = acc + mpf_class(0.5, kRootPrec);
      mpf_class fl(floor(shifted));
      mpz_class rounded;
      mpz_set_f(rounded.get_mpz_t(), fl.get_mpf_t());
      mpf_class resid = abs(acc - mpf_class(rounded, kRootPrec));
      if (resid > tol) plausible = false;
      else cand.coeff(j) = mpq_class(rounded);
    }
    if (!plausible) continue;
    Cyc24 pw = cand;
    for (int t = 1; t < deg; ++t) pw = pw * cand;
    if (pw == target) {
      const mpq_class inv_v = mpq_class(1) / mpq_class(v);
      Cyc24 y;
      for (int j = 0; j < 8; ++j) y.coeff(j) = cand.coeff(j) * inv_v;
      return y;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Cyc24> Cyc24::sqrt() const { return nth_root(*this, 2); }
std::optional<Cyc24> Cyc24::cbrt() const { return nth_root(*this, 3); }

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw field_error("zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  Scalar s;
  s.ex_ = Cyc24::from_rational(q);
  return s;
}

Scalar Scalar::from_mpq(const mpq_class& v) {
  Scalar s;
  s.ex_ = Cyc24::from_rational(v);
  return s;
}

Scalar Scalar::zeta(int k) {
  Scalar s;
  s.ex_ = Cyc24::zeta_pow(k);
  return s;
}

Scalar Scalar::approx(std::complex<double> v, double eps) {
  Scalar s;
  s.exact_ = false;
  s.ap_ = v;
  s.eps_ = eps;
  return s;
}

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  Scalar r = *this;
  if (exact_) r.ex_ = ex_ + o.ex_;
  else { r.ap_ = ap_ + o.ap_; r.eps_ = std::max(eps_, o.eps_); }
  return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  Scalar r = *this;
  if (exact_) r.ex_ = ex_ - o.ex_;
  else { r.ap_ = ap_ - o.ap_; r.eps_ = std::max(eps_, o.eps_); }
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (exact_) r.ex_ = -ex_;
  else r.ap_ = -ap_;
  return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  Scalar r = *this;
  if (exact_) r.ex_ = ex_ * o.ex_;
  else { r.ap_ = ap_ * o.ap_; r.eps_ = std::max(eps_, o.eps_); }
  return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
  check_same(o);
  if (o.is_zero()) throw field_error("division by zero");
  Scalar r = *this;
  if (exact_) r.ex_ = ex_ * o.ex_.inverse();
  else { r.ap_ = ap_ / o.ap_; r.eps_ = std::max(eps_, o.eps_); }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  check_same(o);
  if (exact_) return ex_ == o.ex_;
  return std::abs(ap_ - o.ap_) <= std::max(eps_, o.eps_);
}

bool Scalar::is_zero() const {
  if (exact_) return ex_.is_zero();
  return std::abs(ap_) <= eps_;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw field_error("division by zero");
  Scalar r = *this;
  if (exact_) r.ex_ = ex_.inverse();
  else r.ap_ = 1.0 / ap_;
  return r;
}

Scalar Scalar::pow(long e) const {
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  Scalar acc(1);
  if (!exact_) acc = Scalar::approx({1.0, 0.0}, eps_);
  while (n) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

std::complex<double> Scalar::to_complex() const {
  return exact_ ? ex_.to_complex() : ap_;
}

const Cyc24& Scalar::exact_value() const {
  if (!exact_) throw backend_mismatch();
  return ex_;
}

std::optional<Scalar> Scalar::sqrt() const {
  if (!exact_) return Scalar::approx(std::sqrt(ap_), eps_);
  auto r = ex_.sqrt();
  if (!r) return std::nullopt;
  Scalar s;
  s.ex_ = *r;
  return s;
}

std::optional<Scalar> Scalar::cbrt() const {
  if (!exact_) return Scalar::approx(std::pow(ap_, 1.0 / 3.0), eps_);
  auto r = ex_.cbrt();
  if (!r) return std::nullopt;
  Scalar s;
  s.ex_ = *r;
  return s;
}

std::optional<int> Scalar::root_of_unity_order() const {
  if (is_zero()) return std::nullopt;
  if (exact_) {
    // Roots of unity in the field have order dividing 24.
    if (!(pow(24) == Scalar(1))) return std::nullopt;
    for (int d : {1, 2, 3, 4, 6, 8, 12, 24})
      if (pow(d) == Scalar(1)) return d;
    return std::nullopt;
  }
  if (std::abs(std::abs(ap_) - 1.0) > eps_) return std::nullopt;
  const Scalar one = Scalar::approx({1.0, 0.0}, eps_);
  for (int d = 1; d <= 24; ++d)
    if (pow(d) == one) return d;
  return std::nullopt;
}

bool Scalar::total_less(const Scalar& a, const Scalar& b) {
  if (a.exact_ != b.exact_) return a.exact_ && !b.exact_;
  if (a.exact_) {
    for (int j = 0; j < 8; ++j) {
      const int c = cmp(a.ex_.coeff(j), b.ex_.coeff(j));
      if (c != 0) return c < 0;
    }
    return false;
  }
  if (a.ap_.real() != b.ap_.real()) return a.ap_.real() < b.ap_.real();
  return a.ap_.imag() < b.ap_.imag();
}

}  // namespace holant
