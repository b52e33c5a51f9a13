#include "doctest.h"

#include "holant/affine.hpp"
#include "holant/dichotomy.hpp"
#include "holant/entanglement.hpp"
#include "holant/eval.hpp"
#include "holant/gadgets.hpp"
#include "support.hpp"

using namespace holant;
using testsupport::Rng;

namespace {

Signature eq(int n) { return Signature::standard(StdSig::EQ, n); }
Signature one(int n) { return Signature::standard(StdSig::ONE, n); }

Signature random_e_member(Rng& rng, int arity) {
  std::vector<Scalar> v(std::size_t{1} << arity, Scalar(0));
  const std::size_t a = static_cast<std::size_t>(rng.uniform(0, (1 << arity) - 1));
  v[a] = rng.nonzero_scalar();
  v[v.size() - 1 - a] = rng.uniform(0, 3) ? rng.nonzero_scalar() : Scalar(0);
  return {arity, v};
}

Signature random_m_member(Rng& rng, int arity) {
  for (;;) {
    std::vector<Scalar> v(std::size_t{1} << arity, Scalar(0));
    v[0] = rng.scalar();
    for (int s = 0; s < arity; ++s) v[std::size_t{1} << s] = rng.scalar();
    Signature f(arity, v);
    if (!f.is_zero()) return f;
  }
}

Signature random_affine_member(Rng& rng, int arity) {
  for (;;) {
    AffineForm f;
    f.arity = arity;
    f.c = rng.nonzero_scalar();
    f.linear.assign(arity, 0);
    f.quad.assign(arity, 0);
    for (int j = 0; j < arity; ++j) f.linear[j] = static_cast<std::uint8_t>(rng.uniform(0, 3));
    for (int j = 0; j < arity; ++j)
      for (int k = j + 1; k < arity; ++k)
        if (rng.uniform(0, 1)) f.quad[j] |= 1u << k;
    std::vector<std::uint32_t> basis;
    for (int tries = 0; tries < arity; ++tries) {
      if (rng.uniform(0, 1)) continue;
      std::uint32_t vec = static_cast<std::uint32_t>(rng.uniform(1, (1 << arity) - 1));
      for (auto b2 : basis) {
        const std::uint32_t hb = 1u << (31 - __builtin_clz(b2));
        if (vec & hb) vec ^= b2;
      }
      if (!vec) continue;
      for (auto& b2 : basis) {
        const std::uint32_t hv = 1u << (31 - __builtin_clz(vec));
        if (b2 & hv) b2 ^= vec;
      }
      basis.push_back(vec);
    }
    f.basis = basis;
    f.offset = static_cast<std::uint32_t>(rng.uniform(0, (1 << arity) - 1));
    const Signature sig = f.to_signature();
    if (!sig.is_zero()) return sig;
  }
}

}  // namespace

TEST_CASE("conservative classification fixtures") {
  // {EQ2, [1,2]}: everything unary/binary
  const auto v1 = classify_conservative({eq(2), Signature(1, {1, 2})});
  CHECK(v1.polytime);
  CHECK(v1.case_name == "<T> (unary and binary factors)");

  // {EQ3}: generalized equalities with the identity transform
  const auto v2 = classify_conservative({eq(3)});
  CHECK(v2.polytime);
  CHECK(v2.case_name == "<O o E> with O = identity");

  // {EQ3, ONE3}: hard; every case is refuted with a witness
  const auto v3 = classify_conservative({eq(3), one(3)});
  CHECK_FALSE(v3.polytime);
  for (const auto& c : v3.checks) CHECK_FALSE(c.holds);
  CHECK(v3.checks.size() >= 5);

  // {ONE3}: perfect-matching counting; all four cases are refuted
  const auto v4 = classify_conservative({one(3)});
  CHECK_FALSE(v4.polytime);

  // the K-transformed matchings family is tractable
  const auto v5 = classify_conservative({transform(Mat2::k_matrix(), one(3))});
  CHECK(v5.polytime);
  CHECK(v5.case_name == "<K o M>");
}

TEST_CASE("conservative classification discovers non-trivial orthogonal transforms") {
  Rng rng(111);
  int done = 0;
  while (done < 25) {
    const Mat2 o = rng.scaled_orthogonal();
    std::vector<Signature> fam;
    const int members = rng.uniform(1, 3);
    for (int m = 0; m < members; ++m)
      fam.push_back(transform(o, random_e_member(rng, rng.uniform(1, 4))));
    bool trivially_e = true;
    for (const auto& f : fam) trivially_e = trivially_e && in_E_closure(f);
    const auto v = classify_conservative(fam);
    CHECK(v.polytime);
    if (!trivially_e && v.transform) {
      // the returned transform certifies membership through the predicate
      for (const auto& f : fam) CHECK(in_E_closure(f, *v.transform));
    }
    ++done;
  }
}

TEST_CASE("holant plus fixtures") {
  const auto v1 = classify_holant_plus({eq(3)});
  CHECK(v1.polytime);
  CHECK(v1.case_name == "affine");
  CHECK(v1.planar_valid);

  const auto v2 = classify_holant_plus({one(3)});
  CHECK_FALSE(v2.polytime);  // perfect matchings stay hard with the four unaries

  const auto d0 = Signature::standard(StdSig::Delta0, 1);
  const auto v3 = classify_holant_plus({tensor(d0, d0)});
  CHECK(v3.polytime);
  CHECK(v3.case_name == "<T> (unary and binary factors)");

  // ONE3 with a generic equality partner: hard
  const auto v4 = classify_holant_plus({one(3), eq(3)});
  CHECK_FALSE(v4.polytime);
}

TEST_CASE("holant c fixtures") {
  const auto v1 = classify_holant_c({eq(4)});
  CHECK(v1.polytime);
  CHECK(v1.case_name == "B o affine with B = identity");

  const auto v2 = classify_holant_c({eq(2)});
  CHECK(v2.polytime);
  CHECK(v2.case_name == "<T> (unary and binary factors)");

  // EQ3-like signature with an eighth root of unity: T o affine certifies it
  std::vector<Scalar> vals(8, Scalar(0));
  vals[0] = 1;
  vals[7] = Scalar::eipi4();
  const Signature zeta_eq(3, vals);
  const auto v3 = classify_holant_c({zeta_eq});
  CHECK(v3.polytime);
  CHECK(v3.case_name == "T o affine");

  const auto v4 = classify_holant_c({one(3), eq(3)});
  CHECK_FALSE(v4.polytime);

  const auto v5 = classify_holant_c({one(4)});
  CHECK_FALSE(v5.polytime);

  const auto v6 = classify_holant_c({transform(Mat2::kx_matrix(), one(4))});
  CHECK(v6.polytime);
  CHECK(v6.case_name == "<KX o M>");
}

TEST_CASE("csp and csp2c fixtures") {
  const auto v1 = classify_csp({Signature::standard(StdSig::NEQ, 2)});
  CHECK(v1.polytime);
  CHECK(v1.case_name == "<E> (generalized equalities)");

  const auto v2 = classify_csp({one(3)});
  CHECK_FALSE(v2.polytime);
  CHECK(v2.checks.size() == 2);

  // diag(1, zeta_8) as a binary signature: tractable for csp2c;
  // it is a generalized equality, which the case order reports first
  const Signature tz = SymSignature({Scalar(1), Scalar(0), Scalar::eipi4()}).expand();
  const auto v3 = classify_csp2c({tz});
  CHECK(v3.polytime);
  CHECK(v3.case_name == "<E> (generalized equalities)");
  // the T o affine membership holds for its affine pre-image as well
  const auto v3b = classify_csp2c({transform(Mat2::t_matrix(), eq(4))});
  CHECK(v3b.polytime);

  const auto v4 = classify_csp2c({one(3)});
  CHECK_FALSE(v4.polytime);

  // EQ4 is affine; csp2c order reports <E> first as well
  const auto v5 = classify_csp2c({eq(4)});
  CHECK(v5.polytime);
}

TEST_CASE("planar binary fixtures") {
  const auto v1 = classify_planar_binary(SymSignature({1, 1, -1}));
  CHECK(v1.polytime);
  CHECK(v1.case_name == "affine after a cube-root diagonal twist");

  const auto v2 = classify_planar_binary(SymSignature({2, 1, 2}));
  CHECK(v2.polytime);
  CHECK(v2.case_name == "matchgate form c [a, 1, b] with a^3 = b^3");

  const auto v3 = classify_planar_binary(SymSignature({3, 1, 5}));
  CHECK_FALSE(v3.polytime);

  const auto v4 = classify_planar_binary(SymSignature({3, 0, 5}));
  CHECK(v4.polytime);
  CHECK(v4.case_name == "<E> (generalized equality)");

  // degenerate [a,1,b] with ab = 1 is a generalized-equality member
  const auto v5 = classify_planar_binary(SymSignature({Scalar::rational(1, 2), 1, 2}));
  CHECK(v5.polytime);
}

TEST_CASE("planar binary cross-check on random inputs") {
  Rng rng(112);
  for (int t = 0; t < 200; ++t) {
    const SymSignature g({rng.scalar(), rng.scalar(), rng.scalar()});
    if (g.expand().is_zero()) continue;
    // the classifier throws logic_error if the X/Y cross-check disagrees
    const auto v = classify_planar_binary(g);
    CHECK((v.polytime || !v.checks.empty()));
  }
}

TEST_CASE("ternary bipartite fixtures") {
  // degenerate ternary side
  const auto v1 = classify_ternary_bipartite(SymSignature({1, 2, 3}),
                                             SymSignature({1, 1, 1, 1}));
  CHECK(v1.polytime);
  CHECK(v1.case_name == "ternary side degenerate");

  // EQ3 with an affine binary side
  const auto v2 = classify_ternary_bipartite(SymSignature({1, 0, 1}),
                                             SymSignature({1, 0, 0, 1}));
  CHECK(v2.polytime);

  // EQ3 with [1,2,3]: membership of [1,2,3] in affine or <E> fails
  const auto v3 = classify_ternary_bipartite(SymSignature({1, 2, 3}),
                                             SymSignature({1, 0, 0, 1}));
  CHECK_FALSE(v3.polytime);

  // W-side: ONE3 with y = (M^-1)^T o [0,a,b]
  const auto one3_sym = SymSignature({0, 1, 0, 0});
  const Mat2 m = w_state_witness(one3_sym);
  const Signature y = transform(m.inverse().transpose(), SymSignature({0, 2, 3}).expand());
  const auto ysym = to_symmetric(y);
  REQUIRE(ysym.has_value());
  const auto v4 = classify_ternary_bipartite(*ysym, one3_sym);
  CHECK(v4.polytime);
  CHECK(v4.case_name == "W form with the binary side vanishing at weight zero after M^T");

  const auto v5 = classify_ternary_bipartite(SymSignature({1, 0, 1}), one3_sym);
  CHECK_FALSE(v5.polytime);
}

TEST_CASE("ternary bipartite matches direct membership when M is identity-like") {
  Rng rng(113);
  int done = 0;
  while (done < 40) {
    const SymSignature y({rng.scalar(), rng.scalar(), rng.scalar()});
    if (y.expand().is_zero()) continue;
    const auto v = classify_ternary_bipartite(y, SymSignature({1, 0, 0, 1}));
    const bool direct = in_E_closure(y.expand()) || is_affine(y.expand());
    CHECK(v.polytime == direct);
    ++done;
  }
}

TEST_CASE("polytime verdict witnesses re-verify through the families predicates") {
  Rng rng(114);
  int done = 0;
  while (done < 30) {
    const Mat2 o = rng.scaled_orthogonal();
    std::vector<Signature> fam{transform(o, random_e_member(rng, 3)),
                               transform(o, random_e_member(rng, 2))};
    const auto v = classify_conservative(fam);
    REQUIRE(v.polytime);
    if (v.transform) {
      for (const auto& f : fam) CHECK(in_E_closure(f, *v.transform));
    }
    ++done;
  }
  // affine families through holant_c report a B-set witness
  for (int t = 0; t < 20; ++t) {
    std::vector<Signature> fam{random_affine_member(rng, rng.uniform(2, 4)),
                               random_affine_member(rng, rng.uniform(1, 3))};
    const auto v = classify_holant_c(fam);
    CHECK(v.polytime);
  }
}

TEST_CASE("classification is consistent across the problem hierarchy") {
  Rng rng(115);
  auto check_hierarchy = [&](const std::vector<Signature>& fam) {
    const auto vc = classify_conservative(fam);
    const auto vp = classify_holant_plus(fam);
    const auto vh = classify_holant_c(fam);
    if (vc.polytime) CHECK(vp.polytime);
    if (vp.polytime) CHECK(vh.polytime);
  };
  int done = 0;
  while (done < 12) {
    // conservative-tractable families
    const Mat2 o = rng.scaled_orthogonal();
    check_hierarchy({transform(o, random_e_member(rng, 3))});
    check_hierarchy({transform(Mat2::k_matrix(), random_m_member(rng, 3))});
    check_hierarchy({tensor(rng.nonzero_signature(2), rng.nonzero_signature(1))});
    ++done;
  }
  // affine families: plus-tractable, hence holant_c-tractable
  for (int t = 0; t < 8; ++t) {
    std::vector<Signature> fam{random_affine_member(rng, 3)};
    const auto vp = classify_holant_plus(fam);
    const auto vh = classify_holant_c(fam);
    CHECK(vp.polytime);
    CHECK(vh.polytime);
  }
  // local-affine curated members are holant_c-tractable
  {
    const auto vh = classify_holant_c({eq(4), eq(2)});
    CHECK(vh.polytime);
  }
}

TEST_CASE("tractable verdicts come with a working evaluator") {
  Rng rng(116);
  // families certified as <E> with the identity transform evaluate through
  // the generalized-equality engine, matching brute force on grids built
  // from their members
  int done = 0;
  while (done < 10) {
    const Signature e = random_e_member(rng, 2);
    if (e.is_zero()) continue;
    const auto v = classify_csp({e});
    REQUIRE(v.polytime);
    SignatureGrid g;
    g.vertices.push_back(e);
    g.vertices.push_back(e);
    g.edges.push_back({{0, 0}, {1, 0}});
    g.edges.push_back({{0, 1}, {1, 1}});
    CHECK(holant_generalized_equality(g) == holant_bruteforce(g));
    ++done;
  }
  // affine families evaluate through the gauss-sum engine
  done = 0;
  while (done < 10) {
    const Signature a = random_affine_member(rng, 2);
    const auto v = classify_holant_c({a});
    REQUIRE(v.polytime);
    SignatureGrid g;
    g.vertices.push_back(a);
    g.vertices.push_back(a);
    g.edges.push_back({{0, 0}, {1, 0}});
    g.edges.push_back({{0, 1}, {1, 1}});
    CHECK(holant_affine(g) == holant_bruteforce(g));
    ++done;
  }
}

TEST_CASE("hard families stay hard with extra members") {
  const auto v = classify_holant_c({one(3), eq(3)});
  CHECK_FALSE(v.polytime);
  const auto v2 = classify_holant_c({one(3), eq(3), Signature(1, {1, 5})});
  CHECK_FALSE(v2.polytime);
}

TEST_CASE("determinism: identical inputs give identical verdicts") {
  const std::vector<Signature> fam{one(4), eq(3)};
  const auto v1 = classify_holant_c(fam);
  const auto v2 = classify_holant_c(fam);
  CHECK(v1.polytime == v2.polytime);
  CHECK(v1.case_name == v2.case_name);
  CHECK(v1.trace == v2.trace);
  REQUIRE(v1.checks.size() == v2.checks.size());
  for (std::size_t i = 0; i < v1.checks.size(); ++i) {
    CHECK(v1.checks[i].name == v2.checks[i].name);
    CHECK(v1.checks[i].holds == v2.checks[i].holds);
  }
}

TEST_CASE("holant c discovers disguised affine families behind B-set transforms") {
  Rng rng(117);
  const auto& reps = b_set_representatives();
  REQUIRE(reps.size() >= 5);
  int done = 0;
  int tried = 0;
  while (done < 20 && tried < 200) {
    ++tried;
    const Mat2& b = reps[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(reps.size()) - 1))];
    std::vector<Signature> fam;
    const int members = rng.uniform(1, 2);
    for (int m = 0; m < members; ++m)
      fam.push_back(transform(b, random_affine_member(rng, rng.uniform(2, 4))));
    const auto v = classify_holant_c(fam);
    CHECK(v.polytime);
    if (!v.polytime) {
      // surface the defeated transform for debugging
      WARN(v.trace.size());
    }
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("conservative classification handles witnesses outside the field") {
  // the direction pair of [1,1,2,3] involves sqrt(5); membership is decided
  // in the quadratic extension
  const SymSignature fib({1, 1, 2, 3});
  const auto v = classify_conservative({fib.expand()});
  CHECK(v.polytime);
  CHECK(v.case_name == "<O o E> for an orthogonal O");
  CHECK_FALSE(v.transform.has_value());

  // tensor with a compatible member stays tractable; an incompatible member
  // turns it hard
  const auto v2 = classify_conservative({fib.expand(), Signature(1, {1, 7})});
  CHECK(v2.polytime);
  const auto v3 = classify_conservative(
      {fib.expand(), Signature::standard(StdSig::EQ, 3)});
  CHECK_FALSE(v3.polytime);
}

TEST_CASE("float backend classification smoke test") {
  auto approx_sig = [](const Signature& f) {
    std::vector<Scalar> v;
    for (const auto& s : f.values()) v.push_back(Scalar::approx(s.to_complex()));
    return Signature(f.arity(), v);
  };
  const auto v1 = classify_csp({approx_sig(Signature::standard(StdSig::EQ, 3))});
  CHECK(v1.polytime);
  const auto v2 = classify_holant_c({approx_sig(Signature::standard(StdSig::EQ, 4))});
  CHECK(v2.polytime);
  const auto v3 = classify_conservative({approx_sig(Signature::standard(StdSig::ONE, 3)),
                                         approx_sig(Signature::standard(StdSig::EQ, 3))});
  CHECK_FALSE(v3.polytime);
}

TEST_CASE("holant-c with an equality anchor matches the csp classifiers") {
  // adjoining EQ3 makes holant-c equivalent to the plain counting CSP, and
  // adjoining EQ4 to the even-occurrence variant; the verdicts must agree
  Rng rng(118);
  auto random_member = [&](int kind) -> Signature {
    switch (kind) {
      case 0: return rng.nonzero_signature(rng.uniform(1, 3));
      case 1: return random_affine_member(rng, rng.uniform(1, 3));
      case 2: return random_e_member(rng, rng.uniform(1, 3));
      case 3: return random_m_member(rng, rng.uniform(1, 3));
      default:
        return transform(Mat2::t_matrix(), random_affine_member(rng, rng.uniform(1, 3)));
    }
  };
  int done = 0;
  while (done < 40) {
    std::vector<Signature> fam;
    const int members = rng.uniform(1, 2);
    for (int m = 0; m < members; ++m) fam.push_back(random_member(rng.uniform(0, 4)));
    bool usable = true;
    for (const auto& f : fam) usable = usable && !f.is_zero();
    if (!usable) continue;

    std::vector<Signature> with_eq3 = fam;
    with_eq3.push_back(eq(3));
    CHECK(classify_csp(fam).polytime == classify_holant_c(with_eq3).polytime);

    std::vector<Signature> with_eq4 = fam;
    with_eq4.push_back(eq(4));
    CHECK(classify_csp2c(fam).polytime == classify_holant_c(with_eq4).polytime);
    ++done;
  }
}

TEST_CASE("holant-plus equals holant-c with the bias unaries adjoined") {
  Rng rng(119);
  const Signature dp = Signature::standard(StdSig::DeltaPlus, 1);
  const Signature dm = Signature::standard(StdSig::DeltaMinus, 1);
  auto random_member = [&](int kind) -> Signature {
    switch (kind) {
      case 0: return rng.nonzero_signature(rng.uniform(1, 3));
      case 1: return random_affine_member(rng, rng.uniform(1, 4));
      case 2: return random_e_member(rng, rng.uniform(1, 4));
      case 3: return transform(Mat2::k_matrix(), random_m_member(rng, rng.uniform(2, 3)));
      default: return transform(rng.scaled_orthogonal(), random_e_member(rng, 3));
    }
  };
  int done = 0;
  while (done < 40) {
    std::vector<Signature> fam;
    const int members = rng.uniform(1, 2);
    for (int m = 0; m < members; ++m) fam.push_back(random_member(rng.uniform(0, 4)));
    bool usable = true;
    for (const auto& f : fam) usable = usable && !f.is_zero();
    if (!usable) continue;
    std::vector<Signature> with_bias = fam;
    with_bias.push_back(dp);
    with_bias.push_back(dm);
    CHECK(classify_holant_plus(fam).polytime == classify_holant_c(with_bias).polytime);
    ++done;
  }
}

TEST_CASE("ternary bipartite with non-trivial GHZ witnesses") {
  Rng rng(120);
  const Signature eq3d = Signature::standard(StdSig::EQ, 3);
  int done = 0;
  while (done < 60) {
    const Mat2 m = rng.invertible_mat2();
    const auto x = to_symmetric(transform(m, eq3d));
    REQUIRE(x.has_value());
    if (classify_ternary_symmetric(*x).tag != EntangleTag::GHZ) continue;
    const Mat2 mt_inv = m.transpose().inverse();

    // y carried from an affine binary: the affine case must fire
    const Signature a = random_affine_member(rng, 2);
    const auto ya = to_symmetric(a);
    if (ya) {
      const auto y = to_symmetric(transform(mt_inv, ya->expand()));
      REQUIRE(y.has_value());
      if (!y->expand().is_zero()) {
        const auto v = classify_ternary_bipartite(*y, *x);
        CHECK(v.polytime);
      }
    }

    // y carried from a generalized-equality binary: the equality case fires
    std::vector<Scalar> ev(4, Scalar(0));
    const int pat = rng.uniform(0, 1);
    ev[pat ? 1 : 0] = rng.nonzero_scalar();
    ev[pat ? 2 : 3] = rng.nonzero_scalar();
    const auto ye = to_symmetric(transform(mt_inv, Signature(2, ev)));
    if (ye) {
      const auto v = classify_ternary_bipartite(*ye, *x);
      CHECK(v.polytime);
    }

    // a generic y almost surely defeats both conditions
    const SymSignature yg({rng.nonzero_scalar() + Scalar(5), rng.nonzero_scalar(),
                           rng.nonzero_scalar() + Scalar(7)});
    const auto vg = classify_ternary_bipartite(yg, *x);
    const Signature w = transform(m.transpose(), yg.expand());
    const bool direct = is_affine(w) || in_E_closure(w);
    if (!direct) CHECK_FALSE(vg.polytime);
    ++done;
  }
}
