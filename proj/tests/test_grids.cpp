#include "doctest.h"

#include "holant/eval.hpp"
#include "holant/grid.hpp"
#include "support.hpp"

using namespace holant;
using testsupport::Rng;

namespace {

SignatureGrid triangle_eq2() {
  SignatureGrid g;
  for (int v = 0; v < 3; ++v) g.vertices.push_back(Signature::standard(StdSig::EQ, 2));
  g.edges.push_back({{0, 1}, {1, 0}});
  g.edges.push_back({{1, 1}, {2, 0}});
  g.edges.push_back({{2, 1}, {0, 0}});
  return g;
}

}  // namespace

TEST_CASE("validate reports violations") {
  SignatureGrid g;
  g.vertices.push_back(Signature::standard(StdSig::EQ, 3));
  g.edges.push_back({{0, 0}, {0, 1}});
  const auto d = validate(g);
  REQUIRE_FALSE(d.ok());  // slot 2 unused

  SignatureGrid g2;
  g2.vertices.push_back(Signature::standard(StdSig::DeltaPlus, 1));
  g2.vertices.push_back(Signature::standard(StdSig::DeltaPlus, 1));
  g2.edges.push_back({{0, 0}, {1, 0}});
  CHECK(validate(g2).ok());

  SignatureGrid g3 = g2;
  g3.edges.push_back({{0, 0}, {1, 0}});  // slots used twice
  CHECK_FALSE(validate(g3).ok());
}

TEST_CASE("effective signature examples") {
  // EQ3 with a self-loop on slots 1,2 -> delta_plus
  Gadget g;
  g.grid.vertices.push_back(Signature::standard(StdSig::EQ, 3));
  g.grid.edges.push_back({{0, 1}, {0, 2}});
  g.dangling.push_back({0, 0});
  const auto f = effective_signature(g);
  CHECK(f == Signature::standard(StdSig::DeltaPlus, 1));

  // ONE3 with a self-loop -> delta_1
  Gadget g2;
  g2.grid.vertices.push_back(Signature::standard(StdSig::ONE, 3));
  g2.grid.edges.push_back({{0, 1}, {0, 2}});
  g2.dangling.push_back({0, 0});
  CHECK(effective_signature(g2) == Signature::standard(StdSig::Delta1, 1));
}

TEST_CASE("K4 of ONE3 counts the three perfect matchings") {
  SignatureGrid g;
  for (int v = 0; v < 4; ++v) g.vertices.push_back(Signature::standard(StdSig::ONE, 3));
  std::vector<std::vector<int>> next(4, std::vector<int>{0, 0, 0});
  int slot[4] = {0, 0, 0, 0};
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) g.edges.push_back({{a, slot[a]++}, {b, slot[b]++}});
  REQUIRE(validate(g).ok());
  const Gadget closed{g, {}};
  CHECK(effective_signature(closed)[0] == Scalar(3));
}

TEST_CASE("gadget with no internal edges is the tensor product") {
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const auto f = rng.signature(2);
    const auto h = rng.signature(1);
    Gadget g;
    g.grid.vertices.push_back(f);
    g.grid.vertices.push_back(h);
    g.dangling = {{0, 0}, {0, 1}, {1, 0}};
    CHECK(effective_signature(g) == tensor(f, h));
  }
}

TEST_CASE("cutting an edge and recontracting preserves the signature") {
  Rng rng(52);
  for (int t = 0; t < 20; ++t) {
    SignatureGrid g;
    g.vertices.push_back(rng.signature(3));
    g.vertices.push_back(rng.signature(3));
    g.edges.push_back({{0, 0}, {1, 0}});
    g.edges.push_back({{0, 1}, {1, 1}});
    g.edges.push_back({{0, 2}, {1, 2}});
    const Scalar whole = holant_bruteforce(g);

    // cut the last edge into two dangling ends
    Gadget cut;
    cut.grid.vertices = g.vertices;
    cut.grid.edges = {g.edges[0], g.edges[1]};
    cut.dangling = {{0, 2}, {1, 2}};
    const auto open_sig = effective_signature(cut);
    // recontract: sum the diagonal
    Scalar sum(0);
    for (std::size_t y = 0; y < 2; ++y) sum += open_sig[y * 2 + y];
    CHECK(sum == whole);
  }
}

TEST_CASE("genus of planar and nonplanar embeddings") {
  SignatureGrid tri = triangle_eq2();
  tri.rotation[0] = {0, 1};
  tri.rotation[1] = {0, 1};
  tri.rotation[2] = {0, 1};
  CHECK(genus(tri) == 0);

  // single vertex with one self-loop
  SignatureGrid loop;
  loop.vertices.push_back(Signature::standard(StdSig::EQ, 2));
  loop.edges.push_back({{0, 0}, {0, 1}});
  loop.rotation[0] = {0, 1};
  CHECK(genus(loop) == 0);

  // K5 admits no genus-0 embedding
  SignatureGrid k5;
  for (int v = 0; v < 5; ++v) k5.vertices.push_back(Signature::standard(StdSig::EQ, 4));
  int slot[5] = {0, 0, 0, 0, 0};
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) k5.edges.push_back({{a, slot[a]++}, {b, slot[b]++}});
  for (int v = 0; v < 5; ++v) k5.rotation[v] = {0, 1, 2, 3};
  CHECK(genus(k5) >= 1);

  SignatureGrid no_rot = triangle_eq2();
  CHECK_THROWS(genus(no_rot));

  // disconnected components sum their genus
  SignatureGrid two = triangle_eq2();
  const int base = static_cast<int>(two.vertices.size());
  for (int v = 0; v < 3; ++v) two.vertices.push_back(Signature::standard(StdSig::EQ, 2));
  two.edges.push_back({{base + 0, 1}, {base + 1, 0}});
  two.edges.push_back({{base + 1, 1}, {base + 2, 0}});
  two.edges.push_back({{base + 2, 1}, {base + 0, 0}});
  for (int v = 0; v < 6; ++v) two.rotation[v] = {0, 1};
  CHECK(genus(two) == 0);
}

TEST_CASE("effective signature is invariant under vertex relabeling") {
  Rng rng(53);
  for (int t = 0; t < 10; ++t) {
    SignatureGrid g;
    g.vertices.push_back(rng.signature(2));
    g.vertices.push_back(rng.signature(2));
    g.edges.push_back({{0, 0}, {1, 1}});
    Gadget gad{g, {{0, 1}, {1, 0}}};

    SignatureGrid r;  // swap vertex ids
    r.vertices.push_back(g.vertices[1]);
    r.vertices.push_back(g.vertices[0]);
    r.edges.push_back({{1, 0}, {0, 1}});
    Gadget rad{r, {{1, 1}, {0, 0}}};
    CHECK(effective_signature(gad) == effective_signature(rad));
  }
}
