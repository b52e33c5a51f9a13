#include "holant/gadgets.hpp"

#include <algorithm>

#include "holant/detail/tensor_ops.hpp"
#include "holant/families.hpp"

namespace holant {

GadgetBuilder::GadgetBuilder(const Signature& f) {
  g_.grid.vertices.push_back(f);
  for (int s = 0; s < f.arity(); ++s) g_.dangling.push_back({0, s});
}

void GadgetBuilder::pin(int dangling_pos, const Signature& unary) {
  const int v = static_cast<int>(g_.grid.vertices.size());
  g_.grid.vertices.push_back(unary);
  g_.grid.edges.push_back({g_.dangling[dangling_pos], {v, 0}});
  g_.dangling.erase(g_.dangling.begin() + dangling_pos);
}

void GadgetBuilder::self_loop(int pos_i, int pos_j) {
  const int lo = std::min(pos_i, pos_j), hi = std::max(pos_i, pos_j);
  g_.grid.edges.push_back({g_.dangling[lo], g_.dangling[hi]});
  g_.dangling.erase(g_.dangling.begin() + hi);
  g_.dangling.erase(g_.dangling.begin() + lo);
}

void GadgetBuilder::prepend_binary(const Signature& binary, int pos) {
  const int v = static_cast<int>(g_.grid.vertices.size());
  g_.grid.vertices.push_back(binary);
  g_.grid.edges.push_back({{v, 1}, g_.dangling[pos]});
  g_.dangling[pos] = {v, 0};
}

void GadgetBuilder::permute_dangling(const std::vector<int>& perm) {
  std::vector<EdgeEnd> nd(g_.dangling.size());
  for (std::size_t j = 0; j < perm.size(); ++j) nd[perm[j]] = g_.dangling[j];
  g_.dangling = std::move(nd);
}

void GadgetBuilder::square_join(const std::vector<int>& joined_positions) {
  const int offset = static_cast<int>(g_.grid.vertices.size());
  const Gadget copy = g_;
  for (const auto& v : copy.grid.vertices) g_.grid.vertices.push_back(v);
  for (auto e : copy.grid.edges) {
    e.a.vertex += offset;
    e.b.vertex += offset;
    g_.grid.edges.push_back(e);
  }
  std::vector<char> joined(g_.dangling.size(), 0);
  for (int p : joined_positions) {
    EdgeEnd other = copy.dangling[p];
    other.vertex += offset;
    g_.grid.edges.push_back({copy.dangling[p], other});
    joined[p] = 1;
  }
  std::vector<EdgeEnd> nd;
  for (std::size_t p = 0; p < copy.dangling.size(); ++p)
    if (!joined[p]) nd.push_back(copy.dangling[p]);
  for (std::size_t p = 0; p < copy.dangling.size(); ++p) {
    if (joined[p]) continue;
    EdgeEnd e = copy.dangling[p];
    e.vertex += offset;
    nd.push_back(e);
  }
  g_.dangling = std::move(nd);
}

GadgetRecipe GadgetBuilder::recipe(Signature result) const {
  return {g_, log_, std::move(result)};
}

Signature contract_unary(const Signature& f, int slot, const Signature& u) {
  if (u.arity() != 1) throw std::invalid_argument("contraction requires a unary signature");
  const int n = f.arity();
  if (slot < 0 || slot >= n) throw std::invalid_argument("slot out of range");
  std::vector<Scalar> v(f.size() >> 1, f[0].zero_like());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    const int bit = detail::arg_bit(i, slot, n);
    std::size_t j = 0;
    int pos = 0;
    for (int s = 0; s < n; ++s) {
      if (s == slot) continue;
      j = detail::with_arg_bit(j, pos++, n - 1, detail::arg_bit(i, s, n));
    }
    v[j] += f[i] * u[bit];
  }
  return {n - 1, std::move(v)};
}

Signature self_loop(const Signature& f, int i, int j) {
  const int n = f.arity();
  if (i == j) throw std::invalid_argument("self-loop needs two distinct arguments");
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::invalid_argument("slot out of range");
  std::vector<Scalar> v(f.size() >> 2, f[0].zero_like());
  for (std::size_t idx = 0; idx < f.size(); ++idx) {
    if (f[idx].is_zero()) continue;
    if (detail::arg_bit(idx, i, n) != detail::arg_bit(idx, j, n)) continue;
    std::size_t out = 0;
    int pos = 0;
    for (int s = 0; s < n; ++s) {
      if (s == i || s == j) continue;
      out = detail::with_arg_bit(out, pos++, n - 2, detail::arg_bit(idx, s, n));
    }
    v[out] += f[idx];
  }
  return {n - 2, std::move(v)};
}

Signature holographic(const Mat2& m, const Signature& f, bool transpose) {
  if (!m.invertible()) throw field_error("singular holographic transform");
  return transform(transpose ? m.transpose() : m, f);
}

const std::vector<Signature>& extraction_unaries() {
  static const std::vector<Signature> us = {
      Signature::standard(StdSig::Delta0, 1), Signature::standard(StdSig::Delta1, 1),
      Signature::standard(StdSig::DeltaPlus, 1), Signature::standard(StdSig::DeltaMinus, 1)};
  return us;
}

namespace {

Signature unary_for(int index, const Scalar& proto) {
  return to_backend(extraction_unaries()[index], proto);
}

}  // namespace

const char* extraction_unary_name(int index) {
  static const char* names[4] = {"delta_0", "delta_1", "delta_+", "delta_-"};
  return names[index];
}

namespace {

bool nondecomposable_binary(const Signature& f) {
  return !(f[0] * f[3] - f[1] * f[2]).is_zero();
}

bool nondecomposable_ternary(const Signature& f) {
  if (f.is_zero()) return false;
  const auto tag = classify_ternary(f).tag;
  return tag == EntangleTag::GHZ || tag == EntangleTag::W;
}

std::string unaries_to_string(const std::vector<int>& choice) {
  std::string out;
  for (std::size_t t = 0; t < choice.size(); ++t) {
    if (t) out += ", ";
    out += extraction_unary_name(choice[t]);
  }
  return out;
}

}  // namespace

BinaryExtraction pr_binary_extract(const Signature& f, int j, int k) {
  const int n = f.arity();
  if (n < 2) throw std::invalid_argument("arity >= 2 required");
  if (j == k || j < 0 || k < 0 || j >= n || k >= n)
    throw std::invalid_argument("two distinct slots required");
  if (is_decomposable(f)) throw std::invalid_argument("non-decomposable input required");
  std::vector<int> others;
  for (int s = 0; s < n; ++s)
    if (s != j && s != k) others.push_back(s);
  const int m = static_cast<int>(others.size());
  std::vector<Signature> us;
  for (int u = 0; u < 4; ++u) us.push_back(unary_for(u, f[0]));

  std::vector<int> choice(m, 0);
  for (;;) {
    Signature g = f;
    // contract from the highest slot down so indices stay valid
    for (int t = m - 1; t >= 0; --t) g = contract_unary(g, others[t], us[choice[t]]);
    if (nondecomposable_binary(g)) {
      GadgetBuilder b(f);
      for (int t = m - 1; t >= 0; --t) b.pin(others[t], us[choice[t]]);
      if (j > k) {
        b.permute_dangling({1, 0});
        g = permute(g, {1, 0});
      }
      b.note("kept argument pair (" + std::to_string(j) + ", " + std::to_string(k) +
             "), pinned the rest with " + unaries_to_string(choice));
      return {g, choice, b.recipe(g)};
    }
    int t = m - 1;  // advance the tuple; first slot most significant
    while (t >= 0 && choice[t] == 3) choice[t--] = 0;
    if (t < 0) break;
    ++choice[t];
  }
  throw theorem_violation("no unary projection left the pair entangled");
}

TernaryExtraction ternary_extract(const Signature& f) {
  const int n = f.arity();
  if (n < 3) throw std::invalid_argument("arity >= 3 required");
  if (is_decomposable(f)) throw std::invalid_argument("non-decomposable input required");
  if (n == 3) {
    GadgetBuilder b(f);
    return {f, {0, 1, 2}, b.recipe(f)};
  }
  std::vector<Signature> us;
  for (int u = 0; u < 4; ++u) us.push_back(unary_for(u, f[0]));
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      for (int l = k + 1; l < n; ++l) {
        std::vector<int> others;
        for (int s = 0; s < n; ++s)
          if (s != j && s != k && s != l) others.push_back(s);
        const int m = static_cast<int>(others.size());
        std::vector<int> choice(m, 0);
        for (;;) {
          Signature g = f;
          for (int t = m - 1; t >= 0; --t) g = contract_unary(g, others[t], us[choice[t]]);
          if (nondecomposable_ternary(g)) {
            GadgetBuilder b(f);
            for (int t = m - 1; t >= 0; --t) b.pin(others[t], us[choice[t]]);
            b.note("kept arguments (" + std::to_string(j) + ", " + std::to_string(k) + ", " +
                   std::to_string(l) + "), pinned the rest with " + unaries_to_string(choice));
            return {g, {j, k, l}, b.recipe(g)};
          }
          int t = m - 1;
          while (t >= 0 && choice[t] == 3) choice[t--] = 0;
          if (t < 0) break;
          ++choice[t];
        }
      }
    }
  }
  throw theorem_violation("no projection onto three arguments stayed non-decomposable");
}

Signature triangle_symmetrize(const Signature& f, int rotation) {
  if (f.arity() != 3) throw std::invalid_argument("ternary signature required");
  if (rotation < 0 || rotation > 2) throw std::invalid_argument("rotation must be 0, 1 or 2");
  std::vector<int> perm(3);
  for (int s = 0; s < 3; ++s) perm[s] = (s + rotation) % 3;
  const Signature fr = permute(f, perm);
  std::vector<Scalar> out(8, f[0].zero_like());
  for (std::size_t x = 0; x < 8; ++x) {
    const std::size_t x1 = (x >> 2) & 1, x2 = (x >> 1) & 1, x3 = x & 1;
    Scalar acc = f[0].zero_like();
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t c = 0; c < 2; ++c)
          acc += fr[(x1 << 2) | (a << 1) | c] * fr[(x2 << 2) | (b << 1) | a] *
                 fr[(x3 << 2) | (c << 1) | b];
    out[x] = acc;
  }
  return {3, std::move(out)};
}

namespace {

Gadget triangle_gadget(const Signature& fr) {
  Gadget g;
  for (int t = 0; t < 3; ++t) g.grid.vertices.push_back(fr);
  g.grid.edges.push_back({{0, 1}, {1, 2}});
  g.grid.edges.push_back({{1, 1}, {2, 2}});
  g.grid.edges.push_back({{2, 1}, {0, 2}});
  g.dangling = {{0, 0}, {1, 0}, {2, 0}};
  return g;
}

Signature escape_compose(const Signature& helper, const Signature& f) {
  return self_loop(tensor(helper, f), 1, 2);
}

std::optional<Mat2> m_family_of(const Signature& f) {
  const Mat2 k = to_backend(Mat2::k_matrix(), f[0]);
  const Mat2 kx = to_backend(Mat2::kx_matrix(), f[0]);
  if (in_M_closure(f, k)) return k;
  if (in_M_closure(f, kx)) return kx;
  return std::nullopt;
}

}  // namespace

SymmetrizeResult symmetrize(const Signature& f, const std::optional<Signature>& helper) {
  if (f.arity() != 3) throw std::invalid_argument("ternary signature required");
  if (!nondecomposable_ternary(f)) throw std::invalid_argument("non-decomposable input required");

  Signature work = f;
  std::vector<std::string> log;
  std::optional<Signature> escape_helper;  // recorded for the recipe

  for (int round = 0; round < 4; ++round) {
    const auto sym = to_symmetric(work);
    const auto tag = classify_ternary(work).tag;
    if (sym && tag == EntangleTag::GHZ) {
      GadgetBuilder b(work);
      if (escape_helper) {
        // reconstruct the recipe: helper composed onto the original input
        GadgetBuilder orig(f);
        orig.prepend_binary(*escape_helper, 0);
        GadgetRecipe r{orig.gadget(), log, work};
        return {*sym, std::move(r)};
      }
      GadgetRecipe r{b.gadget(), log, work};
      if (round == 0) r.log.push_back("input already symmetric");
      return {*sym, std::move(r)};
    }
    if (tag == EntangleTag::W || sym) {
      const auto fam = m_family_of(work);
      if (fam) {
        if (!helper)
          throw std::invalid_argument(
              "input lies in a transformed matchings family; a helper binary signature "
              "outside that closure is required");
        if (helper->arity() != 2 || in_M_closure(*helper, *fam))
          throw std::invalid_argument("helper must be binary and outside the closure");
        work = escape_compose(*helper, work);
        escape_helper = helper;
        log.push_back("escape composition with the helper on the first argument");
        if (m_family_of(work))
          throw theorem_violation("escape composition failed to leave the family");
        if (!nondecomposable_ternary(work))
          throw theorem_violation("escape composition lost entanglement");
        continue;
      }
      for (int rot = 0; rot < 3; ++rot) {
        const Signature h = triangle_symmetrize(work, rot);
        if (h.is_zero()) continue;
        const auto hs = to_symmetric(h);
        if (!hs) throw std::logic_error("triangle output was not symmetric");
        if (classify_ternary_symmetric(*hs).tag == EntangleTag::GHZ) {
          std::vector<int> perm(3);
          for (int s = 0; s < 3; ++s) perm[s] = (s + rot) % 3;
          Gadget tg = triangle_gadget(permute(work, perm));
          log.push_back("triangle gadget, rotation " + std::to_string(rot));
          GadgetRecipe r{tg, log, h};
          return {*hs, std::move(r)};
        }
      }
      throw theorem_violation("no triangle rotation of a W-type signature gave GHZ output");
    }
    // asymmetric GHZ input: one rotation is non-decomposable or the input
    // would have been symmetric
    bool advanced = false;
    for (int rot = 0; rot < 3 && !advanced; ++rot) {
      const Signature h = triangle_symmetrize(work, rot);
      if (h.is_zero()) continue;
      const auto hs = to_symmetric(h);
      if (!hs) throw std::logic_error("triangle output was not symmetric");
      const auto htag = classify_ternary_symmetric(*hs).tag;
      if (htag == EntangleTag::GHZ) {
        std::vector<int> perm(3);
        for (int s = 0; s < 3; ++s) perm[s] = (s + rot) % 3;
        Gadget tg = triangle_gadget(permute(work, perm));
        log.push_back("triangle gadget, rotation " + std::to_string(rot));
        GadgetRecipe r{tg, log, h};
        return {*hs, std::move(r)};
      }
      if (htag == EntangleTag::W) {
        work = h;
        log.push_back("triangle gadget, rotation " + std::to_string(rot) +
                      " (W-type intermediate)");
        advanced = true;
      }
    }
    if (!advanced)
      throw theorem_violation("all rotations decomposable for an asymmetric GHZ input");
  }
  throw theorem_violation("symmetrisation did not terminate");
}

EscapeResult binary_escape(const Signature& f, MFamily which) {
  if (f.is_zero()) throw std::invalid_argument("zero signature");
  const Mat2 t =
      to_backend(which == MFamily::K ? Mat2::k_matrix() : Mat2::kx_matrix(), f[0]);
  if (in_M_closure(f, t))
    throw std::invalid_argument("input already lies inside the transformed closure");

  Signature work = f;
  GadgetBuilder b(f);
  std::vector<Signature> us;
  for (int u = 0; u < 4; ++u) us.push_back(unary_for(u, f[0]));
  while (work.arity() > 2) {
    if (is_decomposable(work)) {
      const auto fz = factorize(work);
      int chosen = -1;
      for (std::size_t fi = 0; fi < fz.factors.size(); ++fi) {
        if (!in_M_closure(fz.factors[fi].factor, t)) {
          chosen = static_cast<int>(fi);
          break;
        }
      }
      if (chosen < 0) throw std::logic_error("decomposable with all factors in the closure");
      std::size_t ref = 0;
      while (work[ref].is_zero()) ++ref;
      const auto& keep = fz.factors[chosen].slots;
      for (int s = work.arity() - 1; s >= 0; --s) {
        if (std::find(keep.begin(), keep.end(), s) != keep.end()) continue;
        const int bit = detail::arg_bit(ref, s, work.arity());
        work = contract_unary(work, s, us[bit]);
        b.pin(s, us[bit]);
      }
      b.note("pinned away tensor factors inside the closure");
      continue;
    }
    bool advanced = false;
    for (int s = 0; s < work.arity() && !advanced; ++s) {
      for (int u = 0; u < 4 && !advanced; ++u) {
        const Signature h = contract_unary(work, s, us[u]);
        if (h.is_zero()) continue;
        if (!in_M_closure(h, t)) {
          work = h;
          b.pin(s, us[u]);
          b.note(std::string("contracted slot ") + std::to_string(s) + " with " +
                 extraction_unary_name(u));
          advanced = true;
        }
      }
    }
    if (!advanced)
      throw theorem_violation("no contraction stayed outside the transformed closure");
  }
  if (!nondecomposable_binary(work))
    throw std::logic_error("escape produced a decomposable binary signature");
  return {work, b.recipe(work)};
}

UnaryChain unary_chain(const Signature& kprime, int sign, int length) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  if (length < 0) throw std::invalid_argument("length must be non-negative");
  const auto sym = kprime.arity() == 2 ? to_symmetric(kprime) : std::nullopt;
  if (!sym || !(*sym)[2].is_zero() || (*sym)[1].is_zero())
    throw std::invalid_argument("kprime must be symmetric binary of shape [w, 1, 0]");

  const Signature seed = to_backend(sign > 0 ? Signature::standard(StdSig::DeltaPlus, 1)
                                             : Signature::standard(StdSig::DeltaMinus, 1),
                                    kprime[0]);
  const Signature neq = to_backend(Signature::standard(StdSig::NEQ, 2), kprime[0]);

  Gadget g;
  g.grid.vertices.push_back(seed);
  EdgeEnd tail{0, 0};
  for (int seg = 0; seg < length; ++seg) {
    const int kv = static_cast<int>(g.grid.vertices.size());
    g.grid.vertices.push_back(kprime);
    g.grid.edges.push_back({tail, {kv, 0}});
    const int nv = kv + 1;
    g.grid.vertices.push_back(neq);
    g.grid.edges.push_back({{kv, 1}, {nv, 0}});
    tail = {nv, 1};
  }
  g.dangling = {tail};
  return {effective_signature(g), g};
}

// ---------------------------------------------------------------------------
// the pinning pipeline

namespace {

std::size_t permute_index(std::size_t idx, const std::vector<int>& perm, int n) {
  std::size_t out = 0;
  for (int j = 0; j < n; ++j)
    out = detail::with_arg_bit(out, perm[j], n, detail::arg_bit(idx, j, n));
  return out;
}

struct Work {
  Signature sig;
  GadgetBuilder builder;
  HardCoreTrace* trace;

  void step(const std::string& s) { trace->steps.push_back(s); }

  void pin(int slot, int unary_index) {
    const Signature u = unary_for(unary_index, sig[0]);
    sig = contract_unary(sig, slot, u);
    builder.pin(slot, u);
    step("pin slot " + std::to_string(slot) + " with " + extraction_unary_name(unary_index));
  }

  void pin_delta(int slot, int bit) { pin(slot, bit); }

  void pin_with(int slot, const Signature& unary, const std::string& what) {
    sig = contract_unary(sig, slot, unary);
    builder.pin(slot, unary);
    step(what);
  }

  void loop(int i, int j) {
    sig = self_loop(sig, i, j);
    builder.self_loop(i, j);
    step("self-loop on slots " + std::to_string(i) + ", " + std::to_string(j));
  }

  void apply_permute(const std::vector<int>& perm) {
    sig = permute(sig, perm);
    builder.permute_dangling(perm);
  }

  void compose_binary_front(const Signature& binary, const std::string& what) {
    sig = self_loop(tensor(binary, sig), 1, 2);
    builder.prepend_binary(binary, 0);
    step(what);
  }

  void double_join_last_two() {
    const int n = sig.arity();
    Signature t = tensor(sig, sig);
    t = self_loop(t, n - 2, 2 * n - 2);
    t = self_loop(t, n - 2, 2 * n - 3);
    sig = t;
    builder.square_join({n - 2, n - 1});
    step("joined two copies on the last two arguments");
  }
};

int min_support_distance(const std::vector<std::size_t>& supp, std::size_t& a,
                         std::size_t& b) {
  int best = 1 << 30;
  for (std::size_t i = 0; i < supp.size(); ++i) {
    for (std::size_t j = i + 1; j < supp.size(); ++j) {
      const int d = hamming(supp[i] ^ supp[j]);
      if (d < best) {
        best = d;
        a = supp[i];
        b = supp[j];
      }
    }
  }
  return best;
}

// move the coordinates where a and b differ to the front, in order,
// updating the pair along the way
void focus_window(Work& w, std::size_t& a, std::size_t& b, int window) {
  const int n = w.sig.arity();
  std::vector<int> perm(n);
  int dpos = 0, spos = window;
  for (int s = 0; s < n; ++s) {
    if (detail::arg_bit(a, s, n) != detail::arg_bit(b, s, n)) perm[s] = dpos++;
    else perm[s] = spos++;
  }
  if (dpos != window) throw std::logic_error("window size mismatch");
  w.apply_permute(perm);
  a = permute_index(a, perm, n);
  b = permute_index(b, perm, n);
}

bool two_point_complementary(const Signature& f, std::size_t& a, std::size_t& b) {
  const auto supp = support(f);
  if (supp.size() != 2) return false;
  if ((supp[0] ^ supp[1]) != f.size() - 1) return false;
  a = supp[0];
  b = supp[1];
  return true;
}

bool nondecomposable_ternary_sig(const Signature& f) {
  if (f.is_zero()) return false;
  const auto tag = classify_ternary(f).tag;
  return tag == EntangleTag::GHZ || tag == EntangleTag::W;
}

HardCoreOutcome emit_ternary(Work& w, HardCoreTrace* trace) {
  if (!nondecomposable_ternary_sig(w.sig))
    throw theorem_violation("pipeline produced a decomposable ternary signature");
  HardCoreOutcome out;
  out.kind = HardCoreKind::TernaryNonDecomposable;
  out.signature = w.sig;
  out.trace = *trace;
  out.trace.construction = w.builder.gadget();
  return out;
}

bool geneq4_shape(const Signature& f) {
  if (f.arity() != 4) return false;
  std::size_t a = 0, b = 0;
  if (two_point_complementary(f, a, b)) return true;
  // interpolation shape: corner support with a full-rank corner matrix
  for (std::size_t i = 0; i < 16; ++i) {
    if (i == 0 || i == 3 || i == 12 || i == 15) continue;
    if (!f[i].is_zero()) return false;
  }
  return !(f[0] * f[15] - f[3] * f[12]).is_zero();
}

HardCoreOutcome emit_geneq4(Work& w, HardCoreTrace* trace) {
  if (!geneq4_shape(w.sig))
    throw theorem_violation("pipeline produced a malformed arity-4 signature");
  HardCoreOutcome out;
  out.kind = HardCoreKind::GeneralizedEquality4;
  out.signature = w.sig;
  out.trace = *trace;
  out.trace.construction = w.builder.gadget();
  return out;
}

// reduce a two-point complementary signature to arity 4 or 3 by parity
HardCoreOutcome finish_two_point(Work w, HardCoreTrace* trace) {
  std::size_t a = 0, b = 0;
  if (!two_point_complementary(w.sig, a, b))
    throw std::logic_error("expected a two-point complementary signature");
  while (w.sig.arity() > 4 || (w.sig.arity() > 3 && w.sig.arity() % 2 == 1)) {
    const int n = w.sig.arity();
    int si = -1, sj = -1;
    for (int i = 0; i < n && si < 0; ++i)
      for (int j = i + 1; j < n && si < 0; ++j)
        if (detail::arg_bit(a, i, n) == detail::arg_bit(a, j, n)) {
          si = i;
          sj = j;
        }
    if (si < 0) throw std::logic_error("no agreeing coordinate pair for a self-loop");
    w.loop(si, sj);
    if (!two_point_complementary(w.sig, a, b))
      throw std::logic_error("self-loop lost the two-point form");
  }
  return w.sig.arity() == 3 ? emit_ternary(w, trace) : emit_geneq4(w, trace);
}

Signature slice_rest(const Signature& f, int window, std::size_t point) {
  Signature g = f;
  for (int s = f.arity() - 1; s >= window; --s)
    g = contract_unary(g, s, unary_for(detail::arg_bit(point, s, f.arity()), f[0]));
  return g;
}

}  // namespace

HardCoreOutcome extract_hard_core(const std::vector<Signature>& family) {
  HardCoreTrace trace;

  std::optional<Work> start;
  for (std::size_t fi = 0; fi < family.size() && !start; ++fi) {
    const auto& f = family[fi];
    if (f.is_zero()) continue;
    const auto fz = factorize(f);
    for (std::size_t bi = 0; bi < fz.factors.size(); ++bi) {
      if (fz.factors[bi].factor.arity() < 3) continue;
      if (is_decomposable(fz.factors[bi].factor)) continue;  // cannot happen: finest
      Work w{f, GadgetBuilder(f), &trace};
      trace.steps.push_back("family member " + std::to_string(fi) +
                            ": non-decomposable factor of arity " +
                            std::to_string(fz.factors[bi].factor.arity()));
      std::size_t ref = 0;
      while (f[ref].is_zero()) ++ref;
      const auto& keep = fz.factors[bi].slots;
      for (int s = f.arity() - 1; s >= 0; --s) {
        if (std::find(keep.begin(), keep.end(), s) != keep.end()) continue;
        w.pin_delta(s, detail::arg_bit(ref, s, f.arity()));
      }
      start = std::move(w);
      break;
    }
  }
  if (!start) {
    HardCoreOutcome out;
    out.kind = HardCoreKind::NotApplicable;
    out.trace.steps.push_back("no non-decomposable factor of arity >= 3");
    return out;
  }
  Work w = std::move(*start);

  if (w.sig.arity() == 3) return emit_ternary(w, &trace);

  auto supp = support(w.sig);
  std::size_t a = 0, b = 0;
  const int d0 = min_support_distance(supp, a, b);
  trace.d0 = d0;
  trace.support_pair = {a, b};
  trace.steps.push_back("D0 = " + std::to_string(d0));

  if (d0 >= 3) {
    focus_window(w, a, b, d0);
    for (int s = w.sig.arity() - 1; s >= d0; --s)
      w.pin_delta(s, detail::arg_bit(a, s, w.sig.arity()));
    return finish_two_point(std::move(w), &trace);
  }

  if (d0 == 2) {
    focus_window(w, a, b, 2);
    const int n = w.sig.arity();
    Signature g = slice_rest(w.sig, 2, a);
    if (!(g[1].is_zero() && g[2].is_zero())) {
      w.compose_binary_front(g, "composed the anti-diagonal slice onto the first argument");
      a ^= std::size_t{1} << (n - 1);
      b ^= std::size_t{1} << (n - 1);
      g = slice_rest(w.sig, 2, a);
      if (!(g[1].is_zero() && g[2].is_zero()))
        throw std::logic_error("composition did not diagonalise the window");
    }
    const int rest = n - 2;
    auto slice2 = [&](std::size_t x) {
      return Signature(2, {w.sig[x], w.sig[(std::size_t{1} << rest) + x],
                           w.sig[(std::size_t{2} << rest) + x],
                           w.sig[(std::size_t{3} << rest) + x]});
    };
    std::vector<std::size_t> a_class, b_class;
    for (std::size_t x = 0; x < (std::size_t{1} << rest); ++x) {
      const Signature fx = slice2(x);
      if (fx.is_zero()) continue;
      if (scale_equiv(fx, g)) a_class.push_back(x);
      else b_class.push_back(x);
    }
    if (a_class.empty() || b_class.empty())
      throw theorem_violation("distance-class analysis found no second class");
    int d1 = 1 << 30;
    std::size_t a1 = 0, b1 = 0;
    for (auto xa : a_class)
      for (auto xb : b_class) {
        const int d = hamming(xa ^ xb);
        if (d < d1) {
          d1 = d;
          a1 = xa;
          b1 = xb;
        }
      }
    trace.d1 = d1;
    trace.steps.push_back("D1 = " + std::to_string(d1));
    const Signature gp = slice2(b1);
    for (int s = rest - 1; s >= 0; --s) {
      if (detail::arg_bit(a1, s, rest) == detail::arg_bit(b1, s, rest))
        w.pin_delta(2 + s, detail::arg_bit(a1, s, rest));
    }
    const bool gp_diag = gp[1].is_zero() && gp[2].is_zero();
    if (d1 >= 3) {
      if (gp_diag) {
        const int p = gp[0].is_zero() ? 1 : 0;
        w.pin_delta(1, p);
        w.pin_delta(0, p);
      } else {
        const int p = gp[1].is_zero() ? 1 : 0;
        w.pin_delta(0, p);
      }
      return finish_two_point(std::move(w), &trace);
    }
    if (d1 == 2) {
      if (gp_diag) {
        std::vector<int> diffs;
        for (int s = 0; s < rest; ++s)
          if (detail::arg_bit(a1, s, rest) != detail::arg_bit(b1, s, rest)) diffs.push_back(s);
        const int pa = detail::arg_bit(a1, diffs[0], rest);
        const int pb = detail::arg_bit(a1, diffs[1], rest);
        if (pa != pb) w.double_join_last_two();
        return emit_geneq4(w, &trace);
      }
      const int p = gp[1].is_zero() ? 1 : 0;
      w.pin_delta(0, p);
      return emit_ternary(w, &trace);
    }
    return emit_ternary(w, &trace);  // d1 == 1
  }

  // d0 == 1
  focus_window(w, a, b, 1);
  {
    const int n = w.sig.arity();
    const int rest = n - 1;
    auto slice1 = [&](std::size_t x) {
      return Signature(1, {w.sig[x], w.sig[(std::size_t{1} << rest) + x]});
    };
    const Signature g = slice1(a & ((std::size_t{1} << rest) - 1));
    std::vector<std::size_t> a_class, b_class;
    for (std::size_t x = 0; x < (std::size_t{1} << rest); ++x) {
      const Signature fx = slice1(x);
      if (fx.is_zero()) continue;
      if (scale_equiv(fx, g)) a_class.push_back(x);
      else b_class.push_back(x);
    }
    if (a_class.empty() || b_class.empty())
      throw theorem_violation("distance-class analysis found no second class");
    int d2 = 1 << 30;
    std::size_t a2 = 0, b2 = 0;
    for (auto xa : a_class)
      for (auto xb : b_class) {
        const int d = hamming(xa ^ xb);
        if (d < d2) {
          d2 = d;
          a2 = xa;
          b2 = xb;
        }
      }
    trace.d2 = d2;
    trace.steps.push_back("D2 = " + std::to_string(d2));
    const Signature gp = slice1(b2);

    if (d2 >= 2) {
      for (int s = rest - 1; s >= 0; --s) {
        if (detail::arg_bit(a2, s, rest) == detail::arg_bit(b2, s, rest))
          w.pin_delta(1 + s, detail::arg_bit(a2, s, rest));
      }
      if (d2 == 2) return emit_ternary(w, &trace);
      const int p = gp[0].is_zero() ? 1 : 0;
      w.pin_delta(0, p);
      return finish_two_point(std::move(w), &trace);
    }

    // d2 == 1: non-decomposable binary slice; analyse proportionality to it
    const int diff_slot = [&] {
      for (int s = 0; s < rest; ++s)
        if (detail::arg_bit(a2, s, rest) != detail::arg_bit(b2, s, rest)) return s;
      throw std::logic_error("expected one differing coordinate");
    }();
    std::vector<int> perm(n);
    perm[0] = 0;
    perm[1 + diff_slot] = 1;
    int pos = 2;
    for (int s = 1; s < n; ++s)
      if (s != 1 + diff_slot) perm[s] = pos++;
    w.apply_permute(perm);

    const int rest2 = n - 2;
    std::size_t rest_point = 0;
    {
      int rp = 0;
      for (int s = 0; s < rest; ++s) {
        if (s == diff_slot) continue;
        rest_point =
            detail::with_arg_bit(rest_point, rp++, rest2, detail::arg_bit(a2, s, rest));
      }
    }
    auto slice2 = [&](std::size_t x) {
      return Signature(2, {w.sig[x], w.sig[(std::size_t{1} << rest2) + x],
                           w.sig[(std::size_t{2} << rest2) + x],
                           w.sig[(std::size_t{3} << rest2) + x]});
    };
    const Signature h = slice2(rest_point);
    if (!nondecomposable_binary(h)) throw std::logic_error("expected an entangled binary slice");
    std::vector<std::size_t> a_class3, b_class3;
    for (std::size_t x = 0; x < (std::size_t{1} << rest2); ++x) {
      const Signature fx = slice2(x);
      if (fx.is_zero()) continue;
      if (scale_equiv(fx, h)) a_class3.push_back(x);
      else b_class3.push_back(x);
    }
    if (a_class3.empty() || b_class3.empty())
      throw theorem_violation("distance-class analysis found no second class");
    int d3 = 1 << 30;
    std::size_t a3 = 0, b3 = 0;
    for (auto xa : a_class3)
      for (auto xb : b_class3) {
        const int d = hamming(xa ^ xb);
        if (d < d3) {
          d3 = d;
          a3 = xa;
          b3 = xb;
        }
      }
    trace.d3 = d3;
    trace.steps.push_back("D3 = " + std::to_string(d3));
    const Signature hp = slice2(b3);
    for (int s = rest2 - 1; s >= 0; --s) {
      if (detail::arg_bit(a3, s, rest2) == detail::arg_bit(b3, s, rest2))
        w.pin_delta(2 + s, detail::arg_bit(a3, s, rest2));
    }
    if (d3 == 1) return emit_ternary(w, &trace);
    if (d3 == 2) {
      // contract the realized unary slice onto the last window coordinate;
      // it is supported on both values, collapsing to the D3 = 1 form
      w.pin_with(3, g, "contracted the realized unary slice onto slot 3");
      return emit_ternary(w, &trace);
    }
    // d3 >= 3: pin the pair coordinates, keeping both branches alive
    for (int z0 = 0; z0 < 2; ++z0) {
      for (int z1 = 0; z1 < 2; ++z1) {
        const std::size_t hidx = (static_cast<std::size_t>(z0) << 1) | z1;
        if (h[hidx].is_zero() || hp[hidx].is_zero()) continue;
        Signature cand = contract_unary(w.sig, 1, unary_for(z1, w.sig[0]));
        cand = contract_unary(cand, 0, unary_for(z0, w.sig[0]));
        std::size_t ta = 0, tb = 0;
        if (!two_point_complementary(cand, ta, tb)) continue;
        w.pin_delta(1, z1);
        w.pin_delta(0, z0);
        return finish_two_point(std::move(w), &trace);
      }
    }
    for (int z0 = 0; z0 < 2; ++z0) {
      Signature cand = contract_unary(w.sig, 0, unary_for(z0, w.sig[0]));
      std::size_t ta = 0, tb = 0;
      if (!two_point_complementary(cand, ta, tb)) continue;
      w.pin_delta(0, z0);
      return finish_two_point(std::move(w), &trace);
    }
    throw theorem_violation("no pinning left a two-point signature");
  }
}

}  // namespace holant
