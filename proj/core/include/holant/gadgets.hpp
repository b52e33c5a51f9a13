#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holant/entanglement.hpp"
#include "holant/grid.hpp"
#include "holant/mat2.hpp"
#include "holant/signature.hpp"

namespace holant {

/// Raised when an exhaustive gadget search that a structure theorem
/// guarantees to succeed comes up empty.  Seeing this is a test signal, not
/// a recoverable condition.
struct theorem_violation : std::logic_error {
  explicit theorem_violation(const std::string& what) : std::logic_error(what) {}
};

/// A gadget construction together with its effective signature and a
/// human-readable step log.  Replaying the gadget through
/// effective_signature reproduces `result` exactly.
struct GadgetRecipe {
  Gadget gadget;
  std::vector<std::string> log;
  Signature result;

  Signature replay() const { return effective_signature(gadget); }
};

/// Incremental gadget construction mirroring signature-level operations.
class GadgetBuilder {
 public:
  explicit GadgetBuilder(const Signature& f);

  void pin(int dangling_pos, const Signature& unary);
  void self_loop(int pos_i, int pos_j);
  /// Replace dangling edge `pos` by a new one through the first slot of a
  /// binary signature (its second slot takes the old edge).
  void prepend_binary(const Signature& binary, int pos);
  void permute_dangling(const std::vector<int>& perm);
  /// Join this gadget with a second copy of itself, connecting the listed
  /// dangling positions pairwise; remaining edges of the first copy come
  /// first in the new order.
  void square_join(const std::vector<int>& joined_positions);
  void note(std::string line) { log_.push_back(std::move(line)); }

  const Gadget& gadget() const { return g_; }
  std::vector<std::string> take_log() { return std::move(log_); }
  GadgetRecipe recipe(Signature result) const;

 private:
  Gadget g_;
  std::vector<std::string> log_;
};

/// Sum out one argument against a unary: sum_y f(..., y, ...) u(y).
Signature contract_unary(const Signature& f, int slot, const Signature& u);

/// Join two arguments: sum_y f with x_i = x_j = y.
Signature self_loop(const Signature& f, int i, int j);

/// Holographic action m^{(x) n} |f> (optionally with m transposed).
Signature holographic(const Mat2& m, const Signature& f, bool transpose = false);

/// The four pinning/bias unaries used by the extraction searches, in their
/// canonical search order.
const std::vector<Signature>& extraction_unaries();
const char* extraction_unary_name(int index);

struct BinaryExtraction {
  Signature binary;
  std::vector<int> unary_choices;  // index into extraction_unaries per slot
  GadgetRecipe recipe;
};

/// First (in lexicographic search order) contraction of all arguments other
/// than j, k by the four extraction unaries that leaves a non-decomposable
/// binary function.  Existence is guaranteed for non-decomposable input.
BinaryExtraction pr_binary_extract(const Signature& f, int j, int k);

struct TernaryExtraction {
  Signature ternary;
  std::vector<int> kept_slots;
  GadgetRecipe recipe;
};

/// First triple j<k<l and unary tuple whose contraction leaves a
/// non-decomposable ternary function.
TernaryExtraction ternary_extract(const Signature& f);

/// The triangle gadget of three rotated copies of a ternary signature; the
/// output is always symmetric.
Signature triangle_symmetrize(const Signature& f, int rotation);

struct SymmetrizeResult {
  SymSignature symmetric;
  GadgetRecipe recipe;
};

/// Produce a symmetric non-decomposable ternary signature from a
/// non-decomposable one, using the triangle gadget, and for inputs inside
/// K o M or KX o M an escape composition with `helper` (which must lie
/// outside the corresponding closure).  W-type inputs handled through the
/// escape path always come out GHZ-type.
SymmetrizeResult symmetrize(const Signature& f,
                            const std::optional<Signature>& helper = std::nullopt);

enum class MFamily { K, KX };

struct EscapeResult {
  Signature binary;
  GadgetRecipe recipe;
};

/// Non-decomposable binary function outside <K o M> (resp. <KX o M>),
/// realised by recursively contracting single arguments with the four
/// extraction unaries.  Requires f itself outside the closure.
EscapeResult binary_escape(const Signature& f, MFamily which);

struct UnaryChain {
  Signature value;  // [1, l z +- 1] up to the scale carried by kprime
  Gadget grid;
};

/// The chain gadget: a +/- seed through l segments of kprime and NEQ.
/// kprime must be symmetric binary of shape [w, 1, 0] up to scale.
UnaryChain unary_chain(const Signature& kprime, int sign, int length);

enum class HardCoreKind { TernaryNonDecomposable, GeneralizedEquality4, NotApplicable };

struct HardCoreTrace {
  std::optional<int> d0, d1, d2, d3;
  std::optional<std::pair<std::size_t, std::size_t>> support_pair;
  std::vector<std::string> steps;
  Gadget construction;
};

struct HardCoreOutcome {
  HardCoreKind kind = HardCoreKind::NotApplicable;
  std::optional<Signature> signature;
  HardCoreTrace trace;
};

/// The pinning pipeline: from a family with multipartite entanglement,
/// derive either a non-decomposable ternary signature or an arity-4
/// generalized-equality-shaped signature, by pinning, self-loops and
/// support-distance case analysis.  Every step is recorded and replayable.
HardCoreOutcome extract_hard_core(const std::vector<Signature>& family);

}  // namespace holant
