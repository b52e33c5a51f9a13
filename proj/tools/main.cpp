// Command-line front end: evaluate signature grids, classify families,
// inspect entanglement, compose gadgets.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "holant/dichotomy.hpp"
#include "holant/entanglement.hpp"
#include "holant/eval.hpp"
#include "holant/families.hpp"
#include "holant/gadgets.hpp"
#include "holant/io.hpp"

using namespace holant;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitHard = 2;
constexpr int kExitData = 3;

struct Options {
  std::string output = "text";
  std::string backend = "exact";
  bool json() const { return output == "json"; }
  bool float_default() const { return backend == "float"; }
};

std::string scalar_report(const Scalar& v) {
  std::ostringstream out;
  out << print_scalar(v);
  if (v.is_exact()) {
    const auto z = v.to_complex();
    out << "   (~ " << z.real();
    if (z.imag() >= 0) out << "+";
    out << z.imag() << "i)";
  }
  return out.str();
}

void emit_recipe(const std::string& path, const GadgetRecipe& recipe) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << write_recipe(recipe) << "\n";
}

int run_eval(const std::string& path, const std::string& method, const Options& opt) {
  const GridFile grid = load_grid_file(path, opt.float_default());
  if (!grid.gadget.dangling.empty())
    throw io_error("evaluation expects a closed grid without dangling edges");
  EvalMethod m = EvalMethod::Auto;
  if (method == "brute") m = EvalMethod::Brute;
  else if (method == "contract") m = EvalMethod::Contract;
  else if (method == "chain") m = EvalMethod::Chain;
  else if (method == "geneq") m = EvalMethod::GenEq;
  else if (method == "affine") m = EvalMethod::Affine;
  else if (method != "auto") throw io_error("unknown method '" + method + "'");
  const Scalar v = holant_eval(grid.gadget.grid, m);
  if (opt.json()) {
    std::cout << "{\"holant\": \"" << print_scalar(v) << "\"}" << std::endl;
  } else {
    std::cout << scalar_report(v) << std::endl;
  }
  return kExitOk;
}

int run_classify(const std::string& path, const std::string& problem, const Options& opt) {
  const SignatureFile file = load_signature_file(path, opt.float_default());
  std::vector<Signature> family;
  for (const auto& s : file.signatures) family.push_back(s.sig);
  Verdict v;
  if (problem == "conservative") v = classify_conservative(family);
  else if (problem == "holant-plus" || problem == "plus") v = classify_holant_plus(family);
  else if (problem == "holant-c" || problem == "c") v = classify_holant_c(family);
  else if (problem == "csp") v = classify_csp(family);
  else if (problem == "csp2c") v = classify_csp2c(family);
  else if (problem == "planar-binary") {
    if (family.empty()) throw io_error("planar-binary needs one symmetric binary signature");
    const auto sym = to_symmetric(family[0]);
    if (!sym || sym->arity() != 2)
      throw io_error("planar-binary needs one symmetric binary signature");
    v = classify_planar_binary(*sym);
  } else if (problem == "ternary-bipartite") {
    if (family.size() < 2)
      throw io_error("ternary-bipartite needs a binary and a ternary signature");
    const auto y = to_symmetric(family[0]);
    const auto x = to_symmetric(family[1]);
    if (!y || !x) throw io_error("ternary-bipartite needs symmetric signatures");
    v = classify_ternary_bipartite(*y, *x);
  } else {
    throw io_error("unknown problem '" + problem + "'");
  }
  std::cout << (opt.json() ? verdict_to_json(v) : verdict_to_text(v)) << std::endl;
  return v.polytime ? kExitOk : kExitHard;
}

const char* tag_name(EntangleTag t) {
  switch (t) {
    case EntangleTag::Degenerate: return "degenerate";
    case EntangleTag::DecomposableNontrivial: return "decomposable";
    case EntangleTag::GHZ: return "GHZ";
    case EntangleTag::W: return "W";
    case EntangleTag::BinaryEntangled: return "binary-entangled";
    case EntangleTag::HigherUnclassified: return "entangled (arity > 3)";
  }
  return "?";
}

int run_entangle(const std::string& path, const Options& opt) {
  const SignatureFile file = load_signature_file(path, opt.float_default());
  for (const auto& [name, sig] : file.signatures) {
    const auto cls = classify_entanglement(sig);
    if (opt.json()) {
      std::cout << "{\"signature\": \"" << name << "\", \"class\": \"" << tag_name(cls.tag)
                << "\"}" << std::endl;
    } else {
      std::cout << name << ": " << tag_name(cls.tag);
      if (cls.partition.size() > 1) {
        std::cout << "  factors:";
        for (const auto& block : cls.partition) {
          std::cout << " (";
          for (std::size_t i = 0; i < block.size(); ++i)
            std::cout << (i ? " " : "") << block[i];
          std::cout << ")";
        }
      }
      std::cout << std::endl;
    }
  }
  return kExitOk;
}

int run_families(const std::string& path, const Options& opt) {
  const SignatureFile file = load_signature_file(path, opt.float_default());
  for (const auto& [name, sig] : file.signatures) {
    std::vector<std::pair<std::string, bool>> tags;
    tags.emplace_back("T", in_T_closure(sig));
    tags.emplace_back("E", in_E_closure(sig));
    tags.emplace_back("KE", in_E_closure(sig, Mat2::k_matrix()));
    tags.emplace_back("KM", in_M_closure(sig, Mat2::k_matrix()));
    tags.emplace_back("KXM", in_M_closure(sig, Mat2::kx_matrix()));
    tags.emplace_back("affine", in_affine(sig));
    tags.emplace_back("local-affine", in_local_affine(sig));
    if (sig.arity() <= 3) tags.emplace_back("matchgate-parity", matchgate_parity(sig));
    if (opt.json()) {
      std::ostringstream out;
      out << "{\"signature\": \"" << name << "\"";
      for (const auto& [tag, holds] : tags)
        out << ", \"" << tag << "\": " << (holds ? "true" : "false");
      out << "}";
      std::cout << out.str() << std::endl;
    } else {
      std::cout << name << ":";
      for (const auto& [tag, holds] : tags)
        if (holds) std::cout << " " << tag;
      std::cout << std::endl;
    }
  }
  return kExitOk;
}

int run_gadget(const std::string& op, const std::string& path, int slot_j, int slot_k,
               const std::string& helper_name, const std::string& family,
               int sign, int length, const std::string& out_path, const Options& opt) {
  const SignatureFile file = load_signature_file(path, opt.float_default());
  if (file.signatures.empty()) throw io_error("no signatures in '" + path + "'");
  const Signature& f = file.signatures.front().sig;
  auto print_sig = [&](const Signature& s) {
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << print_scalar(s[i]);
    out << "]";
    std::cout << (opt.json() ? "{\"result\": \"" + out.str() + "\"}" : out.str()) << std::endl;
  };
  if (op == "ternary-extract") {
    const auto r = ternary_extract(f);
    print_sig(r.ternary);
    emit_recipe(out_path, r.recipe);
  } else if (op == "binary-extract") {
    const auto r = pr_binary_extract(f, slot_j, slot_k);
    print_sig(r.binary);
    emit_recipe(out_path, r.recipe);
  } else if (op == "symmetrize") {
    std::optional<Signature> helper;
    if (!helper_name.empty()) {
      for (const auto& [name, sig] : file.signatures)
        if (name == helper_name) helper = sig;
      if (!helper) throw io_error("helper signature '" + helper_name + "' not found");
    }
    const auto r = symmetrize(f, helper);
    print_sig(r.recipe.result);
    emit_recipe(out_path, r.recipe);
  } else if (op == "escape") {
    const MFamily fam = family == "KX" ? MFamily::KX : MFamily::K;
    const auto r = binary_escape(f, fam);
    print_sig(r.binary);
    emit_recipe(out_path, r.recipe);
  } else if (op == "chain") {
    const auto r = unary_chain(f, sign, length);
    print_sig(r.value);
    GadgetRecipe recipe{r.grid, {"unary chain of length " + std::to_string(length)}, r.value};
    emit_recipe(out_path, recipe);
  } else if (op == "hardcore") {
    std::vector<Signature> fam;
    for (const auto& s : file.signatures) fam.push_back(s.sig);
    const auto r = extract_hard_core(fam);
    switch (r.kind) {
      case HardCoreKind::TernaryNonDecomposable:
        std::cout << "ternary non-decomposable" << std::endl;
        break;
      case HardCoreKind::GeneralizedEquality4:
        std::cout << "arity-4 generalized equality" << std::endl;
        break;
      case HardCoreKind::NotApplicable:
        std::cout << "not applicable (no multipartite entanglement)" << std::endl;
        return kExitOk;
    }
    if (r.signature) print_sig(*r.signature);
    for (const auto& s : r.trace.steps) std::cout << "  " << s << std::endl;
    if (!out_path.empty() && r.signature) {
      GadgetRecipe recipe{r.trace.construction, r.trace.steps, *r.signature};
      emit_recipe(out_path, recipe);
    }
  } else {
    throw io_error("unknown gadget operation '" + op + "'");
  }
  return kExitOk;
}

// bundled demo graphs for perfect-matching counting
SignatureGrid matchings_grid(const std::string& graph) {
  std::vector<std::pair<int, int>> edges;
  int n = 0;
  if (graph == "k4") {
    n = 4;
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) edges.emplace_back(a, b);
  } else if (graph == "cube") {
    n = 8;
    for (int v = 0; v < 8; ++v)
      for (int bit = 0; bit < 3; ++bit)
        if (!(v & (1 << bit))) edges.emplace_back(v, v | (1 << bit));
  } else if (graph == "petersen") {
    n = 10;
    for (int v = 0; v < 5; ++v) {
      edges.emplace_back(v, (v + 1) % 5);          // outer cycle
      edges.emplace_back(5 + v, 5 + (v + 2) % 5);  // inner star
      edges.emplace_back(v, 5 + v);                // spokes
    }
  } else {
    throw io_error("unknown graph '" + graph + "' (try k4, cube, petersen)");
  }
  SignatureGrid g;
  std::vector<int> degree(n, 0);
  for (const auto& [a, b] : edges) {
    ++degree[a];
    ++degree[b];
  }
  for (int v = 0; v < n; ++v)
    g.vertices.push_back(Signature::standard(StdSig::ONE, degree[v]));
  std::vector<int> slot(n, 0);
  for (const auto& [a, b] : edges) g.edges.push_back({{a, slot[a]++}, {b, slot[b]++}});
  return g;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holant: exact evaluation and complexity classification of holant problems"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("HOLANT_BACKEND")) opt.backend = env;
  app.add_option("--output", opt.output, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--backend", opt.backend,
                 "default scalar backend for files without one (exact or float; "
                 "HOLANT_BACKEND overrides the built-in default)")
      ->check(CLI::IsMember({"exact", "float"}));

  std::string eval_path, eval_method = "auto";
  auto* eval_cmd = app.add_subcommand("eval", "evaluate the holant of a closed grid");
  eval_cmd->add_option("grid", eval_path, "grid file (json)")->required();
  eval_cmd->add_option("--method", eval_method,
                       "brute | contract | chain | geneq | affine | auto");

  std::string cls_path, cls_problem;
  auto* cls_cmd = app.add_subcommand("classify", "decide tractability of a signature family");
  cls_cmd->add_option("--problem", cls_problem,
                      "conservative | holant-plus | holant-c | csp | csp2c | "
                      "planar-binary | ternary-bipartite")
      ->required();
  cls_cmd->add_option("signatures", cls_path, "signature file (json)")->required();

  std::string ent_path;
  auto* ent_cmd = app.add_subcommand("entangle", "entanglement class of each signature");
  ent_cmd->add_option("signatures", ent_path, "signature file (json)")->required();

  std::string fam_path;
  auto* fam_cmd = app.add_subcommand("families", "tractable-family memberships per signature");
  fam_cmd->add_option("signatures", fam_path, "signature file (json)")->required();

  std::string gad_op, gad_path, gad_helper, gad_family = "K", gad_out;
  int gad_j = 0, gad_k = 1, gad_sign = 1, gad_len = 1;
  auto* gad_cmd = app.add_subcommand("gadget", "run a gadget construction");
  gad_cmd->add_option("op", gad_op,
                      "ternary-extract | binary-extract | symmetrize | escape | chain | "
                      "hardcore")
      ->required();
  gad_cmd->add_option("signatures", gad_path, "signature file (json)")->required();
  gad_cmd->add_option("--pair-j", gad_j, "first kept slot (binary-extract)");
  gad_cmd->add_option("--pair-k", gad_k, "second kept slot (binary-extract)");
  gad_cmd->add_option("--helper", gad_helper, "helper signature name (symmetrize)");
  gad_cmd->add_option("--family", gad_family, "K or KX (escape)");
  gad_cmd->add_option("--sign", gad_sign, "+1 or -1 (chain)");
  gad_cmd->add_option("--length", gad_len, "chain length");
  gad_cmd->add_option("-o,--out", gad_out, "write the recipe as a replayable grid file");

  std::string demo_what, demo_graph = "k4";
  auto* demo_cmd = app.add_subcommand("demo", "built-in demonstrations");
  demo_cmd->add_option("what", demo_what, "matchings")->required();
  demo_cmd->add_option("graph", demo_graph, "k4 | cube | petersen");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval_cmd) return run_eval(eval_path, eval_method, opt);
    if (*cls_cmd) return run_classify(cls_path, cls_problem, opt);
    if (*ent_cmd) return run_entangle(ent_path, opt);
    if (*fam_cmd) return run_families(fam_path, opt);
    if (*gad_cmd)
      return run_gadget(gad_op, gad_path, gad_j, gad_k, gad_helper, gad_family, gad_sign,
                        gad_len, gad_out, opt);
    if (*demo_cmd) {
      if (demo_what != "matchings") throw io_error("unknown demo '" + demo_what + "'");
      const auto grid = matchings_grid(demo_graph);
      const Scalar v = holant_contract(grid);
      std::cout << print_scalar(v) << std::endl;
      return kExitOk;
    }
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << std::endl;
    return kExitData;
  }
  return kExitUsage;
}
