#pragma once

#include <map>
#include <string>
#include <vector>

#include "holant/dichotomy.hpp"
#include "holant/gadgets.hpp"
#include "holant/grid.hpp"
#include "holant/signature.hpp"

namespace holant {

/// Parse/format error with field context.
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Scalar literal grammar (exact backend):
///   rational ::= "p/q" | integer
///   term     ::= rational ["*w^" k] | "w^" k | "i"
///   scalar   ::= ["-"] term {("+"|"-") term}
/// where w is the primitive 24th root of unity, so "i" is sugar for "w^6"
/// and exp(i pi/4) is "w^3".  The float backend reads "a+bi" decimals.
Scalar parse_scalar(const std::string& text, bool float_backend = false,
                    double eps = Scalar::kDefaultEps);
std::string print_scalar(const Scalar& s);

struct NamedSignature {
  std::string name;
  Signature sig;
};

struct SignatureFile {
  std::vector<NamedSignature> signatures;
  bool float_backend = false;
};

/// `default_float` applies when the file carries no "backend" field.
SignatureFile parse_signature_file(const std::string& json_text, bool default_float = false);
SignatureFile load_signature_file(const std::string& path, bool default_float = false);
std::string write_signature_file(const SignatureFile& file);

struct GridFile {
  Gadget gadget;                         // dangling may be empty (closed grid)
  std::vector<std::string> vertex_sigs;  // signature name per vertex
  bool float_backend = false;
};

GridFile parse_grid_file(const std::string& json_text, bool default_float = false);
GridFile load_grid_file(const std::string& path, bool default_float = false);
std::string write_grid_file(const GridFile& file);

/// A recipe serialises as a replayable grid file whose dangling edges are the
/// result's arguments; re-reading and evaluating it reproduces the result.
std::string write_recipe(const GadgetRecipe& recipe);

std::string verdict_to_text(const Verdict& v);
std::string verdict_to_json(const Verdict& v);

}  // namespace holant
