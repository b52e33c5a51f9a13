#include "holant/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace holant {

using nlohmann::json;

namespace {

void skip_ws(const std::string& s, std::size_t& p) {
  while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
}

long parse_integer(const std::string& s, std::size_t& p) {
  skip_ws(s, p);
  std::size_t start = p;
  if (p < s.size() && (s[p] == '-' || s[p] == '+')) ++p;
  while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) ++p;
  if (p == start) throw io_error("expected an integer in scalar literal: '" + s + "'");
  return std::stol(s.substr(start, p - start));
}

// one exact term: rational ["*w^" k] | rational "*i" | "w^" k | "w" | "i"
Scalar parse_exact_term(const std::string& s, std::size_t& p) {
  skip_ws(s, p);
  Scalar coeff(1);
  bool have_coeff = false;
  if (p < s.size() && (std::isdigit(static_cast<unsigned char>(s[p])) || s[p] == '-' ||
                       s[p] == '+')) {
    const long num = parse_integer(s, p);
    long den = 1;
    skip_ws(s, p);
    if (p < s.size() && s[p] == '/') {
      ++p;
      den = parse_integer(s, p);
      if (den == 0) throw io_error("zero denominator in scalar literal: '" + s + "'");
    }
    coeff = Scalar::rational(num, den);
    have_coeff = true;
    skip_ws(s, p);
    if (p < s.size() && s[p] == '*') {
      ++p;
      skip_ws(s, p);
    } else {
      return coeff;  // plain rational
    }
  }
  skip_ws(s, p);
  if (p < s.size() && s[p] == 'i') {
    ++p;
    return coeff * Scalar::i_unit();
  }
  if (p < s.size() && s[p] == 'w') {
    ++p;
    long k = 1;
    skip_ws(s, p);
    if (p < s.size() && s[p] == '^') {
      ++p;
      k = parse_integer(s, p);
    }
    return coeff * Scalar::zeta(static_cast<int>(((k % 24) + 24) % 24));
  }
  if (have_coeff) throw io_error("dangling '*' in scalar literal: '" + s + "'");
  throw io_error("malformed scalar literal: '" + s + "'");
}

Scalar parse_exact_scalar(const std::string& s) {
  std::size_t p = 0;
  skip_ws(s, p);
  bool negate = false;
  if (p < s.size() && (s[p] == '-' || s[p] == '+')) {
    negate = s[p] == '-';
    ++p;
  }
  Scalar acc = parse_exact_term(s, p);
  if (negate) acc = -acc;
  for (;;) {
    skip_ws(s, p);
    if (p >= s.size()) return acc;
    if (s[p] != '+' && s[p] != '-')
      throw io_error("unexpected character '" + std::string(1, s[p]) +
                     "' in scalar literal: '" + s + "'");
    const bool minus = s[p] == '-';
    ++p;
    Scalar term = parse_exact_term(s, p);
    acc = minus ? acc - term : acc + term;
  }
}

Scalar parse_float_scalar(const std::string& s, double eps) {
  // "a", "bi", "a+bi", "a-bi" with decimal a, b
  std::size_t p = 0;
  skip_ws(s, p);
  auto read_number = [&]() -> double {
    std::size_t start = p;
    if (p < s.size() && (s[p] == '+' || s[p] == '-')) ++p;
    while (p < s.size() &&
           (std::isdigit(static_cast<unsigned char>(s[p])) || s[p] == '.' || s[p] == 'e' ||
            s[p] == 'E' ||
            ((s[p] == '+' || s[p] == '-') && (s[p - 1] == 'e' || s[p - 1] == 'E'))))
      ++p;
    if (p == start) throw io_error("malformed float literal: '" + s + "'");
    return std::stod(s.substr(start, p - start));
  };
  double re = 0, im = 0;
  if (p < s.size() && s[p] == 'i') {
    ++p;
    im = 1;
  } else {
    const double first = read_number();
    skip_ws(s, p);
    if (p < s.size() && s[p] == 'i') {
      ++p;
      im = first;
    } else {
      re = first;
      skip_ws(s, p);
      if (p < s.size()) {
        if (s[p] != '+' && s[p] != '-') throw io_error("malformed float literal: '" + s + "'");
        im = read_number();
        skip_ws(s, p);
        if (p >= s.size() || s[p] != 'i')
          throw io_error("expected trailing 'i' in float literal: '" + s + "'");
        ++p;
      }
    }
  }
  skip_ws(s, p);
  if (p != s.size()) throw io_error("trailing characters in float literal: '" + s + "'");
  return Scalar::approx({re, im}, eps);
}

std::string print_rational(const mpq_class& q) {
  std::ostringstream out;
  out << q.get_num();
  if (q.get_den() != 1) out << "/" << q.get_den();
  return out.str();
}

}  // namespace

Scalar parse_scalar(const std::string& text, bool float_backend, double eps) {
  if (float_backend) return parse_float_scalar(text, eps);
  return parse_exact_scalar(text);
}

std::string print_scalar(const Scalar& s) {
  if (!s.is_exact()) {
    const auto z = s.to_complex();
    std::ostringstream out;
    out.precision(17);
    out << z.real();
    if (z.imag() >= 0) out << "+";
    out << z.imag() << "i";
    return out.str();
  }
  const Cyc24& v = s.exact_value();
  std::string out;
  for (int j = 0; j < 8; ++j) {
    const mpq_class& c = v.coeff(j);
    if (c == 0) continue;
    mpq_class a = c;
    if (out.empty()) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += (a < 0) ? "-" : "+";
      if (a < 0) a = -a;
    }
    if (j == 0) {
      out += print_rational(a);
    } else {
      if (a != 1) out += print_rational(a) + "*";
      out += "w^" + std::to_string(j);
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw io_error(std::string("json parse error: ") + e.what());
  }
}

Signature signature_from_json(const json& j, const std::string& name, bool float_backend,
                              double eps) {
  auto read_values = [&](const json& arr) {
    std::vector<Scalar> vals;
    for (const auto& x : arr) {
      if (x.is_string()) vals.push_back(parse_scalar(x.get<std::string>(), float_backend, eps));
      else if (x.is_number_integer() && !float_backend)
        vals.push_back(Scalar(x.get<long>()));
      else if (x.is_number() && float_backend)
        vals.push_back(Scalar::approx({x.get<double>(), 0}, eps));
      else
        throw io_error("signature '" + name + "': unsupported value type");
    }
    return vals;
  };
  if (j.contains("symmetric")) {
    const auto w = read_values(j.at("symmetric"));
    if (j.contains("arity") &&
        j.at("arity").get<int>() != static_cast<int>(w.size()) - 1)
      throw io_error("signature '" + name + "': arity does not match the symmetric list");
    return SymSignature(w).expand();
  }
  if (!j.contains("values")) throw io_error("signature '" + name + "': no values");
  const auto vals = read_values(j.at("values"));
  int arity = -1;
  if (j.contains("arity")) arity = j.at("arity").get<int>();
  else {
    std::size_t n = vals.size();
    arity = 0;
    while (n > 1) {
      n >>= 1;
      ++arity;
    }
  }
  if (vals.size() != (std::size_t{1} << arity))
    throw io_error("signature '" + name + "': " + std::to_string(vals.size()) +
                   " values for arity " + std::to_string(arity));
  return {arity, vals};
}

bool backend_of(const json& j, bool default_float) {
  if (!j.contains("backend")) return default_float;
  const auto b = j.at("backend").get<std::string>();
  if (b == "exact") return false;
  if (b == "float") return true;
  throw io_error("unknown backend '" + b + "'");
}

}  // namespace

SignatureFile parse_signature_file(const std::string& json_text, bool default_float) {
  const json j = parse_json(json_text);
  SignatureFile out;
  out.float_backend = backend_of(j, default_float);
  if (!j.contains("signatures")) throw io_error("signature file: missing 'signatures'");
  const auto& sigs = j.at("signatures");
  if (sigs.is_array()) {
    for (const auto& e : sigs) {
      const std::string name = e.contains("name") ? e.at("name").get<std::string>()
                                                  : ("sig" + std::to_string(out.signatures.size()));
      out.signatures.push_back(
          {name, signature_from_json(e, name, out.float_backend, Scalar::kDefaultEps)});
    }
  } else {
    for (auto it = sigs.begin(); it != sigs.end(); ++it)
      out.signatures.push_back({it.key(), signature_from_json(it.value(), it.key(),
                                                              out.float_backend,
                                                              Scalar::kDefaultEps)});
  }
  return out;
}

SignatureFile load_signature_file(const std::string& path, bool default_float) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_signature_file(buf.str(), default_float);
}

std::string write_signature_file(const SignatureFile& file) {
  json j;
  if (file.float_backend) j["backend"] = "float";
  j["signatures"] = json::array();
  for (const auto& [name, sig] : file.signatures) {
    json e;
    e["name"] = name;
    e["arity"] = sig.arity();
    json vals = json::array();
    for (const auto& v : sig.values()) vals.push_back(print_scalar(v));
    e["values"] = vals;
    j["signatures"].push_back(e);
  }
  return j.dump(2);
}

GridFile parse_grid_file(const std::string& json_text, bool default_float) {
  const json j = parse_json(json_text);
  GridFile out;
  out.float_backend = backend_of(j, default_float);
  if (!j.contains("signatures") || !j.contains("vertices") || !j.contains("edges"))
    throw io_error("grid file: 'signatures', 'vertices' and 'edges' are required");
  std::map<std::string, Signature> sigs;
  for (auto it = j.at("signatures").begin(); it != j.at("signatures").end(); ++it)
    sigs.emplace(it.key(), signature_from_json(it.value(), it.key(), out.float_backend,
                                               Scalar::kDefaultEps));

  std::map<long, int> id_to_index;
  for (const auto& v : j.at("vertices")) {
    const long id = v.at("id").get<long>();
    const std::string sig_name = v.at("sig").get<std::string>();
    const auto it = sigs.find(sig_name);
    if (it == sigs.end())
      throw io_error("vertex " + std::to_string(id) + ": unknown signature '" + sig_name + "'");
    if (id_to_index.count(id)) throw io_error("duplicate vertex id " + std::to_string(id));
    id_to_index[id] = static_cast<int>(out.gadget.grid.vertices.size());
    out.gadget.grid.vertices.push_back(it->second);
    out.vertex_sigs.push_back(sig_name);
  }
  auto end_of = [&](const json& e, const char* what) {
    if (!e.is_array() || e.size() != 2)
      throw io_error(std::string(what) + ": edge end must be [vertex, slot]");
    const long id = e.at(0).get<long>();
    const auto it = id_to_index.find(id);
    if (it == id_to_index.end())
      throw io_error(std::string(what) + ": unknown vertex id " + std::to_string(id));
    return EdgeEnd{it->second, e.at(1).get<int>()};
  };
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw io_error("edge must be a pair of edge ends");
    out.gadget.grid.edges.push_back({end_of(e.at(0), "edge"), end_of(e.at(1), "edge")});
  }
  if (j.contains("dangling")) {
    for (const auto& d : j.at("dangling"))
      out.gadget.dangling.push_back(end_of(d, "dangling edge"));
  }
  if (j.contains("rotation")) {
    for (auto it = j.at("rotation").begin(); it != j.at("rotation").end(); ++it) {
      const long id = std::stol(it.key());
      const auto idx = id_to_index.find(id);
      if (idx == id_to_index.end())
        throw io_error("rotation: unknown vertex id " + it.key());
      out.gadget.grid.rotation[idx->second] = it.value().get<std::vector<int>>();
    }
  }
  const auto diag = validate(out.gadget);
  if (!diag.ok()) throw io_error("invalid grid: " + diag.issues.front());
  return out;
}

GridFile load_grid_file(const std::string& path, bool default_float) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_grid_file(buf.str(), default_float);
}

std::string write_grid_file(const GridFile& file) {
  json j;
  if (file.float_backend) j["backend"] = "float";
  // deduplicate identical signatures under their names
  json sigs = json::object();
  std::vector<std::string> names = file.vertex_sigs;
  if (names.size() != file.gadget.grid.vertices.size()) {
    names.clear();
    for (std::size_t v = 0; v < file.gadget.grid.vertices.size(); ++v)
      names.push_back("sig" + std::to_string(v));
  }
  for (std::size_t v = 0; v < file.gadget.grid.vertices.size(); ++v) {
    const auto& sig = file.gadget.grid.vertices[v];
    json e;
    e["arity"] = sig.arity();
    json vals = json::array();
    for (const auto& x : sig.values()) vals.push_back(print_scalar(x));
    e["values"] = vals;
    if (sigs.contains(names[v]) && sigs[names[v]] != e)
      names[v] += "_" + std::to_string(v);
    sigs[names[v]] = e;
  }
  j["signatures"] = sigs;
  j["vertices"] = json::array();
  for (std::size_t v = 0; v < file.gadget.grid.vertices.size(); ++v)
    j["vertices"].push_back({{"id", v}, {"sig", names[v]}});
  j["edges"] = json::array();
  for (const auto& e : file.gadget.grid.edges)
    j["edges"].push_back(json::array(
        {json::array({e.a.vertex, e.a.slot}), json::array({e.b.vertex, e.b.slot})}));
  if (!file.gadget.dangling.empty()) {
    j["dangling"] = json::array();
    for (const auto& d : file.gadget.dangling)
      j["dangling"].push_back(json::array({d.vertex, d.slot}));
  }
  if (!file.gadget.grid.rotation.empty()) {
    json rot = json::object();
    for (const auto& [v, order] : file.gadget.grid.rotation)
      rot[std::to_string(v)] = order;
    j["rotation"] = rot;
  }
  return j.dump(2);
}

std::string write_recipe(const GadgetRecipe& recipe) {
  GridFile f;
  f.gadget = recipe.gadget;
  if (!recipe.gadget.grid.vertices.empty())
    f.float_backend = !recipe.gadget.grid.vertices[0][0].is_exact();
  json j = parse_json(write_grid_file(f));
  j["log"] = recipe.log;
  json vals = json::array();
  for (const auto& v : recipe.result.values()) vals.push_back(print_scalar(v));
  j["result"] = {{"arity", recipe.result.arity()}, {"values", vals}};
  return j.dump(2);
}

namespace {

const char* problem_name(Problem p) {
  switch (p) {
    case Problem::Conservative: return "conservative";
    case Problem::HolantPlus: return "holant-plus";
    case Problem::HolantC: return "holant-c";
    case Problem::Csp: return "csp";
    case Problem::Csp2c: return "csp2c";
    case Problem::PlanarBinary: return "planar-binary";
    case Problem::TernaryBipartite: return "ternary-bipartite";
  }
  return "?";
}

std::string mat_to_string(const Mat2& m) {
  return "[[" + print_scalar(m.a) + ", " + print_scalar(m.b) + "], [" + print_scalar(m.c) +
         ", " + print_scalar(m.d) + "]]";
}

}  // namespace

std::string verdict_to_text(const Verdict& v) {
  std::ostringstream out;
  out << "problem: " << problem_name(v.problem) << "\n";
  out << "verdict: " << (v.polytime ? "polynomial-time" : "#P-hard") << "\n";
  if (v.polytime) out << "case: " << v.case_name << "\n";
  if (v.transform) out << "transform: " << mat_to_string(*v.transform) << "\n";
  if (v.planar_valid && v.polytime) out << "planar: verdict also holds for planar instances\n";
  out << "cases examined:\n";
  for (const auto& c : v.checks) {
    out << "  [" << (c.holds ? "yes" : " no") << "] " << c.name;
    if (!c.detail.empty()) out << " -- " << c.detail;
    out << "\n";
  }
  if (!v.trace.empty()) {
    out << "trace:\n";
    for (const auto& t : v.trace) out << "  " << t << "\n";
  }
  return out.str();
}

std::string verdict_to_json(const Verdict& v) {
  json j;
  j["problem"] = problem_name(v.problem);
  j["polytime"] = v.polytime;
  if (v.polytime) j["case"] = v.case_name;
  if (v.transform) {
    j["transform"] = json::array({json::array({print_scalar(v.transform->a),
                                               print_scalar(v.transform->b)}),
                                  json::array({print_scalar(v.transform->c),
                                               print_scalar(v.transform->d)})});
  }
  j["planar_valid"] = v.planar_valid;
  j["checks"] = json::array();
  for (const auto& c : v.checks) {
    json e;
    e["case"] = c.name;
    e["holds"] = c.holds;
    e["detail"] = c.detail;
    if (c.failing_index) e["failing_signature"] = *c.failing_index;
    j["checks"].push_back(e);
  }
  j["trace"] = v.trace;
  return j.dump(2);
}

}  // namespace holant
