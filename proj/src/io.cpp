#include "qgl/io.hpp"

#include <fstream>
#include <sstream>

#include "qgl/errors.hpp"

namespace qgl::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::size_t dim_field(const Json& j, const char* key) {
  const int v = int_field(j, key);
  if (v < 0) throw InputError(std::string("field '") + key + "' must be >= 0");
  return static_cast<std::size_t>(v);
}

MultiIndex index_from_json(const Json& j, std::size_t dim, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of occupations");
  std::vector<int> occ;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0)
      throw InputError(std::string(what) + " entries must be non-negative integers");
    occ.push_back(v.get<int>());
  }
  if (occ.size() != dim)
    throw InputError(std::string(what) + " has length " + std::to_string(occ.size()) + ", expected " +
                     std::to_string(dim));
  return MultiIndex(std::move(occ));
}

Complex term_value(const Json& t) {
  const double re = t.contains("re") ? t.at("re").get<double>() : 0.0;
  const double im = t.contains("im") ? t.at("im").get<double>() : 0.0;
  return {re, im};
}

Role role_from_string(const std::string& s) {
  if (s == "test") return Role::test;
  if (s == "distribution") return Role::distribution;
  throw InputError("role must be 'test' or 'distribution', got '" + s + "'");
}

// Re-raises library shape errors met while reading as input errors.
template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed JSON value: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
}

}  // namespace

Json complex_to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object()) return guarded([&] { return term_value(j); });
  throw InputError("complex value must be a number or {\"re\": .., \"im\": ..}");
}

std::vector<Complex> vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of complex values");
  std::vector<Complex> v;
  for (const auto& x : j) v.push_back(complex_from_json(x));
  return v;
}

Json to_json(const SymTensor& t) {
  Json entries = Json::array();
  for (const auto& [k, v] : t.entries())
    entries.push_back(Json{{"idx", k.occupations()}, {"re", v.real()}, {"im", v.imag()}});
  return Json{{"dim", t.dim()}, {"degree", t.degree()}, {"entries", entries}};
}

SymTensor sym_tensor_from_json(const Json& j) {
  return guarded([&] {
    const std::size_t dim = dim_field(j, "dim");
    const int degree = int_field(j, "degree");
    SymTensor t(dim, degree);
    for (const auto& e : field(j, "entries")) {
      const MultiIndex a = index_from_json(field(e, "idx"), dim, "idx");
      if (a.weight() != degree) throw InputError("tensor entry weight differs from degree");
      t.add(a, term_value(e));
    }
    return t;
  });
}

Json to_json(const Expansion2& e) {
  Json terms = Json::array();
  for (const auto& [k, blk] : e.blocks())
    for (const auto& [key, v] : blk.entries())
      terms.push_back(Json{{"alpha", key.first.occupations()},
                           {"beta", key.second.occupations()},
                           {"re", v.real()},
                           {"im", v.imag()}});
  Json j{{"dim1", e.dim1()},       {"dim2", e.dim2()},         {"cutoff1", e.cutoff1()},
         {"cutoff2", e.cutoff2()}, {"role", to_string(e.role())}, {"terms", terms}};
  j["truncated"] = e.truncated();
  if (e.truncated()) j["exact_through"] = {e.exact1(), e.exact2()};
  return j;
}

Expansion2 expansion_from_json(const Json& j) {
  return guarded([&] {
    const std::size_t d1 = dim_field(j, "dim1");
    const std::size_t d2 = j.contains("dim2") ? dim_field(j, "dim2") : 0;
    const int c1 = int_field(j, "cutoff1");
    const int c2 = j.contains("cutoff2") ? int_field(j, "cutoff2") : 0;
    const Role role = role_from_string(field(j, "role").get<std::string>());
    Expansion2 e(d1, d2, c1, c2, role);
    for (const auto& t : field(j, "terms")) {
      const MultiIndex a = index_from_json(field(t, "alpha"), d1, "alpha");
      const MultiIndex b = t.contains("beta") ? index_from_json(t.at("beta"), d2, "beta") : MultiIndex::zero(d2);
      e.add(a, b, term_value(t));
    }
    return e;
  });
}

Json to_json(const OperatorKernel& k) { return Json{{"label", k.label}, {"kernel", to_json(k.kernel)}}; }

OperatorKernel kernel_from_json(const Json& j) {
  return guarded([&] {
    const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
    return OperatorKernel(expansion_from_json(field(j, "kernel")), label);
  });
}

Json to_json(const ProcessSpec& p) {
  Json kernels = Json::array();
  for (const auto& k : p.kernels) kernels.push_back(to_json(k));
  return Json{{"grid", p.grid}, {"kernels", kernels}};
}

ProcessSpec process_from_json(const Json& j) {
  return guarded([&] {
    ProcessSpec p;
    p.grid = field(j, "grid").get<std::vector<double>>();
    for (const auto& k : field(j, "kernels")) p.kernels.push_back(kernel_from_json(k));
    p.validate();
    return p;
  });
}

Point2 point_from_json(const Json& j) {
  return guarded([&] {
    Point2 p;
    p.z = vector_from_json(field(j, "z"));
    if (j.contains("t")) p.t = vector_from_json(j.at("t"));
    return p;
  });
}

SolverInput solver_input_from_json(const Json& j) {
  return guarded([&] {
    SolverInput in;
    in.xi0 = kernel_from_json(field(j, "xi0"));
    if (j.contains("Z")) in.z = process_from_json(j.at("Z"));
    if (j.contains("Theta")) in.theta = process_from_json(j.at("Theta"));
    in.times = field(j, "times").get<std::vector<double>>();
    if (in.times.empty()) throw InputError("'times' must not be empty");
    if (j.contains("equation")) in.equation = j.at("equation").get<std::string>();
    if (in.equation != "qsde" && in.equation != "heat")
      throw InputError("'equation' must be 'qsde' or 'heat'");
    if (j.contains("method")) in.method = j.at("method").get<std::string>();
    if (in.method != "closed_form" && in.method != "symbol_ode" && in.method != "both")
      throw InputError("'method' must be 'closed_form', 'symbol_ode' or 'both'");
    if (j.contains("ode_step")) in.ode_step = j.at("ode_step").get<double>();
    if (in.equation == "qsde" && !in.z) throw InputError("a qsde input needs a 'Z' process");
    return in;
  });
}

Json to_json(const EvolutionSolution& s) {
  Json kernels = Json::array();
  for (const auto& k : s.kernels) kernels.push_back(to_json(k));
  Json checks = Json::object();
  for (const auto& [k, v] : s.checks) checks[k] = v;
  Json labels = Json::object();
  for (const auto& [k, v] : s.labels) labels[k] = v;
  return Json{{"times", s.times},  {"kernels", kernels}, {"method", s.method},
              {"truncated", s.truncated}, {"labels", labels}, {"checks", checks}};
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qgl::io
