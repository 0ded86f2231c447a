#pragma once

// JSON forms of the library objects. Every reader throws InputError on
// malformed documents; writers are deterministic (entries in key order).

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgl/chaos.hpp"
#include "qgl/evolution.hpp"
#include "qgl/quantum.hpp"

namespace qgl::io {

using Json = nlohmann::json;

Json complex_to_json(Complex c);
// A number, or {"re": .., "im": ..}.
Complex complex_from_json(const Json& j);
std::vector<Complex> vector_from_json(const Json& j);

Json to_json(const SymTensor& t);
SymTensor sym_tensor_from_json(const Json& j);

Json to_json(const Expansion2& e);
Expansion2 expansion_from_json(const Json& j);

Json to_json(const OperatorKernel& k);
OperatorKernel kernel_from_json(const Json& j);

Json to_json(const ProcessSpec& p);
ProcessSpec process_from_json(const Json& j);

// {"z": [..], "t": [..]}; "t" may be omitted for one-variable objects.
Point2 point_from_json(const Json& j);

struct SolverInput {
  OperatorKernel xi0;
  std::optional<ProcessSpec> z;
  std::optional<ProcessSpec> theta;
  std::vector<double> times;
  std::string equation = "qsde";   // qsde | heat
  std::string method = "closed_form";  // closed_form | symbol_ode | both
  std::optional<double> ode_step;
};

SolverInput solver_input_from_json(const Json& j);
Json to_json(const EvolutionSolution& s);

Json parse(const std::string& text);
Json read_file(const std::string& path);
// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace qgl::io
