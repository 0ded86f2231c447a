#include <doctest.h>

#include "oracles.hpp"
#include "qgl/errors.hpp"
#include "qgl/io.hpp"
#include "qgl/random.hpp"

using namespace qgl;
using oracle::mi;

TEST_CASE("complex numbers accept both forms") {
  CHECK(io::complex_from_json(io::Json(2.5)) == Complex(2.5, 0.0));
  CHECK(io::complex_from_json(io::Json{{"re", 1.0}, {"im", -2.0}}) == Complex(1.0, -2.0));
  CHECK_THROWS_AS(io::complex_from_json(io::Json("x")), InputError);
}

TEST_CASE("expansions round-trip exactly") {
  Rng rng(109);
  for (Role role : {Role::test, Role::distribution}) {
    const Expansion2 e = random_expansion(rng, 2, 1, 4, 3, role, 4, 3);
    const Expansion2 back = io::expansion_from_json(io::parse(io::dump(io::to_json(e))));
    CHECK(back.role() == role);
    CHECK(back.cutoff1() == 4);
    CHECK(back.cutoff2() == 3);
    CHECK(max_abs_diff(back, e) == 0.0);
  }
  const std::vector<Complex> xi{0.5};
  const io::Json j = io::to_json(exponential_vector(xi, {}, 4, 0));
  CHECK(j.at("truncated").get<bool>());
  CHECK(j.contains("exact_through"));
}

TEST_CASE("kernels, processes and symmetric tensors round-trip") {
  Rng rng(113);
  const OperatorKernel k(random_expansion(rng, 1, 2, 3, 3, Role::distribution, 3, 3), "K");
  const OperatorKernel kb = io::kernel_from_json(io::to_json(k));
  CHECK(kb.label == "K");
  CHECK(max_abs_diff(kb.kernel, k.kernel) == 0.0);

  const ProcessSpec p{{0.0, 0.5, 2.0}, {k, k}};
  const ProcessSpec pb = io::process_from_json(io::to_json(p));
  CHECK(pb.grid == p.grid);
  CHECK(pb.kernels.size() == 2);

  const SymTensor t = random_sym_tensor(rng, 3, 3);
  const SymTensor tb = io::sym_tensor_from_json(io::to_json(t));
  for (const auto& [a, v] : t.entries()) CHECK(tb.at(a) == v);
}

TEST_CASE("malformed documents are input errors") {
  CHECK_THROWS_AS(io::parse("{\"dim1\": "), InputError);
  CHECK_THROWS_AS(io::expansion_from_json(io::Json{{"dim1", 1}}), InputError);
  CHECK_THROWS_AS(io::expansion_from_json(io::parse(R"({"dim1": 1, "cutoff1": 2, "role": "wave", "terms": []})")),
                  InputError);
  CHECK_THROWS_AS(
      io::expansion_from_json(io::parse(R"({"dim1": 1, "cutoff1": 2, "role": "test", "terms": [{"alpha": [1, 1]}]})")),
      std::invalid_argument);
  CHECK_THROWS_AS(io::read_file("/nonexistent/qgl.json"), InputError);
  CHECK_THROWS_AS(io::solver_input_from_json(io::parse(R"({"times": [1]})")), InputError);
}

TEST_CASE("solver inputs") {
  const io::Json kernel = io::to_json(OperatorKernel(Expansion2::unit(1, 1, 2, 2, Role::distribution), "I"));
  io::Json doc{{"xi0", kernel}, {"times", {0.0, 1.0}}, {"equation", "heat"}};
  const io::SolverInput in = io::solver_input_from_json(doc);
  CHECK(in.equation == "heat");
  CHECK(in.method == "closed_form");
  CHECK(!in.z);
  doc["equation"] = "qsde";
  CHECK_THROWS_AS(io::solver_input_from_json(doc), InputError);
  doc["equation"] = "wave";
  CHECK_THROWS_AS(io::solver_input_from_json(doc), InputError);
}
