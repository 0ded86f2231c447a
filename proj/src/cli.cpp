#include "qgl/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qgl/errors.hpp"
#include "qgl/evolution.hpp"
#include "qgl/gross.hpp"
#include "qgl/io.hpp"
#include "qgl/verify.hpp"
#include "qgl/young.hpp"

namespace qgl::cli {

namespace {

using io::Json;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kInputError = 2;
constexpr int kNoConvergence = 3;

void emit(const Json& j, const std::string& out) {
  const std::string text = io::dump(j);
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InputError("cannot write '" + out + "'");
  f << text;
}

struct VerifyArgs {
  verify::Config config;
  double tol = -1.0;
  bool list = false;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  if (a.list) {
    Json list = Json::array();
    for (const auto& s : verify::suites())
      list.push_back({{"name", s.name}, {"identity", s.identity}, {"needs_cutoff_2", s.needs_laplacian}});
    emit(list, a.out);
    return kOk;
  }
  verify::Config config = a.config;
  if (a.tol >= 0.0) config.tol = a.tol;
  const auto results = verify::run(config);
  const Json rep = verify::report(config, results);
  emit(rep, a.out);
  return rep.at("passed").get<bool>() ? kOk : kVerifyFailed;
}

struct SolveArgs {
  std::string in;
  std::string out;
  std::string method;
  double ode_step = -1.0;
  double tol = -1.0;
};

int cmd_solve(const SolveArgs& a) {
  io::SolverInput input = io::solver_input_from_json(io::read_file(a.in));
  if (!a.method.empty()) input.method = a.method;
  if (input.method != "closed_form" && input.method != "symbol_ode" && input.method != "both")
    throw InputError("--method must be closed_form, symbol_ode or both");

  EvolutionOptions opts;
  if (input.ode_step) opts.ode_step = *input.ode_step;
  if (a.ode_step > 0.0) opts.ode_step = a.ode_step;
  if (a.tol > 0.0) opts.simpson_tol = a.tol;
  if (!(opts.ode_step > 0.0)) throw InputError("ode step must be > 0");

  const KernelShape shape = shape_of(input.xi0.kernel);
  const bool heat = input.equation == "heat";
  double t_max = 0.0;
  for (double t : input.times) t_max = std::max(t_max, t);

  ProcessSpec z;
  if (heat) {
    Expansion2 half = trace_distribution(shape.dim1, shape.dim2, shape.cutoff1, shape.cutoff2);
    half *= 0.5;
    const double horizon = input.theta ? input.theta->end() : (t_max > 0.0 ? t_max : 1.0);
    z = ProcessSpec::constant(OperatorKernel(half, "T/2"), horizon);
  } else {
    z = *input.z;
  }
  const ProcessSpec theta = input.theta ? *input.theta : ProcessSpec::zero(shape, z.end());

  EvolutionSolution closed;
  const bool want_closed = input.method != "symbol_ode";
  if (want_closed) {
    EvolutionOptions o = opts;
    o.compute_residual = true;
    closed = heat ? solve_heat(input.xi0, theta, input.times, o) : solve_qsde(z, theta, input.xi0, input.times, o);
  }
  Json out;
  if (input.method == "symbol_ode") {
    out = io::to_json(solve_symbol_ode(z, theta, input.xi0, input.times, opts));
  } else {
    if (input.method == "both") {
      const auto ode = solve_symbol_ode(z, theta, input.xi0, input.times, opts);
      double gap = 0.0;
      for (std::size_t i = 0; i < ode.kernels.size(); ++i)
        gap = std::max(gap, max_abs_diff(closed.kernels[i].kernel, ode.kernels[i].kernel));
      closed.checks["symbol_ode_gap"] = gap;
    }
    out = io::to_json(closed);
  }
  out["equation"] = input.equation;
  emit(out, a.out);
  return kOk;
}

struct EvalArgs {
  std::string in;
  std::string out;
};

int cmd_eval(const EvalArgs& a) {
  const Json doc = io::read_file(a.in);
  if (!doc.is_object() || !doc.contains("op") || !doc.contains("object") || !doc.contains("points"))
    throw InputError("eval input needs 'op', 'object' and 'points'");
  const std::string op = doc.at("op").get<std::string>();
  Json values = Json::array();
  std::vector<Point2> points;
  for (const auto& p : doc.at("points")) points.push_back(io::point_from_json(p));

  if (op == "symbol") {
    const OperatorKernel k = io::kernel_from_json(doc.at("object"));
    for (const auto& p : points) values.push_back(io::complex_to_json(symbol(k, p.z, p.t)));
  } else if (op == "evaluate" || op == "laplace") {
    const Expansion2 e = io::expansion_from_json(doc.at("object"));
    for (const auto& p : points)
      values.push_back(io::complex_to_json(op == "evaluate" ? evaluate(e, p) : laplace(e, p.z, p.t)));
  } else {
    throw InputError("eval op must be evaluate, laplace or symbol");
  }
  emit(Json{{"op", op}, {"values", values}}, a.out);
  return kOk;
}

struct YoungArgs {
  std::string family = "gaussian";
  double k = 2.0;
  std::string op = "conjugate";
  double x = 0.0;
  int n = 1;
  std::string out;
};

int cmd_young(const YoungArgs& a) {
  const auto theta = YoungFunctionSpec::from_name(a.family, a.k);
  Json out{{"family", theta.name()}, {"op", a.op}};
  if (a.op == "value") {
    out["value"] = theta(a.x);
  } else if (a.op == "conjugate") {
    out["value"] = conjugate_eval(theta, a.x);
  } else if (a.op == "theta_n") {
    out["value"] = theta_n(theta, a.n);
  } else if (a.op == "growth_condition") {
    out["value"] = check_growth_condition(theta);
  } else if (a.op == "shape") {
    out["value"] = satisfies_young_shape(theta);
  } else {
    throw InputError("young op must be value, conjugate, theta_n, growth_condition or shape");
  }
  emit(out, a.out);
  return kOk;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Truncated chaos calculus, Gross Laplacians and quantum heat solvers"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
  verify_cmd->add_option("--dim1", va.config.dim1, "dimension of the first variable")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--dim2", va.config.dim2, "dimension of the second variable")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--cutoff1", va.config.cutoff1, "retained degree, first variable")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--cutoff2", va.config.cutoff2, "retained degree, second variable")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", va.config.seed, "RNG seed");
  verify_cmd->add_option("--tol", va.tol, "override every suite tolerance");
  verify_cmd->add_option("--suite", va.config.suites, "run only the named suites");
  verify_cmd->add_flag("--list", va.list, "list the suites and exit");
  verify_cmd->add_option("--out", va.out, "write the report here instead of stdout");

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "solve an evolution problem from a JSON input");
  solve_cmd->add_option("--in", sa.in, "solver input JSON")->required();
  solve_cmd->add_option("--out", sa.out, "write the solution here instead of stdout");
  solve_cmd->add_option("--method", sa.method, "closed_form | symbol_ode | both");
  solve_cmd->add_option("--ode-step", sa.ode_step, "RK4 step for the symbol ODE");
  solve_cmd->add_option("--tol", sa.tol, "Simpson refinement tolerance");

  EvalArgs ea;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate, Laplace-transform or take symbols at points");
  eval_cmd->add_option("--in", ea.in, "eval input JSON")->required();
  eval_cmd->add_option("--out", ea.out, "write the values here instead of stdout");

  YoungArgs ya;
  auto* young_cmd = app.add_subcommand("young", "Young function queries");
  young_cmd->add_option("--family", ya.family, "power | gaussian | expm1");
  young_cmd->add_option("--k", ya.k, "exponent of the power family");
  young_cmd->add_option("--op", ya.op, "value | conjugate | theta_n | growth_condition | shape");
  young_cmd->add_option("--x", ya.x, "argument");
  young_cmd->add_option("--n", ya.n, "index for theta_n");
  young_cmd->add_option("--out", ya.out, "write the result here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(va);
    if (solve_cmd->parsed()) return cmd_solve(sa);
    if (eval_cmd->parsed()) return cmd_eval(ea);
    if (young_cmd->parsed()) return cmd_young(ya);
  } catch (const ConvergenceError& e) {
    std::cerr << "qgl: not converged: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const SingularFitError& e) {
    std::cerr << "qgl: not converged: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qgl: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "qgl: malformed input: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace qgl::cli
