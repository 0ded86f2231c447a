#include "qgl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "qgl/errors.hpp"
#include "qgl/evolution.hpp"
#include "qgl/gross.hpp"
#include "qgl/quantum.hpp"
#include "qgl/random.hpp"
#include "qgl/young.hpp"

namespace qgl::verify {

namespace {

struct Outcome {
  double max_error = 0.0;
  int cases = 0;
  std::string detail;
};

using SuiteFn = std::function<Outcome(const Config&, Rng&)>;

struct Suite {
  SuiteInfo info;
  double tolerance;
  SuiteFn run;
};

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{};
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

double rel_to_one(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

int top2(const Config& c) { return c.dim2 == 0 ? 0 : c.cutoff2; }

OperatorKernel random_kernel(Rng& rng, const Config& c, int max1, int max2, double scale = 1.0) {
  return OperatorKernel(
      random_expansion(rng, c.dim1, c.dim2, c.cutoff1, c.cutoff2, Role::distribution, max1, max2, scale), "K");
}

Outcome contraction_oracle(const Config& c, Rng& rng) {
  Outcome o;
  std::uniform_int_distribution<int> deg(0, 5);
  const std::size_t d = std::min<std::size_t>(c.dim1, 3);
  for (int i = 0; i < 50; ++i) {
    int ka = deg(rng);
    int kb = deg(rng);
    if (ka > kb) std::swap(ka, kb);
    const SymTensor a = random_sym_tensor(rng, d, ka);
    const SymTensor b = random_sym_tensor(rng, d, kb);
    const SymTensor fast = contract_full(a, b);
    const SymTensor slow = symmetrize(dense_contract(to_dense(a), to_dense(b)));
    double diff = 0.0;
    double ref = 0.0;
    for (const MultiIndex& g : multi_indices(d, kb - ka)) {
      diff = std::max(diff, std::abs(fast.at(g) - slow.at(g)));
      ref = std::max(ref, std::abs(slow.at(g)));
    }
    o.max_error = std::max(o.max_error, ref > 0.0 ? diff / ref : diff);
    ++o.cases;
  }
  o.detail = "relative to the largest oracle entry";
  return o;
}

Outcome gross_convolution(const Config& c, Rng& rng) {
  Outcome o;
  const Expansion2 t = trace_distribution(c.dim1, c.dim2, c.cutoff1, c.cutoff2);
  for (int i = 0; i < 30; ++i) {
    const Expansion2 phi = random_expansion(rng, c.dim1, c.dim2, c.cutoff1, c.cutoff2, Role::test, c.cutoff1, top2(c));
    o.max_error = std::max(o.max_error, max_abs_diff(convolve_dist_test(t, phi), gross_test(phi)));
    ++o.cases;
  }
  o.detail = "exact coefficient equality expected";
  return o;
}

Outcome eigen_relation(const Config& c, Rng& rng) {
  Outcome o;
  for (int i = 0; i < 20; ++i) {
    const auto xi = random_ball_vector(rng, c.dim1, 1.0);
    const auto eta = random_ball_vector(rng, c.dim2, 1.0);
    const Expansion2 e = exponential_vector(xi, eta, c.cutoff1, c.cutoff2);
    Expansion2 rhs = e;
    rhs *= dot(xi, xi) + dot(eta, eta);
    const int m2 = c.dim2 == 0 ? 0 : c.cutoff2 - 2;
    const double diff = max_abs_diff(gross_test(e), rhs, c.cutoff1 - 2, m2);
    const double ref = std::max(max_abs_coefficient(rhs.restricted(c.cutoff1 - 2, std::max(m2, 0))), 1e-300);
    o.max_error = std::max(o.max_error, diff / ref);
    ++o.cases;
  }
  o.detail = "degrees <= cutoff - 2, relative to the largest reference coefficient";
  return o;
}

Outcome laplace_homomorphism(const Config& c, Rng& rng) {
  Outcome o;
  const int h1 = c.cutoff1 / 2;
  const int h2 = top2(c) / 2;
  for (int i = 0; i < 20; ++i) {
    const Expansion2 a = random_expansion(rng, c.dim1, c.dim2, c.cutoff1, c.cutoff2, Role::distribution, h1, h2);
    const Expansion2 b = random_expansion(rng, c.dim1, c.dim2, c.cutoff1, c.cutoff2, Role::distribution,
                                          c.cutoff1 - h1, top2(c) - h2);
    const Expansion2 ab = convolve_dist_dist(a, b);
    for (int k = 0; k < 10; ++k) {
      const Point2 p = random_point(rng, c.dim1, c.dim2);
      o.max_error = std::max(o.max_error, rel_to_one(laplace(ab, p.z, p.t), laplace(a, p.z, p.t) * laplace(b, p.z, p.t)));
      ++o.cases;
    }
  }
  o.detail = "|a - b| / max(1, |b|) at random points";
  return o;
}

Outcome gross_adjoint(const Config& c, Rng& rng) {
  Outcome o;
  for (int i = 0; i < 20; ++i) {
    const Expansion2 dist = random_expansion(rng, c.dim1, c.dim2, c.cutoff1, c.cutoff2, Role::distribution,
                                             c.cutoff1 - 2, std::max(top2(c) - 2, 0));
    const Expansion2 test = random_expansion(rng, c.dim1, c.dim2, c.cutoff1, c.cutoff2, Role::test, c.cutoff1, top2(c));
    o.max_error =
        std::max(o.max_error, rel_to_one(dual_pair(gross_distribution(dist), test), dual_pair(dist, gross_test(test))));
    ++o.cases;
  }
  // Pairings carry n! m! weights, so their size grows fast with the cutoffs.
  o.detail = "|a - b| / max(1, |b|)";
  return o;
}

Outcome symbol_law(const Config& c, Rng& rng) {
  Outcome o;
  for (int i = 0; i < 10; ++i) {
    const OperatorKernel k = random_kernel(rng, c, c.cutoff1 - 2, std::max(top2(c) - 2, 0));
    const OperatorKernel q = quantum_gross(k);
    for (int j = 0; j < 10; ++j) {
      const Point2 p = random_point(rng, c.dim1, c.dim2);
      const Complex expected = (dot(p.z, p.z) + dot(p.t, p.t)) * symbol(k, p.z, p.t);
      o.max_error = std::max(o.max_error, rel_to_one(symbol(q, p.z, p.t), expected));
      ++o.cases;
    }
  }
  o.detail = "|a - b| / max(1, |b|) at random points";
  return o;
}

Outcome bridge(const Config& c, Rng& rng) {
  Outcome o;
  for (int i = 0; i < 20; ++i) {
    const Expansion2 phi = random_expansion(rng, c.dim1, 0, c.cutoff1, 0, Role::distribution, std::min(4, c.cutoff1), 0);
    const auto [quantum, classical] = classical_quantum_bridge(phi);
    o.max_error = std::max(o.max_error, max_abs_diff(quantum, classical));
    ++o.cases;
  }
  return o;
}

std::vector<double> heat_times() { return {0.1, 0.5, 1.0, 2.0}; }

OperatorKernel heat_initial(const Config& c, Rng& rng) {
  return random_kernel(rng, c, std::min(4, c.cutoff1), std::min(4, top2(c)));
}

Outcome heat_gaussian(const Config& c, Rng& rng) {
  Outcome o;
  for (int i = 0; i < 3; ++i) {
    const OperatorKernel xi0 = heat_initial(c, rng);
    const auto theta = ProcessSpec::zero(shape_of(xi0.kernel), 2.0);
    const auto sol = solve_heat(xi0, theta, heat_times());
    o.max_error = std::max(o.max_error, sol.checks.at("gaussian_gap"));
    ++o.cases;
  }
  o.detail = "closed form vs Gaussian-moment representation";
  return o;
}

Outcome heat_ode(const Config& c, Rng& rng) {
  Outcome o;
  const OperatorKernel xi0 = heat_initial(c, rng);
  const auto theta = ProcessSpec::zero(shape_of(xi0.kernel), 2.0);
  Expansion2 half = trace_distribution(c.dim1, c.dim2, c.cutoff1, c.cutoff2);
  half *= 0.5;
  const auto z = ProcessSpec::constant(OperatorKernel(half, "T/2"), 2.0);
  const auto closed = solve_heat(xi0, theta, heat_times());
  const auto ode = solve_symbol_ode(z, theta, xi0, heat_times());
  for (std::size_t i = 0; i < closed.kernels.size(); ++i) {
    o.max_error = std::max(o.max_error, max_abs_diff(closed.kernels[i].kernel, ode.kernels[i].kernel));
    ++o.cases;
  }
  o.detail = "closed form vs RK4 symbol ODE (step 1e-3) and kernel fit";
  return o;
}

Outcome gaussian_integral(const Config& c, Rng& rng) {
  Outcome o;
  const Expansion2 t_dist = trace_distribution(c.dim1, c.dim2, c.cutoff1, c.cutoff2);
  for (int i = 0; i < 3; ++i) {
    const OperatorKernel xi0 = heat_initial(c, rng);
    for (double t : heat_times()) {
      Expansion2 half = t_dist;
      half *= 0.5 * t;
      const Expansion2 smoothed = convolve_dist_test(conv_exp(half), xi0.kernel.with_role(Role::test));
      for (int k = 0; k < 3; ++k) {
        const Point2 y = random_point(rng, c.dim1, c.dim2);
        o.max_error = std::max(o.max_error, rel_to_one(gaussian_heat_kernel(xi0, t, y), evaluate(smoothed, y)));
        ++o.cases;
      }
    }
  }
  o.detail = "Gaussian integral of the kernel polynomial vs e^{t/2 Delta_G} applied to it";
  return o;
}

// Small enough that the dropped degrees (> cutoff) stay below ~1e-9.
double residual_radius(const Config& c) {
  const int cmin = c.dim2 == 0 ? c.cutoff1 : std::min(c.cutoff1, c.cutoff2);
  return std::min(0.1, std::pow(10.0, -9.0 / (cmin + 1)));
}

Outcome qsde_residual(const Config& c, Rng& rng) {
  Outcome o;
  const double r = residual_radius(c);
  for (int i = 0; i < 2; ++i) {
    const int m2 = std::min(2, top2(c));
    const ProcessSpec z{{0.0, 1.0, 2.0}, {random_kernel(rng, c, std::min(2, c.cutoff1), m2, 0.3),
                                         random_kernel(rng, c, std::min(2, c.cutoff1), m2, 0.3)}};
    const ProcessSpec theta{{0.0, 1.0, 2.0}, {random_kernel(rng, c, std::min(2, c.cutoff1), m2, 0.3),
                                             random_kernel(rng, c, std::min(2, c.cutoff1), m2, 0.3)}};
    const OperatorKernel xi0 = random_kernel(rng, c, std::min(2, c.cutoff1), m2);
    std::vector<Point2> pts;
    for (int k = 0; k < 5; ++k)
      pts.push_back(Point2{random_ball_vector(rng, c.dim1, r), random_ball_vector(rng, c.dim2, r)});
    o.max_error = std::max(o.max_error, symbol_residual(z, theta, xi0, {0.37, 1.41}, pts, 1e-4));
    o.cases += 10;
  }
  o.detail = "central difference, step 1e-4";
  return o;
}

Outcome qsde_ode(const Config& c, Rng& rng) {
  Outcome o;
  const int m2 = std::min(2, top2(c));
  const auto z = ProcessSpec::constant(random_kernel(rng, c, std::min(2, c.cutoff1), m2, 0.3), 1.0);
  const auto theta = ProcessSpec::constant(random_kernel(rng, c, std::min(2, c.cutoff1), m2, 0.3), 1.0);
  const OperatorKernel xi0 = random_kernel(rng, c, std::min(2, c.cutoff1), m2);
  const std::vector<double> times{0.5, 1.0};
  const auto closed = solve_qsde(z, theta, xi0, times);
  const auto ode = solve_symbol_ode(z, theta, xi0, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    o.max_error = std::max(o.max_error, max_abs_diff(closed.kernels[i].kernel, ode.kernels[i].kernel));
    ++o.cases;
  }
  o.detail = "closed form vs RK4 symbol ODE for random constant Z, Theta";
  return o;
}

Outcome semigroup(const Config& c, Rng& rng) {
  Outcome o;
  const int m2 = std::min(2, top2(c));
  const auto z = ProcessSpec::constant(random_kernel(rng, c, std::min(2, c.cutoff1), m2, 0.3), 2.0);
  const auto theta = ProcessSpec::zero(shape_of(z.kernels[0].kernel), 2.0);
  const OperatorKernel xi0 = random_kernel(rng, c, c.cutoff1, top2(c));
  const auto full = solve_qsde(z, theta, xi0, {1.5});
  const auto half = solve_qsde(z, theta, xi0, {0.6});
  const auto rest = solve_qsde(z, theta, half.kernels[0], {0.9});
  o.max_error = max_abs_diff(full.kernels[0].kernel, rest.kernels[0].kernel);
  o.cases = 1;
  o.detail = "solve to 0.6 then 0.9 more vs solve to 1.5";
  return o;
}

Outcome translation_pairing(const Config& c, Rng& rng) {
  Outcome o;
  for (int i = 0; i < 10; ++i) {
    const Expansion2 dist =
        random_expansion(rng, c.dim1, c.dim2, c.cutoff1, c.cutoff2, Role::distribution, c.cutoff1, top2(c));
    const Expansion2 test = random_expansion(rng, c.dim1, c.dim2, c.cutoff1, c.cutoff2, Role::test, c.cutoff1, top2(c));
    const Expansion2 conv = convolve_dist_test(dist, test);
    for (int k = 0; k < 5; ++k) {
      const Point2 p = random_point(rng, c.dim1, c.dim2, 0.5);
      o.max_error = std::max(o.max_error, rel_to_one(evaluate(conv, p), dual_pair(dist, translate(test, p))));
      ++o.cases;
    }
  }
  return o;
}

Outcome kernel_roundtrip(const Config& c, Rng& rng) {
  Outcome o;
  for (int i = 0; i < 10; ++i) {
    const OperatorKernel k = random_kernel(rng, c, c.cutoff1, top2(c));
    const Expansion2 f = random_expansion(rng, c.dim1, 0, c.cutoff1, 0, Role::test, c.cutoff1, 0);
    const Expansion2 g = random_expansion(rng, c.dim2, 0, top2(c), 0, Role::test, top2(c), 0);
    const Complex lhs = dual_pair(apply(k, f), g);
    const Complex rhs = dual_pair(k.kernel, tensor_product(f, g));
    o.max_error = std::max(o.max_error, rel_to_one(lhs, rhs));
    ++o.cases;
  }
  return o;
}

Outcome multiplication_symbol(const Config& c, Rng& rng) {
  Outcome o;
  for (int i = 0; i < 10; ++i) {
    const Expansion2 phi = random_expansion(rng, c.dim1, 0, c.cutoff1, 0, Role::distribution, c.cutoff1, 0);
    const OperatorKernel m = multiplication_operator(phi);
    for (int k = 0; k < 5; ++k) {
      const auto xi = random_vector(rng, c.dim1);
      const auto eta = random_vector(rng, c.dim1);
      std::vector<Complex> sum(c.dim1);
      for (std::size_t j = 0; j < c.dim1; ++j) sum[j] = xi[j] + eta[j];
      o.max_error = std::max(o.max_error, rel_to_one(symbol(m, xi, eta), laplace(phi, sum, {})));
      ++o.cases;
    }
  }
  return o;
}

Outcome young_diagnostics(const Config&, Rng&) {
  Outcome o;
  const auto g = YoungFunctionSpec::gaussian();
  for (int i = 0; i < 100; ++i) {
    const double x = 0.1 * i;
    o.max_error = std::max(o.max_error, std::abs(conjugate_eval(g, x) - x * x / 4.0));
    ++o.cases;
  }
  o.max_error = std::max(o.max_error, std::abs(theta_n(g, 2) - std::numbers::e));
  int violations = 0;
  for (const auto& f : {g, YoungFunctionSpec::power(1.5), YoungFunctionSpec::expm1()})
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const double t = 0.25 * i;
        const double x = 0.25 * j;
        if (t * x > f(t) + conjugate_eval(f, x) + 1e-9) ++violations;
      }
  if (violations > 0) o.max_error = std::max(o.max_error, 1.0);
  o.detail = "conjugate vs x^2/4, theta_2 vs e, " + std::to_string(violations) + " Fenchel-Young violations";
  return o;
}

const std::vector<Suite>& registry() {
  static const std::vector<Suite> r = {
      {{"contraction-oracle", "symmetric contraction equals dense index contraction", false}, 1e-12,
       contraction_oracle},
      {{"gross-convolution", "trace distribution convolution equals the Gross Laplacian", true}, 0.0,
       gross_convolution},
      {{"exponential-eigen-relation", "Gross Laplacian of e_(xi,eta) is (<xi,xi>+<eta,eta>) e_(xi,eta)", true},
       1e-12, eigen_relation},
      {{"laplace-homomorphism", "Laplace transform maps distribution convolution to products", false}, 1e-11,
       laplace_homomorphism},
      {{"gross-adjoint", "distribution-side Laplacian is the adjoint of the test-side one", true}, 1e-11,
       gross_adjoint},
      {{"quantum-symbol-law", "symbol of the quantum Laplacian is (<xi1,xi1>+<xi2,xi2>) sigma", true}, 1e-11,
       symbol_law},
      {{"classical-quantum-bridge", "quantum Laplacian of M_Phi on the vacuum equals Delta_G Phi", true}, 1e-11,
       bridge},
      {{"heat-gaussian-representation", "heat closed form equals Gaussian-moment smoothing", true}, 1e-10,
       heat_gaussian},
      {{"heat-symbol-ode", "heat closed form equals the integrated symbol ODE", true}, 1e-6, heat_ode},
      {{"gaussian-integral", "Gaussian integral of the kernel equals the test-side heat flow", true}, 1e-10,
       gaussian_integral},
      {{"qsde-residual", "closed-form solution satisfies the symbol ODE", false}, 1e-6, qsde_residual},
      {{"qsde-symbol-ode", "closed-form solution equals the integrated symbol ODE", false}, 1e-6, qsde_ode},
      {{"semigroup", "restarting the homogeneous flow reproduces it", false}, 1e-10, semigroup},
      {{"translation-pairing", "convolution equals pairing with translates", false}, 1e-11, translation_pairing},
      {{"kernel-roundtrip", "<<Xi f, g>> equals <<Xi^K, f (x) g>>", false}, 1e-11, kernel_roundtrip},
      {{"multiplication-symbol", "symbol of M_Phi is L Phi(xi + eta)", false}, 1e-11, multiplication_symbol},
      {{"young-diagnostics", "Legendre conjugate, theta_n and Fenchel-Young inequality", false}, 1e-8,
       young_diagnostics},
  };
  return r;
}

bool selected(const Config& c, const std::string& name) {
  return c.suites.empty() || std::find(c.suites.begin(), c.suites.end(), name) != c.suites.end();
}

}  // namespace

std::vector<SuiteInfo> suites() {
  std::vector<SuiteInfo> out;
  for (const auto& s : registry()) out.push_back(s.info);
  return out;
}

void validate(const Config& c) {
  if (c.dim1 < 1 || c.dim2 < 1) throw InputError("dimensions must be >= 1");
  if (c.cutoff1 < 0 || c.cutoff2 < 0) throw InputError("cutoffs must be >= 0");
  if (c.tol && !(*c.tol >= 0.0)) throw InputError("tolerance must be >= 0");
  for (const auto& name : c.suites) {
    const auto& r = registry();
    if (std::none_of(r.begin(), r.end(), [&](const Suite& s) { return s.info.name == name; }))
      throw InputError("unknown suite '" + name + "'");
  }
  for (const auto& s : registry())
    if (selected(c, s.info.name) && s.info.needs_laplacian && (c.cutoff1 < 2 || c.cutoff2 < 2))
      throw InputError("suite '" + s.info.name + "' needs cutoffs >= 2");
}

std::vector<SuiteResult> run(const Config& c) {
  validate(c);
  std::vector<SuiteResult> out;
  std::uint64_t index = 0;
  for (const auto& s : registry()) {
    ++index;
    if (!selected(c, s.info.name)) continue;
    // Each suite has its own stream so selecting a subset does not change results.
    Rng rng(c.seed * 1000003ULL + index);
    const Outcome o = s.run(c, rng);
    SuiteResult r;
    r.name = s.info.name;
    r.identity = s.info.identity;
    r.tolerance = c.tol.value_or(s.tolerance);
    r.max_error = o.max_error;
    r.passed = std::isfinite(o.max_error) && o.max_error <= r.tolerance;
    r.cases = o.cases;
    r.detail = o.detail;
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json report(const Config& c, const std::vector<SuiteResult>& results) {
  nlohmann::json suites = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    suites.push_back({{"name", r.name},
                      {"identity", r.identity},
                      {"passed", r.passed},
                      {"max_error", r.max_error},
                      {"tolerance", r.tolerance},
                      {"cases", r.cases},
                      {"detail", r.detail}});
  }
  return {{"config",
           {{"dim1", c.dim1}, {"dim2", c.dim2}, {"cutoff1", c.cutoff1}, {"cutoff2", c.cutoff2}, {"seed", c.seed}}},
          {"suites", suites},
          {"passed", all}};
}

}  // namespace qgl::verify
