// One line per acceptance criterion; exit status 1 if any fails.
// Tolerances are fixed here and never read from the library.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qgl/evolution.hpp"
#include "qgl/gross.hpp"
#include "qgl/quantum.hpp"
#include "qgl/random.hpp"
#include "qgl/young.hpp"

using namespace qgl;

namespace {

struct Outcome {
  bool pass;
  double error;
  double tol;
  std::string detail;
};

double rel(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

Outcome contraction_oracle() {
  const double tol = 1e-12;
  Rng rng(1001);
  std::uniform_int_distribution<int> dim(1, 3), deg(0, 5);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = static_cast<std::size_t>(dim(rng));
    int na = deg(rng), nb = deg(rng);
    if (na > nb) std::swap(na, nb);
    const SymTensor a = random_sym_tensor(rng, d, na);
    const SymTensor b = random_sym_tensor(rng, d, nb);
    const oracle::Full want = oracle::contract(oracle::expand(a), oracle::expand(b));
    const oracle::Full got = oracle::expand(contract_full(a, b));
    double scale = 1.0, diff = 0.0;
    for (std::size_t k = 0; k < want.data.size(); ++k) {
      scale = std::max(scale, std::abs(want.data[k]));
      diff = std::max(diff, std::abs(got.data[k] - want.data[k]));
    }
    worst = std::max(worst, diff / scale);
  }
  return {worst <= tol, worst, tol, "200 pairs, d <= 3, degrees <= 5, relative"};
}

Outcome trace_convolution_is_gross() {
  Rng rng(1002);
  std::uniform_int_distribution<int> d1(1, 3), d2(0, 2), cut(2, 6);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t a = static_cast<std::size_t>(d1(rng)), b = static_cast<std::size_t>(d2(rng));
    const int c1 = cut(rng), c2 = b ? cut(rng) : 0;
    const Expansion2 phi = random_expansion(rng, a, b, c1, c2, Role::test, c1, c2);
    const Expansion2 lhs = convolve_dist_test(trace_distribution(a, b, c1, c2), phi);
    worst = std::max(worst, max_abs_diff(lhs, gross_test(phi)));
  }
  return {worst == 0.0, worst, 0.0, "100 random polynomials, exact coefficient equality"};
}

Outcome exponential_eigen_relation() {
  const double tol = 1e-12;
  Rng rng(1003);
  std::uniform_int_distribution<int> d1(1, 3), d2(1, 2);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t a = static_cast<std::size_t>(d1(rng)), b = static_cast<std::size_t>(d2(rng));
    const auto xi = random_ball_vector(rng, a, 1.0), eta = random_ball_vector(rng, b, 1.0);
    const Expansion2 e = exponential_vector(xi, eta, 8, 8);
    const Complex q = oracle::dot(xi, xi) + oracle::dot(eta, eta);
    worst = std::max(worst, max_abs_diff(gross_test(e), q * e, 6, 6));
  }
  return {worst <= tol, worst, tol, "50 (xi, eta) with |.| <= 1, cutoffs 8, degrees <= 6"};
}

Outcome laplace_homomorphism() {
  const double tol = 1e-11;
  Rng rng(1004);
  std::uniform_int_distribution<int> d(1, 2);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t a = static_cast<std::size_t>(d(rng)), b = static_cast<std::size_t>(d(rng));
    const Expansion2 phi = random_expansion(rng, a, b, 6, 6, Role::distribution, 3, 3);
    const Expansion2 psi = random_expansion(rng, a, b, 6, 6, Role::distribution, 3, 3);
    const Expansion2 conv = convolve_dist_dist(phi, psi);
    for (int k = 0; k < 20; ++k) {
      const auto xi = random_vector(rng, a), eta = random_vector(rng, b);
      worst = std::max(worst, rel(laplace(conv, xi, eta), laplace(phi, xi, eta) * laplace(psi, xi, eta)));
    }
  }
  return {worst <= tol, worst, tol, "50 pairs x 20 points, relative to max(1, |value|)"};
}

Outcome gross_adjointness() {
  const double tol = 1e-11;
  Rng rng(1005);
  std::uniform_int_distribution<int> d(1, 3);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t a = static_cast<std::size_t>(d(rng)), b = static_cast<std::size_t>(d(rng)) - 1;
    const Expansion2 big = random_expansion(rng, a, b, 6, 6, Role::distribution, 4, 4);
    const Expansion2 phi = oracle::entire_scaled(random_expansion(rng, a, b, 6, 6, Role::test, 6, 6));
    const Complex lhs = dual_pair(gross_distribution(big), phi);
    const Complex rhs = dual_pair(big, gross_test(phi));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst <= tol, worst, tol, "50 degree-compatible pairs, test coefficients decay as 1/(n! m!), absolute"};
}

Outcome quantum_symbol_law() {
  const double tol = 1e-11;
  Rng rng(1006);
  std::uniform_int_distribution<int> d(1, 2);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const std::size_t a = static_cast<std::size_t>(d(rng)), b = static_cast<std::size_t>(d(rng));
    const OperatorKernel xi(random_expansion(rng, a, b, 6, 6, Role::distribution, 4, 4), "Xi");
    const OperatorKernel lap = quantum_gross(xi);
    for (int k = 0; k < 20; ++k) {
      const auto x1 = random_vector(rng, a), x2 = random_vector(rng, b);
      const Complex q = oracle::dot(x1, x1) + oracle::dot(x2, x2);
      worst = std::max(worst, rel(symbol(lap, x1, x2), q * symbol(xi, x1, x2)));
    }
  }
  return {worst <= tol, worst, tol, "20 kernels x 20 points, relative to max(1, |value|)"};
}

Outcome classical_quantum_bridge_check() {
  const double tol = 1e-11;
  Rng rng(1007);
  std::uniform_int_distribution<int> d(1, 3);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t a = static_cast<std::size_t>(d(rng));
    const Expansion2 phi = random_expansion(rng, a, 0, 6, 0, Role::distribution, 4, 0);
    // (Delta^Q M_Phi) e_0 from its pieces
    const OperatorKernel m = multiplication_operator(phi, a, a);
    const Expansion2 vacuum = Expansion2::unit(a, 0, 6, 0, Role::test);
    const Expansion2 quantum = apply(quantum_gross(m), vacuum);
    worst = std::max(worst, max_abs_diff(quantum, gross_distribution(phi)));
  }
  return {worst <= tol, worst, tol, "50 one-variable Phi of degree <= 4, d1 = d2 <= 3"};
}

// gamma_t through its moments, t^{(n+m)/2} M(alpha) M(beta) / (n! m!).
Expansion2 gaussian_from_moments(std::size_t d1, std::size_t d2, int c1, int c2, double t) {
  Expansion2 g(d1, d2, c1, c2, Role::distribution);
  auto moment = [](const MultiIndex& a) {
    double r = 1.0;
    for (int k : a.occupations()) r *= oracle::double_factorial_moment(k);
    return r;
  };
  for (int n = 0; n <= c1; n += 2)
    for (const MultiIndex& a : multi_indices(d1, n))
      for (int m = 0; m <= c2; m += 2)
        for (const MultiIndex& b : multi_indices(d2, m)) {
          const double v = std::pow(t, (n + m) / 2.0) * moment(a) * moment(b) / (std::tgamma(n + 1.0) * std::tgamma(m + 1.0));
          if (v != 0.0) g.set(a, b, v);
        }
  return g;
}

Outcome heat_oracle_triangle() {
  const double tol_gauss = 1e-10, tol_ode = 1e-6;
  Rng rng(1008);
  const std::vector<double> times{0.1, 0.5, 1.0, 2.0};
  struct Shape {
    std::size_t d;
    int c;
  };
  double gauss = 0.0, ode = 0.0;
  for (const Shape s : {Shape{1, 8}, Shape{2, 4}}) {
    for (int i = 0; i < 2; ++i) {
      const OperatorKernel xi0(random_expansion(rng, s.d, s.d, s.c, s.c, Role::distribution, std::min(4, s.c),
                                                std::min(4, s.c), 0.5),
                               "Xi0");
      const ProcessSpec zero = ProcessSpec::zero(shape_of(xi0.kernel), 2.0);
      const auto closed = solve_heat(xi0, zero, times);
      Expansion2 half = trace_distribution(s.d, s.d, s.c, s.c);
      half *= 0.5;
      const auto numeric = solve_symbol_ode(ProcessSpec::constant(OperatorKernel(half, "T/2"), 2.0), zero, xi0, times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        const Expansion2 g = gaussian_from_moments(s.d, s.d, s.c, s.c, times[k]);
        gauss = std::max(gauss, max_abs_diff(closed.kernels[k].kernel, convolve_dist_dist(xi0.kernel, g)));
        ode = std::max(ode, max_abs_diff(closed.kernels[k].kernel, numeric.kernels[k].kernel));
      }
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "gaussian %.2e (tol %.0e), rk4 step 1e-3 %.2e (tol %.0e); d=1 c=8 and d=2 c=4",
                gauss, tol_gauss, ode, tol_ode);
  return {gauss <= tol_gauss && ode <= tol_ode, std::max(gauss / tol_gauss, ode / tol_ode), 1.0,
          std::string(buf) + "; error column is the worse ratio to tolerance"};
}

Outcome qsde_residual() {
  const double tol = 1e-6, h = 1e-4;
  Rng rng(1009);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const std::size_t a = 1 + static_cast<std::size_t>(i % 2), b = 1;
    const int c = 6;
    auto kernel = [&](int deg, double scale) {
      return OperatorKernel(random_expansion(rng, a, b, c, c, Role::distribution, deg, deg, scale), "K");
    };
    const OperatorKernel xi0 = kernel(3, 1.0);
    const double split = 0.3 + 0.4 * u(rng);
    const ProcessSpec z{{0.0, split, 1.0}, {kernel(2, 0.5), kernel(2, 0.5)}};
    const ProcessSpec theta{{0.0, 1.0 - split, 1.0}, {kernel(2, 0.5), kernel(2, 0.5)}};
    // one interior time away from both breakpoints
    double t = 0.0;
    do t = 0.05 + 0.9 * u(rng);
    while (std::abs(t - split) < 0.01 || std::abs(t - (1.0 - split)) < 0.01);
    const auto x1 = random_ball_vector(rng, a, 0.05), x2 = random_ball_vector(rng, b, 0.05);
    const auto sol = solve_qsde(z, theta, xi0, {t - h, t, t + h});
    const Complex ds = (symbol(sol.kernels[2], x1, x2) - symbol(sol.kernels[0], x1, x2)) / (2 * h);
    const Complex rhs = symbol(z.at(t), x1, x2) * symbol(sol.kernels[1], x1, x2) + symbol(theta.at(t), x1, x2);
    worst = std::max(worst, std::abs(ds - rhs));
  }
  return {worst <= tol, worst, tol, "10 (t, xi1, xi2), 2-interval Z and Theta, central step 1e-4"};
}

Outcome young_diagnostics() {
  const double tol = 1e-8;
  const YoungFunctionSpec g = YoungFunctionSpec::gaussian();
  double conj = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = 10.0 * i / 99.0;
    conj = std::max(conj, std::abs(conjugate_eval(g, x) - x * x / 4.0));
  }
  const double tn = std::abs(theta_n(g, 2) - std::exp(1.0));
  int violations = 0;
  for (const auto& th : {g, YoungFunctionSpec::power(3.0), YoungFunctionSpec::expm1()})
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= 40; ++j) {
        const double x = 0.1 * i, y = 0.1 * j;
        if (x * y > th(x) + conjugate_eval(th, y) + 1e-12) ++violations;
      }
  char buf[160];
  std::snprintf(buf, sizeof buf, "conjugate %.2e, theta_2 %.2e (tol %.0e), Fenchel-Young violations %d", conj, tn, tol,
                violations);
  return {conj <= tol && tn <= tol && violations == 0, std::max(conj, tn), tol, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"contraction oracle", contraction_oracle},
      {"trace convolution equals Gross Laplacian", trace_convolution_is_gross},
      {"exponential eigen-relation", exponential_eigen_relation},
      {"Laplace homomorphism", laplace_homomorphism},
      {"Gross adjointness", gross_adjointness},
      {"quantum symbol law", quantum_symbol_law},
      {"classical-quantum bridge", classical_quantum_bridge_check},
      {"heat oracle triangle", heat_oracle_triangle},
      {"evolution residual", qsde_residual},
      {"Young diagnostics", young_diagnostics},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, NAN, 0.0, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu %s: max error %.3e tol %.0e [%s] (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.error, o.tol, o.detail.c_str(), secs);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures ? 1 : 0;
}
