#include "qgl/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "qgl/errors.hpp"
#include "qgl/gross.hpp"

namespace qgl {

namespace {

bool same_shape(const Expansion2& a, const Expansion2& b) {
  return a.dim1() == b.dim1() && a.dim2() == b.dim2() && a.cutoff1() == b.cutoff1() && a.cutoff2() == b.cutoff2();
}

Expansion2 zero_like(const Expansion2& e) {
  return Expansion2(e.dim1(), e.dim2(), e.cutoff1(), e.cutoff2(), Role::distribution);
}

// P_k = Phi^{*k} / k! for k = 0, 1, ... until the powers vanish below the cutoffs.
std::vector<Expansion2> exp_series(const Expansion2& phi_plus) {
  std::vector<Expansion2> terms;
  Expansion2 term = Expansion2::unit(phi_plus.dim1(), phi_plus.dim2(), phi_plus.cutoff1(), phi_plus.cutoff2(),
                                     Role::distribution);
  for (int k = 1; !term.is_zero(); ++k) {
    terms.push_back(term);
    term = convolve_dist_dist(term, phi_plus);
    term *= 1.0 / k;
  }
  return terms;
}

// Splits off the constant coefficient: Phi = c delta_0 + Phi_plus.
std::pair<Complex, Expansion2> split_constant(const Expansion2& phi) {
  const MultiIndex z1 = MultiIndex::zero(phi.dim1());
  const MultiIndex z2 = MultiIndex::zero(phi.dim2());
  const Complex c = phi.coefficient(z1, z2);
  Expansion2 rest = phi;
  rest.set(z1, z2, 0.0);
  return {c, rest};
}

// e^{u c} sum_k u^k P_k
Expansion2 exp_from_series(Complex c, const std::vector<Expansion2>& series, double u) {
  Expansion2 r = zero_like(series.front());
  double uk = 1.0;
  for (const auto& p : series) {
    Expansion2 term = p;
    term *= uk;
    r += term;
    uk *= u;
  }
  r *= std::exp(u * c);
  return r;
}

// int_0^length e^{*u Z} du by composite Simpson with panel doubling.
Expansion2 simpson_exp_integral(const Expansion2& z, double length, const EvolutionOptions& opts) {
  const auto [c, z_plus] = split_constant(z);
  const auto series = exp_series(z_plus);
  auto f = [&](double u) { return exp_from_series(c, series, u); };

  Expansion2 ends = f(0.0) + f(length);
  Expansion2 even = zero_like(z);  // interior points shared with the coarser level
  Expansion2 odd = f(0.5 * length);
  auto combine = [&](int panels) {
    Expansion2 s = ends;
    Expansion2 o = odd;
    o *= 4.0;
    Expansion2 e = even;
    e *= 2.0;
    s += o;
    s += e;
    s *= length / panels / 3.0;
    return s;
  };
  int panels = 2;
  Expansion2 prev = combine(panels);
  while (panels < opts.max_panels) {
    even += odd;
    panels *= 2;
    const double h = length / panels;
    odd = zero_like(z);
    for (int j = 1; j < panels; j += 2) odd += f(j * h);
    Expansion2 next = combine(panels);
    if (max_abs_diff(next, prev) <= opts.simpson_tol) return next;
    prev = std::move(next);
  }
  throw ConvergenceError("Simpson quadrature did not reach tolerance " + std::to_string(opts.simpson_tol) +
                         " within " + std::to_string(opts.max_panels) + " panels");
}

void check_inputs(const ProcessSpec& z, const ProcessSpec& theta, const OperatorKernel& xi0,
                  const std::vector<double>& times) {
  z.validate();
  theta.validate();
  if (xi0.kernel.role() != Role::distribution) throw RoleError("initial kernel must have role distribution");
  if (!same_shape(z.kernels.front().kernel, xi0.kernel) || !same_shape(theta.kernels.front().kernel, xi0.kernel))
    throw DimensionError("process kernels and initial kernel must share dimensions and cutoffs");
  const double horizon = std::min(z.end(), theta.end());
  for (double t : times)
    if (!(t >= 0.0) || t > horizon)
      throw DomainError("requested time " + std::to_string(t) + " outside [0, " + std::to_string(horizon) + "]");
}

bool is_zero_process(const ProcessSpec& p) {
  return std::all_of(p.kernels.begin(), p.kernels.end(), [](const OperatorKernel& k) { return k.kernel.is_zero(); });
}

void add_labels(EvolutionSolution& s) {
  s.labels["space1"] = "(e^{theta1*})*";
  s.labels["space2"] = "(e^{theta2*})*";
}

std::vector<double> breakpoints(const ProcessSpec& z, const ProcessSpec& theta, const std::vector<double>& extra,
                                double until) {
  std::set<double> pts{0.0, until};
  for (double g : z.grid)
    if (g < until) pts.insert(g);
  for (double g : theta.grid)
    if (g < until) pts.insert(g);
  for (double g : extra)
    if (g < until) pts.insert(g);
  return {pts.begin(), pts.end()};
}

// Three fixed points small enough that the degrees dropped by truncation
// contribute below ~1e-9 to the symbol.
std::vector<Point2> residual_points(const KernelShape& s) {
  std::vector<Point2> pts;
  const int cmin = s.dim2 == 0 ? s.cutoff1 : std::min(s.cutoff1, s.cutoff2);
  const double r = std::min(0.1, std::pow(10.0, -9.0 / (cmin + 1)));
  const Complex base[3] = {{0.7 * r, 0.2 * r}, {-0.5 * r, 0.6 * r}, {0.3 * r, -0.8 * r}};
  for (int i = 0; i < 3; ++i) {
    Point2 p{std::vector<Complex>(s.dim1), std::vector<Complex>(s.dim2)};
    for (std::size_t j = 0; j < s.dim1; ++j) p.z[j] = base[(i + j) % 3];
    for (std::size_t j = 0; j < s.dim2; ++j) p.t[j] = base[(i + j + 1) % 3] * Complex(0.0, 1.0);
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

// --- processes --------------------------------------------------------------

void ProcessSpec::validate() const {
  if (grid.size() < 2) throw DomainError("process grid needs at least two points");
  if (grid.front() != 0.0) throw DomainError("process grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]) || !std::isfinite(grid[i]))
      throw DomainError("process grid must be strictly increasing and finite");
  if (kernels.size() != grid.size() - 1)
    throw DimensionError("process needs one kernel per grid interval (" + std::to_string(grid.size() - 1) +
                         "), got " + std::to_string(kernels.size()));
  for (const auto& k : kernels) {
    if (k.kernel.role() != Role::distribution) throw RoleError("process kernels must have role distribution");
    if (!same_shape(k.kernel, kernels.front().kernel))
      throw DimensionError("process kernels must share dimensions and cutoffs");
  }
}

const OperatorKernel& ProcessSpec::at(double t) const {
  if (!(t >= 0.0) || t > end()) throw DomainError("process evaluated outside its grid");
  const auto it = std::upper_bound(grid.begin(), grid.end(), t);
  const auto idx = static_cast<std::size_t>(it - grid.begin()) - 1;
  return kernels[std::min(idx, kernels.size() - 1)];
}

ProcessSpec ProcessSpec::constant(const OperatorKernel& k, double horizon) {
  if (!(horizon > 0.0)) throw DomainError("process horizon must be > 0");
  return ProcessSpec{{0.0, horizon}, {k}};
}

ProcessSpec ProcessSpec::zero(const KernelShape& s, double horizon) {
  return constant(OperatorKernel(Expansion2(s.dim1, s.dim2, s.cutoff1, s.cutoff2, Role::distribution), "0"),
                  horizon);
}

KernelShape shape_of(const Expansion2& e) { return {e.dim1(), e.dim2(), e.cutoff1(), e.cutoff2()}; }

// --- closed form ------------------------------------------------------------

Expansion2 conv_exp(const Expansion2& phi) {
  if (phi.role() != Role::distribution) throw RoleError("conv_exp: expected a distribution");
  const auto [c, plus] = split_constant(phi);
  return exp_from_series(c, exp_series(plus), 1.0);
}

OperatorKernel integrate_process(const ProcessSpec& p, double t) {
  p.validate();
  if (!(t >= 0.0) || t > p.end())
    throw DomainError("integrate_process: t = " + std::to_string(t) + " outside [0, " + std::to_string(p.end()) +
                      "]");
  Expansion2 sum = zero_like(p.kernels.front().kernel);
  for (std::size_t i = 0; i < p.kernels.size(); ++i) {
    const double len = std::min(t, p.grid[i + 1]) - p.grid[i];
    if (len <= 0.0) break;
    Expansion2 part = p.kernels[i].kernel;
    part *= len;
    sum += part;
  }
  return OperatorKernel(std::move(sum), "integral");
}

EvolutionSolution solve_qsde(const ProcessSpec& z, const ProcessSpec& theta, const OperatorKernel& xi0,
                             const std::vector<double>& times, const EvolutionOptions& opts) {
  check_inputs(z, theta, xi0, times);
  EvolutionSolution sol;
  sol.method = "closed_form";
  add_labels(sol);

  for (double t : times) {
    Expansion2 xi = xi0.kernel;
    if (t > 0.0) {
      const Expansion2 e_t = integrate_process(z, t).kernel;
      xi = convolve_dist_dist(xi0.kernel, conv_exp(e_t));
      const auto pts = breakpoints(z, theta, {}, t);
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i];
        const double b = pts[i + 1];
        const Expansion2& th = theta.at(a).kernel;
        if (th.is_zero()) continue;
        const Expansion2 inner = simpson_exp_integral(z.at(a).kernel, b - a, opts);
        const Expansion2 outer_exp = conv_exp(e_t - integrate_process(z, b).kernel);
        xi += convolve_dist_dist(convolve_dist_dist(outer_exp, inner), th);
      }
    }
    sol.times.push_back(t);
    sol.truncated.push_back(xi.truncated());
    sol.kernels.emplace_back(std::move(xi), xi0.label.empty() ? "Xi(t)" : xi0.label + "(t)");
  }

  if (opts.compute_residual) {
    const double h = opts.residual_step;
    const double horizon = std::min(z.end(), theta.end());
    std::vector<double> eligible;
    for (double t : times) {
      if (t - h < 0.0 || t + h > horizon) continue;
      const bool near_break = std::any_of(z.grid.begin(), z.grid.end(), [&](double g) { return std::abs(t - g) < 2 * h; }) ||
                              std::any_of(theta.grid.begin(), theta.grid.end(),
                                          [&](double g) { return std::abs(t - g) < 2 * h; });
      if (!near_break) eligible.push_back(t);
    }
    if (!eligible.empty()) {
      EvolutionOptions inner = opts;
      inner.compute_residual = false;
      sol.checks["residual_max"] =
          symbol_residual(z, theta, xi0, eligible, residual_points(shape_of(xi0.kernel)), h, inner);
    }
  }
  return sol;
}

double symbol_residual(const ProcessSpec& z, const ProcessSpec& theta, const OperatorKernel& xi0,
                       const std::vector<double>& times, const std::vector<Point2>& points, double h,
                       const EvolutionOptions& opts) {
  if (!(h > 0.0)) throw DomainError("symbol_residual: step must be > 0");
  double worst = 0.0;
  for (double t : times) {
    const auto sol = solve_qsde(z, theta, xi0, {t - h, t, t + h}, opts);
    for (const auto& p : points) {
      const Complex minus = symbol(sol.kernels[0], p.z, p.t);
      const Complex mid = symbol(sol.kernels[1], p.z, p.t);
      const Complex plus = symbol(sol.kernels[2], p.z, p.t);
      const Complex rhs = symbol(z.at(t), p.z, p.t) * mid + symbol(theta.at(t), p.z, p.t);
      worst = std::max(worst, std::abs((plus - minus) / (2.0 * h) - rhs));
    }
  }
  return worst;
}

// --- numerical symbol route -------------------------------------------------

// Torus grid r * exp(2 pi i k / p) per coordinate. Fitting on it aliases the
// degree-(k + p) part of the symbol onto degree k with weight r^p, while
// round-off is amplified by r^{-(c1 + c2)}; r balances the two.
std::vector<Point2> symbol_ode_points(const KernelShape& s) {
  constexpr std::size_t kMaxPoints = 4096;
  const int base1 = s.cutoff1 + 1;
  const int base2 = s.cutoff2 + 1;
  int p1 = base1;
  int p2 = base2;
  for (double f : {3.0, 2.5, 2.0, 1.5, 1.25, 1.0}) {
    p1 = std::max(base1, static_cast<int>(std::ceil(f * base1)));
    p2 = std::max(base2, static_cast<int>(std::ceil(f * base2)));
    const double count = std::pow(p1, static_cast<double>(s.dim1)) * std::pow(p2, static_cast<double>(s.dim2));
    if (count <= static_cast<double>(kMaxPoints)) break;
  }
  const int p_min = s.dim2 > 0 ? std::min(p1, p2) : p1;
  const double radius =
      std::clamp(std::pow(10.0, -15.0 / (p_min + s.cutoff1 + (s.dim2 > 0 ? s.cutoff2 : 0))), 0.05, 0.5);
  const std::size_t coords = s.dim1 + s.dim2;
  std::vector<int> radix(coords);
  for (std::size_t j = 0; j < coords; ++j) radix[j] = j < s.dim1 ? p1 : p2;

  std::vector<Point2> pts;
  std::vector<int> digit(coords, 0);
  while (true) {
    Point2 p{std::vector<Complex>(s.dim1), std::vector<Complex>(s.dim2)};
    for (std::size_t j = 0; j < coords; ++j) {
      const Complex w = std::polar(radius, 2.0 * std::numbers::pi * digit[j] / radix[j]);
      if (j < s.dim1)
        p.z[j] = w;
      else
        p.t[j - s.dim1] = w;
    }
    pts.push_back(std::move(p));
    std::size_t j = 0;
    while (j < coords && ++digit[j] == radix[j]) digit[j++] = 0;
    if (j == coords) break;
  }
  return pts;
}

EvolutionSolution solve_symbol_ode(const ProcessSpec& z, const ProcessSpec& theta, const OperatorKernel& xi0,
                                   const std::vector<double>& times, const EvolutionOptions& opts) {
  check_inputs(z, theta, xi0, times);
  if (!(opts.ode_step > 0.0)) throw DomainError("ode step must be > 0");

  const KernelShape shape = shape_of(xi0.kernel);
  const auto points = symbol_ode_points(shape);
  const std::size_t np = points.size();

  auto symbols_of = [&](const ProcessSpec& p) {
    std::vector<std::vector<Complex>> out;
    for (const auto& k : p.kernels) {
      std::vector<Complex> v(np);
      for (std::size_t i = 0; i < np; ++i) v[i] = symbol(k, points[i].z, points[i].t);
      out.push_back(std::move(v));
    }
    return out;
  };
  const auto sz = symbols_of(z);
  const auto sth = symbols_of(theta);
  auto interval = [](const ProcessSpec& p, double t) {
    const auto it = std::upper_bound(p.grid.begin(), p.grid.end(), t);
    return std::min(static_cast<std::size_t>(it - p.grid.begin()) - 1, p.kernels.size() - 1);
  };

  std::vector<Complex> sigma(np);
  for (std::size_t i = 0; i < np; ++i) sigma[i] = symbol(xi0, points[i].z, points[i].t);

  const double t_max = times.empty() ? 0.0 : *std::max_element(times.begin(), times.end());
  const auto pts = breakpoints(z, theta, times, t_max);
  std::map<double, std::vector<Complex>> snapshots;
  snapshots[0.0] = sigma;
  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    const double a = pts[s];
    const double b = pts[s + 1];
    const auto& cz = sz[interval(z, a)];
    const auto& cth = sth[interval(theta, a)];
    const int steps = std::max(1, static_cast<int>(std::ceil((b - a) / opts.ode_step - 1e-9)));
    const double h = (b - a) / steps;
    for (std::size_t i = 0; i < np; ++i) {
      const Complex az = cz[i];
      const Complex bt = cth[i];
      auto f = [&](Complex y) { return az * y + bt; };
      Complex y = sigma[i];
      for (int k = 0; k < steps; ++k) {
        const Complex k1 = f(y);
        const Complex k2 = f(y + 0.5 * h * k1);
        const Complex k3 = f(y + 0.5 * h * k2);
        const Complex k4 = f(y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
      sigma[i] = y;
    }
    snapshots[b] = sigma;
  }

  std::vector<double> fit_times;
  std::vector<std::vector<Complex>> fit_values;
  for (const auto& [t, v] : snapshots) {
    if (t == 0.0 || std::find(times.begin(), times.end(), t) == times.end()) continue;
    fit_times.push_back(t);
    fit_values.push_back(v);
  }
  std::map<double, Expansion2> fitted;
  if (!fit_times.empty()) {
    auto kernels = fit_kernels(shape, points, fit_values);
    for (std::size_t i = 0; i < fit_times.size(); ++i) fitted.emplace(fit_times[i], std::move(kernels[i]));
  }

  EvolutionSolution sol;
  sol.method = "symbol_ode_numeric";
  add_labels(sol);
  for (double t : times) {
    Expansion2 k = t == 0.0 ? xi0.kernel : fitted.at(t);
    sol.times.push_back(t);
    sol.truncated.push_back(k.truncated());
    sol.kernels.emplace_back(std::move(k), xi0.label.empty() ? "Xi(t)" : xi0.label + "(t)");
  }
  return sol;
}

// --- heat equation and the Gaussian route -----------------------------------

EvolutionSolution solve_heat(const OperatorKernel& xi0, const ProcessSpec& theta, const std::vector<double>& times,
                             const EvolutionOptions& opts) {
  theta.validate();
  const Expansion2& k0 = xi0.kernel;
  Expansion2 half_t = trace_distribution(k0.dim1(), k0.dim2(), k0.cutoff1(), k0.cutoff2());
  half_t *= 0.5;
  const ProcessSpec z = ProcessSpec::constant(OperatorKernel(half_t, "T/2"), theta.end());
  EvolutionSolution sol = solve_qsde(z, theta, xi0, times, opts);
  sol.labels["equation"] = "heat";
  if (is_zero_process(theta)) {
    double gap = 0.0;
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
      const double t = sol.times[i];
      const Expansion2 g =
          convolve_dist_dist(k0, gaussian_distribution(k0.dim1(), k0.dim2(), k0.cutoff1(), k0.cutoff2(), t));
      gap = std::max(gap, max_abs_diff(sol.kernels[i].kernel, g));
    }
    sol.checks["gaussian_gap"] = gap;
  }
  return sol;
}

double gaussian_moment(const MultiIndex& alpha) {
  double r = 1.0;
  for (int k : alpha.occupations()) {
    if (k % 2 != 0) return 0.0;
    for (int j = k - 1; j > 1; j -= 2) r *= j;
  }
  return r;
}

Expansion2 gaussian_distribution(std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2, double t) {
  if (!(t >= 0.0)) throw DomainError("gaussian_distribution: t must be >= 0");
  Expansion2 g(dim1, dim2, cutoff1, cutoff2, Role::distribution);
  for (int n = 0; n <= g.cutoff1(); n += 2) {
    for (int m = 0; m <= g.cutoff2(); m += 2) {
      const double scale = std::pow(t, (n + m) / 2) / (factorial(n) * factorial(m));
      if (scale == 0.0) continue;
      for (const MultiIndex& a : multi_indices(dim1, n)) {
        const double ma = gaussian_moment(a);
        if (ma == 0.0) continue;
        for (const MultiIndex& b : multi_indices(dim2, m)) {
          const double mb = gaussian_moment(b);
          if (mb != 0.0) g.set(a, b, scale * ma * mb);
        }
      }
    }
  }
  if (t > 0.0) g.mark_truncated(g.cutoff1(), g.cutoff2());
  return g;
}

Complex gaussian_heat_kernel(const OperatorKernel& xi0, double t, const Point2& y) {
  if (!(t >= 0.0)) throw DomainError("gaussian_heat_kernel: t must be >= 0");
  // psi(x) = Xi0^K(x + y); the integral is E[psi(sqrt(t) x)].
  const Expansion2 psi = translate(xi0.kernel.with_role(Role::test), y);
  Complex sum{};
  for (const auto& [k, blk] : psi.blocks()) {
    if (k.first % 2 != 0 || k.second % 2 != 0) continue;
    const double scale = std::pow(t, (k.first + k.second) / 2);
    for (const auto& [key, v] : blk.entries()) {
      const double w = static_cast<double>(multinomial_weight(key.first)) *
                       static_cast<double>(multinomial_weight(key.second));
      sum += w * v * scale * gaussian_moment(key.first) * gaussian_moment(key.second);
    }
  }
  return sum;
}

}  // namespace qgl
