#pragma once

// Linear convolution evolution of operator kernels,
//
//   dXi/dt = Z(t) * Xi(t) + Theta(t),   Xi(0) = Xi0,
//
// solved in closed form,
//
//   Xi(t) = Xi0 * e^{*E_t} + int_0^t e^{*(E_t - E_s)} * Theta(s) ds,   E_t = int_0^t Z,
//
// and, independently, through the scalar symbol ODE at a point set followed
// by a kernel fit. The heat equation is the case Z = T/2. Processes are
// piecewise constant on a grid, so E_t is exact.

#include <map>
#include <string>
#include <vector>

#include "qgl/chaos.hpp"
#include "qgl/quantum.hpp"

namespace qgl {

struct ProcessSpec {
  // 0 = grid[0] < grid[1] < ...; kernels[i] holds on [grid[i], grid[i+1]).
  std::vector<double> grid;
  std::vector<OperatorKernel> kernels;

  void validate() const;
  double end() const { return grid.back(); }
  // Value on the interval containing t (the last interval at t = end()).
  const OperatorKernel& at(double t) const;

  static ProcessSpec constant(const OperatorKernel& k, double horizon);
  static ProcessSpec zero(const KernelShape& shape, double horizon);
};

struct EvolutionOptions {
  double simpson_tol = 1e-10;
  int max_panels = 1 << 14;
  double ode_step = 1e-3;
  bool compute_residual = false;
  double residual_step = 1e-4;
};

struct EvolutionSolution {
  std::vector<double> times;
  std::vector<OperatorKernel> kernels;
  std::string method;  // closed_form | symbol_ode_numeric
  std::vector<bool> truncated;
  std::map<std::string, std::string> labels;
  std::map<std::string, double> checks;
};

Expansion2 conv_exp(const Expansion2& phi);

OperatorKernel integrate_process(const ProcessSpec& p, double t);

EvolutionSolution solve_qsde(const ProcessSpec& z, const ProcessSpec& theta, const OperatorKernel& xi0,
                             const std::vector<double>& times, const EvolutionOptions& opts = {});

EvolutionSolution solve_symbol_ode(const ProcessSpec& z, const ProcessSpec& theta, const OperatorKernel& xi0,
                                   const std::vector<double>& times, const EvolutionOptions& opts = {});

// Z = T/2. With Theta == 0 the Gaussian representation is also computed and
// its largest coefficient gap recorded in checks["gaussian_gap"].
EvolutionSolution solve_heat(const OperatorKernel& xi0, const ProcessSpec& theta, const std::vector<double>& times,
                             const EvolutionOptions& opts = {});

// Point set used by solve_symbol_ode for a kernel shape.
std::vector<Point2> symbol_ode_points(const KernelShape& shape);

// Max over the sampled (t, point) pairs of |d/dt sigma - sigma_Z sigma - sigma_Theta|
// by central differences of the closed-form solution.
double symbol_residual(const ProcessSpec& z, const ProcessSpec& theta, const OperatorKernel& xi0,
                       const std::vector<double>& times, const std::vector<Point2>& points, double h,
                       const EvolutionOptions& opts = {});

// Standard Gaussian moment prod_i E[x^{alpha_i}].
double gaussian_moment(const MultiIndex& alpha);

// The distribution <<gamma_t, phi>> = E[phi(sqrt(t) x, sqrt(t) y)]; its
// Laplace transform is exp(t (<xi,xi> + <eta,eta>) / 2).
Expansion2 gaussian_distribution(std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2, double t);

// int Xi0^K(y1 + sqrt(t) x1, y2 + sqrt(t) x2) dgamma(x1) dgamma(x2), with the
// kernel read as a polynomial.
Complex gaussian_heat_kernel(const OperatorKernel& xi0, double t, const Point2& y);

KernelShape shape_of(const Expansion2& e);

}  // namespace qgl
