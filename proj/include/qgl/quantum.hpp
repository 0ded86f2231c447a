#pragma once

// Operators from test functions over C^{dim1} to distributions over C^{dim2},
// stored only through their kernels:
//
//   <<Xi f, g>> = <<Xi^K, f (x) g>>,   sigma(Xi)(xi1, xi2) = L(Xi^K)(xi1, xi2).

#include <string>
#include <utility>
#include <vector>

#include "qgl/chaos.hpp"

namespace qgl {

struct OperatorKernel {
  Expansion2 kernel;  // role distribution, dim2 >= 1
  std::string label;

  OperatorKernel() = default;
  OperatorKernel(Expansion2 k, std::string l);
};

Complex symbol(const OperatorKernel& op, std::span<const Complex> xi1, std::span<const Complex> xi2);

// One-variable distribution over dim2 with cutoff kernel.cutoff2().
Expansion2 apply(const OperatorKernel& op, const Expansion2& f);

OperatorKernel op_convolve(const OperatorKernel& a, const OperatorKernel& b);
OperatorKernel quantum_gross(const OperatorKernel& op);

// K_{n,m} = C(n+m, n) Phi_{n+m}, with both variables over Phi's space.
OperatorKernel multiplication_operator(const Expansion2& phi);
// Same, for an explicitly requested kernel shape; dim1 != dim2 is rejected.
OperatorKernel multiplication_operator(const Expansion2& phi, std::size_t dim1, std::size_t dim2);

// ((quantum Laplacian of M_Phi) applied to the vacuum, Delta_G Phi)
std::pair<Expansion2, Expansion2> classical_quantum_bridge(const Expansion2& phi);

struct KernelShape {
  std::size_t dim1 = 1;
  std::size_t dim2 = 1;
  int cutoff1 = 0;
  int cutoff2 = 0;
};

// Least-squares kernel whose symbol matches the given values at the given
// points; throws SingularFitError when the points do not determine it.
Expansion2 fit_kernel(const KernelShape& shape, const std::vector<Point2>& points,
                      const std::vector<Complex>& values);

// Same design, several right-hand sides (one value vector per kernel).
std::vector<Expansion2> fit_kernels(const KernelShape& shape, const std::vector<Point2>& points,
                                    const std::vector<std::vector<Complex>>& values);

}  // namespace qgl
