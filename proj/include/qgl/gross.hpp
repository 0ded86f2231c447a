#pragma once

// The Gross Laplacian on test functions, the trace distribution T, and the
// two convolution products it is built from.
//
//   (Phi * phi)_{k,l} = sum_{n,m} (n+k)!/k! (m+l)!/l! <Phi_{n,m}, phi_{n+k,m+l}>
//   (Phi * Psi)_{n,m} = sum Sym(Phi_{i,j} (x) Psi_{n-i,m-j})
//
// With Phi = T the first is Delta_G; on the distribution side T * Psi is the
// generalized Laplacian, whose Laplace transform is (<xi,xi> + <eta,eta>) L Psi.

#include <utility>

#include "qgl/chaos.hpp"

namespace qgl {

// T_{2,0} = tau_1, T_{0,2} = tau_2 (the latter only when dim2 > 0).
Expansion2 trace_distribution(std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2);

Expansion2 gross_test(const Expansion2& phi);
// (Delta_G^1 phi, Delta_G^2 phi), the parts acting on each variable.
std::pair<Expansion2, Expansion2> gross_split(const Expansion2& phi);

Expansion2 convolve_dist_test(const Expansion2& distribution, const Expansion2& test);
Expansion2 convolve_dist_dist(const Expansion2& a, const Expansion2& b);
Expansion2 gross_distribution(const Expansion2& distribution);

}  // namespace qgl
