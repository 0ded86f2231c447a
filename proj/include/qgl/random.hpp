#pragma once

// Seeded generators for property checks. Coefficients are uniform in the
// unit square of C unless scaled.

#include <random>
#include <vector>

#include "qgl/chaos.hpp"
#include "qgl/tensor.hpp"

namespace qgl {

using Rng = std::mt19937_64;

Complex random_complex(Rng& rng, double scale = 1.0);
std::vector<Complex> random_vector(Rng& rng, std::size_t dim, double scale = 1.0);
// Uniform direction with |v| = radius * U, U uniform on [0, 1].
std::vector<Complex> random_ball_vector(Rng& rng, std::size_t dim, double radius);

SymTensor random_sym_tensor(Rng& rng, std::size_t dim, int degree, double scale = 1.0);

// Every coefficient with n <= max1, m <= max2 drawn at random; the cutoffs
// may be larger than the degrees used.
Expansion2 random_expansion(Rng& rng, std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2, Role role,
                            int max1, int max2, double scale = 1.0);

Point2 random_point(Rng& rng, std::size_t dim1, std::size_t dim2, double scale = 1.0);

}  // namespace qgl
