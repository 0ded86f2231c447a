#include "qgl/random.hpp"

#include <cmath>

namespace qgl {

Complex random_complex(Rng& rng, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  const double im = u(rng);
  return scale * Complex(re, im);
}

std::vector<Complex> random_vector(Rng& rng, std::size_t dim, double scale) {
  std::vector<Complex> v(dim);
  for (auto& c : v) c = random_complex(rng, scale);
  return v;
}

std::vector<Complex> random_ball_vector(Rng& rng, std::size_t dim, double radius) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> v(dim);
  double norm2 = 0.0;
  for (auto& c : v) {
    const double re = g(rng);
    const double im = g(rng);
    c = Complex(re, im);
    norm2 += std::norm(c);
  }
  const double r = radius * u(rng);
  if (norm2 > 0.0)
    for (auto& c : v) c *= r / std::sqrt(norm2);
  return v;
}

SymTensor random_sym_tensor(Rng& rng, std::size_t dim, int degree, double scale) {
  SymTensor t(dim, degree);
  for (const MultiIndex& a : multi_indices(dim, degree)) t.set(a, random_complex(rng, scale));
  return t;
}

Expansion2 random_expansion(Rng& rng, std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2, Role role,
                            int max1, int max2, double scale) {
  Expansion2 e(dim1, dim2, cutoff1, cutoff2, role);
  const int top2 = dim2 == 0 ? 0 : max2;
  for (int n = 0; n <= max1; ++n)
    for (const MultiIndex& a : multi_indices(dim1, n))
      for (int m = 0; m <= top2; ++m)
        for (const MultiIndex& b : multi_indices(dim2, m)) e.set(a, b, random_complex(rng, scale));
  return e;
}

Point2 random_point(Rng& rng, std::size_t dim1, std::size_t dim2, double scale) {
  return Point2{random_vector(rng, dim1, scale), random_vector(rng, dim2, scale)};
}

}  // namespace qgl
