#include <doctest.h>

#include "oracles.hpp"
#include "qgl/errors.hpp"
#include "qgl/gross.hpp"
#include "qgl/random.hpp"

using namespace qgl;
using oracle::mi;
using oracle::poly1;

namespace {

const MultiIndex kNone = MultiIndex::zero(0);

// Sum of second derivatives in every coordinate by central differences.
Complex fd_laplacian(const Expansion2& phi, const Point2& p, double h) {
  Complex s{};
  const Complex c = evaluate(phi, p);
  auto bump = [&](bool first, std::size_t j) {
    Point2 plus = p, minus = p;
    (first ? plus.z : plus.t)[j] += h;
    (first ? minus.z : minus.t)[j] -= h;
    return (evaluate(phi, plus) - 2.0 * c + evaluate(phi, minus)) / (h * h);
  };
  for (std::size_t j = 0; j < p.z.size(); ++j) s += bump(true, j);
  for (std::size_t j = 0; j < p.t.size(); ++j) s += bump(false, j);
  return s;
}

}  // namespace

TEST_CASE("trace distribution") {
  const Expansion2 t = trace_distribution(2, 1, 4, 4);
  CHECK(t.role() == Role::distribution);
  CHECK(std::abs(t.coefficient(mi({2, 0}), mi({0})) - 1.0) == 0.0);
  CHECK(std::abs(t.coefficient(mi({1, 1}), mi({0}))) == 0.0);
  CHECK(std::abs(t.coefficient(mi({0, 0}), mi({2})) - 1.0) == 0.0);
  CHECK(t.term_count() == 3);
  CHECK_THROWS_AS(trace_distribution(1, 1, 1, 4), DomainError);
  CHECK(trace_distribution(3, 0, 2, 0).term_count() == 3);
}

TEST_CASE("Gross Laplacian of small polynomials") {
  Expansion2 q(1, 1, 4, 4, Role::test);
  q.set(mi({2}), mi({0}), 1.0);
  q.set(mi({0}), mi({2}), 1.0);
  const Expansion2 lq = gross_test(q);
  CHECK(std::abs(lq.coefficient(mi({0}), mi({0})) - 4.0) < 1e-15);
  CHECK(lq.term_count() == 1);

  Expansion2 lin(2, 1, 4, 4, Role::test);
  lin.set(mi({1, 0}), mi({0}), 3.0);
  lin.set(mi({0, 0}), mi({1}), 2.0);
  CHECK(gross_test(lin).is_zero());

  // d^2/dx^2 x^4 = 12 x^2
  const Expansion2 l4 = gross_test(poly1({0, 0, 0, 0, 1}, 6));
  CHECK(max_abs_diff(l4, poly1({0, 0, 12}, 6)) < 1e-14);
}

TEST_CASE("Gross Laplacian against finite differences") {
  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d1 = 1 + trial % 2, d2 = trial % 3;
    const Expansion2 phi = random_expansion(rng, d1, d2, 5, 5, Role::test, 5, 5);
    const Point2 p = random_point(rng, d1, d2, 0.5);
    const Complex want = fd_laplacian(phi, p, 1e-3);
    CHECK(std::abs(evaluate(gross_test(phi), p) - want) < 1e-4 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("exponential vectors are eigenfunctions below the cutoff") {
  const std::vector<Complex> xi{1.0}, eta{2.0};
  const Expansion2 e = exponential_vector(xi, eta, 8, 8);
  const Expansion2 le = gross_test(e);
  CHECK(max_abs_diff(le, 5.0 * e, 6, 6) < 1e-13);
}

TEST_CASE("split parts and the Leibniz rule on tensor products") {
  Rng rng(37);
  const Expansion2 f = random_expansion(rng, 2, 0, 5, 0, Role::test, 5, 0);
  const Expansion2 g = random_expansion(rng, 1, 0, 5, 0, Role::test, 5, 0);
  const Expansion2 fg = tensor_product(f, g);
  const auto [l1, l2] = gross_split(fg);
  CHECK(max_abs_diff(l1, tensor_product(gross_test(f), g)) < 1e-12);
  CHECK(max_abs_diff(l2, tensor_product(f, gross_test(g))) < 1e-12);
  CHECK(max_abs_diff(l1 + l2, gross_test(fg)) < 1e-12);
  const auto [x2, zero] = gross_split(poly1({0, 0, 1}, 4));
  CHECK(std::abs(x2.coefficient(mi({0}), kNone) - 2.0) < 1e-15);
  CHECK(zero.is_zero());
}

TEST_CASE("distribution-test convolution") {
  Rng rng(41);
  const Expansion2 phi = random_expansion(rng, 2, 1, 5, 5, Role::test, 5, 5);
  const Expansion2 delta = Expansion2::unit(2, 1, 5, 5, Role::distribution);
  CHECK(max_abs_diff(convolve_dist_test(delta, phi), phi) == 0.0);
  CHECK(max_abs_diff(convolve_dist_test(trace_distribution(2, 1, 5, 5), phi), gross_test(phi)) == 0.0);

  // (Phi * phi)(z) = <<Phi, phi(. + z)>>
  for (int trial = 0; trial < 10; ++trial) {
    const Expansion2 big = random_expansion(rng, 2, 1, 5, 5, Role::distribution, 3, 3);
    const Point2 z = random_point(rng, 2, 1);
    const Complex want = dual_pair(big, translate(phi, z));
    CHECK(std::abs(evaluate(convolve_dist_test(big, phi), z) - want) < 1e-11 * std::max(1.0, std::abs(want)));
  }
  CHECK_THROWS_AS(convolve_dist_test(phi, phi), RoleError);
}

TEST_CASE("distribution-distribution convolution") {
  const Expansion2 t = trace_distribution(1, 1, 4, 4);
  const Expansion2 tt = convolve_dist_dist(t, t);
  const std::vector<Complex> xi{1.0}, eta{1.0};
  CHECK(std::abs(laplace(tt, xi, eta) - 4.0) < 1e-14);

  Rng rng(43);
  const Expansion2 a = random_expansion(rng, 2, 2, 6, 6, Role::distribution, 3, 3);
  const Expansion2 b = random_expansion(rng, 2, 2, 6, 6, Role::distribution, 2, 2);
  const Expansion2 c = random_expansion(rng, 2, 2, 6, 6, Role::distribution, 1, 1);
  const Expansion2 delta = Expansion2::unit(2, 2, 6, 6, Role::distribution);
  CHECK(max_abs_diff(convolve_dist_dist(delta, a), a) < 1e-15);
  CHECK(max_abs_diff(convolve_dist_dist(a, b), convolve_dist_dist(b, a)) < 1e-14);
  CHECK(max_abs_diff(convolve_dist_dist(convolve_dist_dist(a, b), c), convolve_dist_dist(a, convolve_dist_dist(b, c))) <
        1e-13);
  for (int trial = 0; trial < 5; ++trial) {
    const std::vector<Complex> x = random_vector(rng, 2), y = random_vector(rng, 2);
    CHECK(std::abs(laplace(convolve_dist_dist(a, b), x, y) - laplace(a, x, y) * laplace(b, x, y)) < 1e-11);
  }
}

TEST_CASE("Gross Laplacian on distributions") {
  const Expansion2 delta = Expansion2::unit(2, 1, 4, 4, Role::distribution);
  CHECK(max_abs_diff(gross_distribution(delta), trace_distribution(2, 1, 4, 4)) == 0.0);

  Rng rng(47);
  const Expansion2 psi = random_expansion(rng, 2, 1, 6, 6, Role::distribution, 4, 4);
  const Expansion2 phi = oracle::entire_scaled(random_expansion(rng, 2, 1, 6, 6, Role::test, 6, 6));
  const std::vector<Complex> xi = random_vector(rng, 2), eta = random_vector(rng, 1);
  const Complex q = oracle::dot(xi, xi) + oracle::dot(eta, eta);
  CHECK(std::abs(laplace(gross_distribution(psi), xi, eta) - q * laplace(psi, xi, eta)) < 1e-11);
  // adjoint pair
  CHECK(std::abs(dual_pair(gross_distribution(psi), phi) - dual_pair(psi, gross_test(phi))) < 1e-11);
}

TEST_CASE("truncated inputs lose exactness at the top") {
  const std::vector<Complex> xi{0.5};
  const Expansion2 e = exponential_vector(xi, {}, 6, 0);
  const Expansion2 le = gross_test(e);
  CHECK(le.truncated());
  CHECK(le.exact1() <= 4);
  CHECK(!gross_test(poly1({1, 2, 3}, 6)).truncated());
}
