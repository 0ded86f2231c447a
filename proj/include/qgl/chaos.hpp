#pragma once

// Truncated two-variable chaos (Taylor) expansions.
//
// A test function is phi(x, y) = sum_{n,m} <x^{(x)n} (x) y^{(x)m}, phi_{n,m}>;
// a distribution Phi is represented through the coefficients of its Laplace
// transform, L Phi(xi, eta) = sum_{n,m} <Phi_{n,m}, xi^{(x)n} (x) eta^{(x)m}>.
// Both use the same storage; the role tag keeps them apart. The duality is
//
//   <<Phi, phi>> = sum_{n,m} n! m! <Phi_{n,m}, phi_{n,m}>,
//
// which makes <<Phi, e_(xi,eta)>> = L Phi(xi, eta).
//
// dim2 == 0 is the one-variable theory.

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qgl/tensor.hpp"

namespace qgl {

enum class Role { test, distribution };

const char* to_string(Role role);

class Expansion2 {
 public:
  using BlockKey = std::pair<int, int>;
  using Blocks = std::map<BlockKey, BiTensor>;

  Expansion2() = default;
  Expansion2(std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2, Role role);

  static Expansion2 one_variable(std::size_t dim, int cutoff, Role role);
  // The constant 1 (role test) or delta_0 (role distribution).
  static Expansion2 unit(std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2, Role role);

  std::size_t dim1() const { return dim1_; }
  std::size_t dim2() const { return dim2_; }
  int cutoff1() const { return cutoff1_; }
  int cutoff2() const { return cutoff2_; }
  Role role() const { return role_; }
  bool one_variable() const { return dim2_ == 0; }

  // True when the object is a truncation of something with nonzero terms
  // above the cutoffs (so degree-lowering operations lose exactness).
  bool truncated() const { return truncated_; }
  // Coefficients at (n, m) with n <= exact1() and m <= exact2() are exact.
  int exact1() const { return exact1_; }
  int exact2() const { return exact2_; }
  void mark_truncated(int exact1, int exact2);

  const Blocks& blocks() const { return blocks_; }
  const BiTensor* block(int n, int m) const;

  Complex coefficient(const MultiIndex& alpha, const MultiIndex& beta) const;
  void set(const MultiIndex& alpha, const MultiIndex& beta, Complex value);
  void add(const MultiIndex& alpha, const MultiIndex& beta, Complex value);
  // Accumulates a block; returns false (and flags truncation when the block
  // is nonzero) if its degrees exceed the cutoffs.
  bool add_block(const BiTensor& block);

  std::size_t term_count() const;
  int max_degree1() const;
  int max_degree2() const;
  bool is_zero() const { return blocks_.empty(); }

  Expansion2 with_role(Role role) const;
  // Keeps only blocks with n <= max1 and m <= max2.
  Expansion2 restricted(int max1, int max2) const;
  Expansion2 pruned(double threshold) const;

  Expansion2& operator+=(const Expansion2& other);
  Expansion2& operator-=(const Expansion2& other);
  Expansion2& operator*=(Complex c);
  friend Expansion2 operator+(Expansion2 a, const Expansion2& b) { return a += b; }
  friend Expansion2 operator-(Expansion2 a, const Expansion2& b) { return a -= b; }
  friend Expansion2 operator*(Complex c, Expansion2 a) { return a *= c; }

 private:
  void check_key(const MultiIndex& alpha, const MultiIndex& beta) const;
  void check_same_dims(const Expansion2& other, const char* op) const;

  std::size_t dim1_ = 0;
  std::size_t dim2_ = 0;
  int cutoff1_ = 0;
  int cutoff2_ = 0;
  Role role_ = Role::test;
  bool truncated_ = false;
  int exact1_ = 0;
  int exact2_ = 0;
  Blocks blocks_;
};

struct Point2 {
  std::vector<Complex> z;
  std::vector<Complex> t;
};

Point2 operator+(const Point2& a, const Point2& b);

// Largest |difference| over all coefficients, optionally restricted to
// blocks (n, m) with n <= max1 and m <= max2.
double max_abs_diff(const Expansion2& a, const Expansion2& b, int max1 = -1, int max2 = -1);
double max_abs_coefficient(const Expansion2& a);

Complex evaluate(const Expansion2& phi, const Point2& p);

Expansion2 exponential_vector(std::span<const Complex> xi, std::span<const Complex> eta, int cutoff1,
                              int cutoff2);

// (tau_s phi)(x, y) = phi(x + s.z, y + s.t)
Expansion2 translate(const Expansion2& phi, const Point2& shift);

Complex dual_pair(const Expansion2& distribution, const Expansion2& test);

Expansion2 pointwise_product(const Expansion2& f, const Expansion2& g);

Complex laplace(const Expansion2& distribution, std::span<const Complex> xi,
                std::span<const Complex> eta);

// (f (x) g)(x, y) = f(x) g(y) for one-variable f, g with the same role.
Expansion2 tensor_product(const Expansion2& f, const Expansion2& g);

namespace detail {
// Role-agnostic kernels shared by the public operations.
Complex polynomial_value(const Expansion2& e, std::span<const Complex> z, std::span<const Complex> t);
Expansion2 translate_coefficients(const Expansion2& e, const Point2& shift);
Expansion2 product_coefficients(const Expansion2& f, const Expansion2& g, Role role);
}  // namespace detail

}  // namespace qgl
