#pragma once

// Symmetric tensors over C^d in occupation-number storage.
//
// A symmetric tensor of degree n is constant on permutation orbits of its
// index tuples, so it is stored once per orbit, keyed by the occupation
// vector alpha (alpha_j = how many times index j occurs). Every routine that
// sums over full index tuples carries the orbit size n!/prod(alpha_j!) as an
// explicit weight. All pairings are C-bilinear: nothing is conjugated.

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace qgl {

using Complex = std::complex<double>;

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> occupations);

  static MultiIndex zero(std::size_t dim);
  // count * e_j
  static MultiIndex unit(std::size_t dim, std::size_t j, int count = 1);

  std::size_t dim() const { return occ_.size(); }
  int weight() const { return weight_; }
  int operator[](std::size_t j) const { return occ_[j]; }
  const std::vector<int>& occupations() const { return occ_; }

  MultiIndex operator+(const MultiIndex& other) const;
  // Componentwise difference; requires other <= *this.
  MultiIndex operator-(const MultiIndex& other) const;
  // True when other <= *this componentwise.
  bool contains(const MultiIndex& other) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.occ_ == b.occ_; }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
    return a.occ_ <=> b.occ_;
  }

 private:
  std::vector<int> occ_;
  int weight_ = 0;
};

// All occupation vectors of the given dimension and weight, in increasing order.
std::vector<MultiIndex> multi_indices(std::size_t dim, int weight);

// n! / prod(alpha_j!), the number of index tuples with occupation alpha.
std::uint64_t multinomial_weight(const MultiIndex& alpha);

std::uint64_t binomial(int n, int k);
double factorial(int n);

// prod_j z_j^{alpha_j}
Complex monomial(std::span<const Complex> z, const MultiIndex& alpha);

class SymTensor {
 public:
  using Entries = std::map<MultiIndex, Complex>;

  SymTensor() = default;
  SymTensor(std::size_t dim, int degree);

  static SymTensor scalar(std::size_t dim, Complex value);
  // x^{\otimes n}: the entry at alpha is prod x_j^{alpha_j}.
  static SymTensor power(std::span<const Complex> x, int degree);

  std::size_t dim() const { return dim_; }
  int degree() const { return degree_; }
  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Complex at(const MultiIndex& alpha) const;
  void set(const MultiIndex& alpha, Complex value);
  void add(const MultiIndex& alpha, Complex value);

  SymTensor& operator+=(const SymTensor& other);
  SymTensor& operator-=(const SymTensor& other);
  SymTensor& operator*=(Complex c);
  friend SymTensor operator+(SymTensor a, const SymTensor& b) { return a += b; }
  friend SymTensor operator-(SymTensor a, const SymTensor& b) { return a -= b; }
  friend SymTensor operator*(Complex c, SymTensor a) { return a *= c; }

  // Drops entries with |value| <= threshold.
  SymTensor pruned(double threshold) const;

 private:
  void check_key(const MultiIndex& alpha) const;

  std::size_t dim_ = 0;
  int degree_ = 0;
  Entries entries_;
};

// Full (non-symmetric) tensor with d^n entries, lexicographic in the index tuple.
// Used as an independent oracle representation.
struct DenseTensor {
  std::size_t dim = 0;
  int degree = 0;
  std::vector<Complex> data;

  DenseTensor() = default;
  DenseTensor(std::size_t dim, int degree);

  Complex& operator[](std::span<const std::size_t> index);
  Complex operator[](std::span<const std::size_t> index) const;
  std::size_t flat(std::span<const std::size_t> index) const;
};

// Occupation vector of a full index tuple.
MultiIndex occupation_of(std::span<const std::size_t> index, std::size_t dim);

SymTensor symmetrize(const DenseTensor& t);
DenseTensor to_dense(const SymTensor& t);

// Brute-force oracle: R[j] = sum_i A[i] B[i, j] over full index tuples.
DenseTensor dense_contract(const DenseTensor& a, const DenseTensor& b);

// Sym(A (x) B).
SymTensor sym_product(const SymTensor& a, const SymTensor& b, double prune = 0.0);

// R_gamma = sum_{|mu| = deg A} mult(mu) A_mu B_{mu+gamma}; degree deg B - deg A.
SymTensor contract_full(const SymTensor& a, const SymTensor& b, double prune = 0.0);

// Full bilinear pairing of equal-degree tensors.
Complex pairing(const SymTensor& a, const SymTensor& b);

// tau = sum_j e_j (x) e_j
SymTensor trace_tensor(std::size_t dim);

// A tensor that is symmetric separately in two groups of slots, the
// coefficient of x^{(x)n} (x) y^{(x)m} in a two-variable expansion. With
// dim2 == 0 it degenerates to a SymTensor.
class BiTensor {
 public:
  using Key = std::pair<MultiIndex, MultiIndex>;
  using Entries = std::map<Key, Complex>;

  BiTensor() = default;
  BiTensor(std::size_t dim1, std::size_t dim2, int degree1, int degree2);

  std::size_t dim1() const { return dim1_; }
  std::size_t dim2() const { return dim2_; }
  int degree1() const { return degree1_; }
  int degree2() const { return degree2_; }
  const Entries& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Complex at(const MultiIndex& alpha, const MultiIndex& beta) const;
  void set(const MultiIndex& alpha, const MultiIndex& beta, Complex value);
  void add(const MultiIndex& alpha, const MultiIndex& beta, Complex value);

  BiTensor& operator+=(const BiTensor& other);
  BiTensor& operator*=(Complex c);

  BiTensor pruned(double threshold) const;

 private:
  void check_key(const MultiIndex& alpha, const MultiIndex& beta) const;

  std::size_t dim1_ = 0;
  std::size_t dim2_ = 0;
  int degree1_ = 0;
  int degree2_ = 0;
  Entries entries_;
};

// A (x) B with A over the first variable and B over the second.
BiTensor outer(const SymTensor& a, const SymTensor& b);

// Per-variable symmetrized product Sym1 (x) Sym2 (A (x) B).
BiTensor bi_sym_product(const BiTensor& a, const BiTensor& b, double prune = 0.0);

// Full contraction of A against B in both variables; A's degrees must not
// exceed B's.
BiTensor bi_contract(const BiTensor& a, const BiTensor& b, double prune = 0.0);

// Full bilinear pairing of equal-shape bi-tensors.
Complex bi_pairing(const BiTensor& a, const BiTensor& b);

// Contracts A against the first variable of B only, with A.degree == B.degree1;
// the result lives on the second variable.
SymTensor contract_first(const SymTensor& a, const BiTensor& b);

}  // namespace qgl
