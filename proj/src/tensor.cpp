#include "qgl/tensor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "qgl/errors.hpp"

namespace qgl {

MultiIndex::MultiIndex(std::vector<int> occupations) : occ_(std::move(occupations)) {
  for (int k : occ_) {
    if (k < 0) throw DomainError("MultiIndex: negative occupation");
    weight_ += k;
  }
}

MultiIndex MultiIndex::zero(std::size_t dim) { return MultiIndex(std::vector<int>(dim, 0)); }

MultiIndex MultiIndex::unit(std::size_t dim, std::size_t j, int count) {
  std::vector<int> occ(dim, 0);
  occ.at(j) = count;
  return MultiIndex(std::move(occ));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dim() != other.dim()) throw DimensionError("MultiIndex: dimension mismatch in +");
  MultiIndex r = *this;
  for (std::size_t j = 0; j < occ_.size(); ++j) r.occ_[j] += other.occ_[j];
  r.weight_ += other.weight_;
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (!contains(other)) throw DomainError("MultiIndex: difference would be negative");
  MultiIndex r = *this;
  for (std::size_t j = 0; j < occ_.size(); ++j) r.occ_[j] -= other.occ_[j];
  r.weight_ -= other.weight_;
  return r;
}

bool MultiIndex::contains(const MultiIndex& other) const {
  if (dim() != other.dim()) return false;
  for (std::size_t j = 0; j < occ_.size(); ++j)
    if (other.occ_[j] > occ_[j]) return false;
  return true;
}

namespace {

void fill_indices(std::vector<int>& cur, std::size_t pos, int remaining,
                  std::vector<MultiIndex>& out) {
  if (pos + 1 == cur.size()) {
    cur[pos] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int k = 0; k <= remaining; ++k) {
    cur[pos] = k;
    fill_indices(cur, pos + 1, remaining - k, out);
  }
}

// Iterates all index tuples of length n over {0..d-1}.
template <class F>
void for_each_tuple(std::size_t dim, int degree, F&& f) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(degree), 0);
  if (degree > 0 && dim == 0) return;
  while (true) {
    f(std::span<const std::size_t>(idx));
    int k = degree - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == dim) {
      idx[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
}

double weight_of(const MultiIndex& a) { return static_cast<double>(multinomial_weight(a)); }

}  // namespace

std::vector<MultiIndex> multi_indices(std::size_t dim, int weight) {
  std::vector<MultiIndex> out;
  if (weight < 0) return out;
  if (dim == 0) {
    if (weight == 0) out.emplace_back(std::vector<int>{});
    return out;
  }
  std::vector<int> cur(dim, 0);
  fill_indices(cur, 0, weight, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t multinomial_weight(const MultiIndex& alpha) {
  std::uint64_t r = 1;
  int running = 0;
  for (int k : alpha.occupations()) {
    running += k;
    r *= binomial(running, k);
  }
  return r;
}

double factorial(int n) {
  static const std::array<double, 171> table = [] {
    std::array<double, 171> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  if (n < 0 || n > 170) throw DomainError("factorial: argument out of range");
  return table[static_cast<std::size_t>(n)];
}

Complex monomial(std::span<const Complex> z, const MultiIndex& alpha) {
  if (z.size() != alpha.dim()) throw DimensionError("monomial: point/index dimension mismatch");
  Complex r = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j)
    for (int k = 0; k < alpha[j]; ++k) r *= z[j];
  return r;
}

// --- SymTensor --------------------------------------------------------------

SymTensor::SymTensor(std::size_t dim, int degree) : dim_(dim), degree_(degree) {
  if (degree < 0) throw DomainError("SymTensor: negative degree");
  if (dim == 0 && degree != 0) throw DimensionError("SymTensor: dimension 0 only carries degree 0");
}

SymTensor SymTensor::scalar(std::size_t dim, Complex value) {
  SymTensor t(dim, 0);
  t.set(MultiIndex::zero(dim), value);
  return t;
}

SymTensor SymTensor::power(std::span<const Complex> x, int degree) {
  SymTensor t(x.size(), degree);
  for (const auto& a : multi_indices(x.size(), degree)) t.set(a, monomial(x, a));
  return t;
}

void SymTensor::check_key(const MultiIndex& alpha) const {
  if (alpha.dim() != dim_ || alpha.weight() != degree_)
    throw DimensionError("SymTensor: key of dim " + std::to_string(alpha.dim()) + ", weight " +
                         std::to_string(alpha.weight()) + " does not fit tensor of dim " +
                         std::to_string(dim_) + ", degree " + std::to_string(degree_));
}

Complex SymTensor::at(const MultiIndex& alpha) const {
  auto it = entries_.find(alpha);
  return it == entries_.end() ? Complex{} : it->second;
}

void SymTensor::set(const MultiIndex& alpha, Complex value) {
  check_key(alpha);
  if (value == Complex{})
    entries_.erase(alpha);
  else
    entries_[alpha] = value;
}

void SymTensor::add(const MultiIndex& alpha, Complex value) {
  check_key(alpha);
  if (value == Complex{}) return;
  auto [it, inserted] = entries_.try_emplace(alpha, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex{}) entries_.erase(it);
  }
}

SymTensor& SymTensor::operator+=(const SymTensor& other) {
  if (other.dim_ != dim_ || other.degree_ != degree_) throw DimensionError("SymTensor: shape mismatch in +");
  for (const auto& [k, v] : other.entries_) add(k, v);
  return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& other) {
  if (other.dim_ != dim_ || other.degree_ != degree_) throw DimensionError("SymTensor: shape mismatch in -");
  for (const auto& [k, v] : other.entries_) add(k, -v);
  return *this;
}

SymTensor& SymTensor::operator*=(Complex c) {
  if (c == Complex{}) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) v *= c;
  return *this;
}

SymTensor SymTensor::pruned(double threshold) const {
  SymTensor r(dim_, degree_);
  for (const auto& [k, v] : entries_)
    if (std::abs(v) > threshold) r.entries_.emplace_hint(r.entries_.end(), k, v);
  return r;
}

// --- DenseTensor ------------------------------------------------------------

DenseTensor::DenseTensor(std::size_t d, int n) : dim(d), degree(n) {
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) size *= d;
  data.assign(size, Complex{});
}

std::size_t DenseTensor::flat(std::span<const std::size_t> index) const {
  if (index.size() != static_cast<std::size_t>(degree)) throw DimensionError("DenseTensor: index length");
  std::size_t f = 0;
  for (std::size_t i : index) {
    if (i >= dim) throw DimensionError("DenseTensor: index out of range");
    f = f * dim + i;
  }
  return f;
}

Complex& DenseTensor::operator[](std::span<const std::size_t> index) { return data[flat(index)]; }
Complex DenseTensor::operator[](std::span<const std::size_t> index) const { return data[flat(index)]; }

MultiIndex occupation_of(std::span<const std::size_t> index, std::size_t dim) {
  std::vector<int> occ(dim, 0);
  for (std::size_t i : index) occ.at(i) += 1;
  return MultiIndex(std::move(occ));
}

SymTensor symmetrize(const DenseTensor& t) {
  std::map<MultiIndex, Complex> sums;
  for_each_tuple(t.dim, t.degree, [&](std::span<const std::size_t> idx) {
    sums[occupation_of(idx, t.dim)] += t[idx];
  });
  SymTensor r(t.dim, t.degree);
  for (const auto& [a, s] : sums) r.set(a, s / weight_of(a));
  return r;
}

DenseTensor to_dense(const SymTensor& t) {
  DenseTensor d(t.dim(), t.degree());
  for_each_tuple(t.dim(), t.degree(), [&](std::span<const std::size_t> idx) {
    d[idx] = t.at(occupation_of(idx, t.dim()));
  });
  return d;
}

DenseTensor dense_contract(const DenseTensor& a, const DenseTensor& b) {
  if (a.dim != b.dim) throw DimensionError("dense_contract: dimension mismatch");
  if (a.degree > b.degree) throw DimensionError("dense_contract: first tensor has larger degree");
  DenseTensor r(a.dim, b.degree - a.degree);
  std::vector<std::size_t> full(static_cast<std::size_t>(b.degree));
  for_each_tuple(r.dim, r.degree, [&](std::span<const std::size_t> j) {
    Complex s{};
    for_each_tuple(a.dim, a.degree, [&](std::span<const std::size_t> i) {
      std::copy(i.begin(), i.end(), full.begin());
      std::copy(j.begin(), j.end(), full.begin() + a.degree);
      s += a[i] * b[full];
    });
    r[j] = s;
  });
  return r;
}

// --- products and contractions ---------------------------------------------
//
// Products are formed on orbit sums p_alpha = mult(alpha) * T_alpha, where
// Sym(A (x) B) becomes plain convolution of the p-coefficients.

SymTensor sym_product(const SymTensor& a, const SymTensor& b, double prune) {
  if (a.dim() != b.dim()) throw DimensionError("sym_product: dimension mismatch");
  std::map<MultiIndex, Complex> acc;
  for (const auto& [ka, va] : a.entries()) {
    const Complex pa = weight_of(ka) * va;
    for (const auto& [kb, vb] : b.entries()) acc[ka + kb] += pa * (weight_of(kb) * vb);
  }
  SymTensor r(a.dim(), a.degree() + b.degree());
  for (const auto& [k, p] : acc) {
    const Complex v = p / weight_of(k);
    if (std::abs(v) > prune) r.set(k, v);
  }
  return r;
}

SymTensor contract_full(const SymTensor& a, const SymTensor& b, double prune) {
  if (a.dim() != b.dim()) throw DimensionError("contract_full: dimension mismatch");
  if (a.degree() > b.degree()) throw DimensionError("contract_full: first tensor has larger degree");
  std::map<MultiIndex, Complex> acc;
  for (const auto& [kb, vb] : b.entries()) {
    for (const auto& [ka, va] : a.entries()) {
      if (!kb.contains(ka)) continue;
      acc[kb - ka] += weight_of(ka) * va * vb;
    }
  }
  SymTensor r(a.dim(), b.degree() - a.degree());
  for (const auto& [k, v] : acc)
    if (std::abs(v) > prune) r.set(k, v);
  return r;
}

Complex pairing(const SymTensor& a, const SymTensor& b) {
  if (a.degree() != b.degree()) throw DimensionError("pairing: degree mismatch");
  return contract_full(a, b).at(MultiIndex::zero(a.dim()));
}

SymTensor trace_tensor(std::size_t dim) {
  if (dim == 0) throw DimensionError("trace_tensor: dimension must be >= 1");
  SymTensor t(dim, 2);
  for (std::size_t j = 0; j < dim; ++j) t.set(MultiIndex::unit(dim, j, 2), 1.0);
  return t;
}

// --- BiTensor ---------------------------------------------------------------

BiTensor::BiTensor(std::size_t dim1, std::size_t dim2, int degree1, int degree2)
    : dim1_(dim1), dim2_(dim2), degree1_(degree1), degree2_(degree2) {
  if (degree1 < 0 || degree2 < 0) throw DomainError("BiTensor: negative degree");
  if ((dim1 == 0 && degree1 != 0) || (dim2 == 0 && degree2 != 0))
    throw DimensionError("BiTensor: dimension 0 only carries degree 0");
}

void BiTensor::check_key(const MultiIndex& alpha, const MultiIndex& beta) const {
  if (alpha.dim() != dim1_ || beta.dim() != dim2_ || alpha.weight() != degree1_ ||
      beta.weight() != degree2_)
    throw DimensionError("BiTensor: key does not fit block (" + std::to_string(degree1_) + "," +
                         std::to_string(degree2_) + ")");
}

Complex BiTensor::at(const MultiIndex& alpha, const MultiIndex& beta) const {
  auto it = entries_.find(Key{alpha, beta});
  return it == entries_.end() ? Complex{} : it->second;
}

void BiTensor::set(const MultiIndex& alpha, const MultiIndex& beta, Complex value) {
  check_key(alpha, beta);
  if (value == Complex{})
    entries_.erase(Key{alpha, beta});
  else
    entries_[Key{alpha, beta}] = value;
}

void BiTensor::add(const MultiIndex& alpha, const MultiIndex& beta, Complex value) {
  check_key(alpha, beta);
  if (value == Complex{}) return;
  auto [it, inserted] = entries_.try_emplace(Key{alpha, beta}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == Complex{}) entries_.erase(it);
  }
}

BiTensor& BiTensor::operator+=(const BiTensor& other) {
  if (other.dim1_ != dim1_ || other.dim2_ != dim2_ || other.degree1_ != degree1_ ||
      other.degree2_ != degree2_)
    throw DimensionError("BiTensor: shape mismatch in +");
  for (const auto& [k, v] : other.entries_) add(k.first, k.second, v);
  return *this;
}

BiTensor& BiTensor::operator*=(Complex c) {
  if (c == Complex{}) {
    entries_.clear();
    return *this;
  }
  for (auto& [k, v] : entries_) v *= c;
  return *this;
}

BiTensor BiTensor::pruned(double threshold) const {
  BiTensor r(dim1_, dim2_, degree1_, degree2_);
  for (const auto& [k, v] : entries_)
    if (std::abs(v) > threshold) r.entries_.emplace_hint(r.entries_.end(), k, v);
  return r;
}

BiTensor outer(const SymTensor& a, const SymTensor& b) {
  BiTensor r(a.dim(), b.dim(), a.degree(), b.degree());
  for (const auto& [ka, va] : a.entries())
    for (const auto& [kb, vb] : b.entries()) r.set(ka, kb, va * vb);
  return r;
}

BiTensor bi_sym_product(const BiTensor& a, const BiTensor& b, double prune) {
  if (a.dim1() != b.dim1() || a.dim2() != b.dim2()) throw DimensionError("bi_sym_product: dimension mismatch");
  std::map<BiTensor::Key, Complex> acc;
  std::vector<std::pair<const BiTensor::Key*, Complex>> pb;
  pb.reserve(b.entries().size());
  for (const auto& [kb, vb] : b.entries())
    pb.emplace_back(&kb, weight_of(kb.first) * weight_of(kb.second) * vb);
  for (const auto& [ka, va] : a.entries()) {
    const Complex pa = weight_of(ka.first) * weight_of(ka.second) * va;
    for (const auto& [kb, p] : pb) acc[BiTensor::Key{ka.first + kb->first, ka.second + kb->second}] += pa * p;
  }
  BiTensor r(a.dim1(), a.dim2(), a.degree1() + b.degree1(), a.degree2() + b.degree2());
  for (const auto& [k, p] : acc) {
    const Complex v = p / (weight_of(k.first) * weight_of(k.second));
    if (std::abs(v) > prune) r.set(k.first, k.second, v);
  }
  return r;
}

BiTensor bi_contract(const BiTensor& a, const BiTensor& b, double prune) {
  if (a.dim1() != b.dim1() || a.dim2() != b.dim2()) throw DimensionError("bi_contract: dimension mismatch");
  if (a.degree1() > b.degree1() || a.degree2() > b.degree2())
    throw DimensionError("bi_contract: first tensor has larger degree");
  std::map<BiTensor::Key, Complex> acc;
  for (const auto& [kb, vb] : b.entries()) {
    for (const auto& [ka, va] : a.entries()) {
      if (!kb.first.contains(ka.first) || !kb.second.contains(ka.second)) continue;
      acc[BiTensor::Key{kb.first - ka.first, kb.second - ka.second}] +=
          weight_of(ka.first) * weight_of(ka.second) * va * vb;
    }
  }
  BiTensor r(a.dim1(), a.dim2(), b.degree1() - a.degree1(), b.degree2() - a.degree2());
  for (const auto& [k, v] : acc)
    if (std::abs(v) > prune) r.set(k.first, k.second, v);
  return r;
}

Complex bi_pairing(const BiTensor& a, const BiTensor& b) {
  if (a.degree1() != b.degree1() || a.degree2() != b.degree2()) throw DimensionError("bi_pairing: degree mismatch");
  if (a.dim1() != b.dim1() || a.dim2() != b.dim2()) throw DimensionError("bi_pairing: dimension mismatch");
  Complex s{};
  const auto& small = a.entries().size() <= b.entries().size() ? a : b;
  const auto& large = &small == &a ? b : a;
  for (const auto& [k, v] : small.entries()) {
    auto it = large.entries().find(k);
    if (it != large.entries().end()) s += weight_of(k.first) * weight_of(k.second) * v * it->second;
  }
  return s;
}

SymTensor contract_first(const SymTensor& a, const BiTensor& b) {
  if (a.dim() != b.dim1()) throw DimensionError("contract_first: dimension mismatch");
  if (a.degree() != b.degree1()) throw DimensionError("contract_first: degree mismatch");
  SymTensor r(b.dim2(), b.degree2());
  for (const auto& [kb, vb] : b.entries()) {
    const Complex va = a.at(kb.first);
    if (va != Complex{}) r.add(kb.second, weight_of(kb.first) * va * vb);
  }
  return r;
}

}  // namespace qgl
