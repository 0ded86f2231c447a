#include "qgl/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qgl/errors.hpp"

namespace qgl {

const char* to_string(Role role) { return role == Role::test ? "test" : "distribution"; }

namespace {

void require_role(const Expansion2& e, Role role, const char* op) {
  if (e.role() != role)
    throw RoleError(std::string(op) + ": expected a " + to_string(role) + " expansion, got " +
                    to_string(e.role()));
}

bool is_zero_vector(std::span<const Complex> v) {
  return std::all_of(v.begin(), v.end(), [](Complex c) { return c == Complex{}; });
}

// powers[j][k] = z_j^k for k <= max_degree
std::vector<std::vector<Complex>> power_table(std::span<const Complex> z, int max_degree) {
  std::vector<std::vector<Complex>> table(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    auto& row = table[j];
    row.resize(static_cast<std::size_t>(std::max(max_degree, 0)) + 1);
    row[0] = 1.0;
    for (std::size_t k = 1; k < row.size(); ++k) row[k] = row[k - 1] * z[j];
  }
  return table;
}

Complex table_monomial(const std::vector<std::vector<Complex>>& table, const MultiIndex& a) {
  Complex r = 1.0;
  for (std::size_t j = 0; j < table.size(); ++j) r *= table[j][static_cast<std::size_t>(a[j])];
  return r;
}

}  // namespace

// --- Expansion2 -------------------------------------------------------------

Expansion2::Expansion2(std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2, Role role)
    : dim1_(dim1), dim2_(dim2), cutoff1_(cutoff1), cutoff2_(dim2 == 0 ? 0 : cutoff2), role_(role) {
  if (dim1 == 0) throw DimensionError("Expansion2: dim1 must be >= 1");
  if (cutoff1 < 0 || cutoff2 < 0) throw DomainError("Expansion2: negative cutoff");
  exact1_ = cutoff1_;
  exact2_ = cutoff2_;
}

Expansion2 Expansion2::one_variable(std::size_t dim, int cutoff, Role role) {
  return Expansion2(dim, 0, cutoff, 0, role);
}

Expansion2 Expansion2::unit(std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2, Role role) {
  Expansion2 e(dim1, dim2, cutoff1, cutoff2, role);
  e.set(MultiIndex::zero(dim1), MultiIndex::zero(dim2), 1.0);
  return e;
}

void Expansion2::mark_truncated(int exact1, int exact2) {
  truncated_ = true;
  exact1_ = std::min(exact1_, exact1);
  exact2_ = std::min(exact2_, exact2);
}

const BiTensor* Expansion2::block(int n, int m) const {
  auto it = blocks_.find({n, m});
  return it == blocks_.end() ? nullptr : &it->second;
}

void Expansion2::check_key(const MultiIndex& alpha, const MultiIndex& beta) const {
  if (alpha.dim() != dim1_ || beta.dim() != dim2_) throw DimensionError("Expansion2: index dimension mismatch");
  if (alpha.weight() > cutoff1_ || beta.weight() > cutoff2_)
    throw DimensionError("Expansion2: index degree (" + std::to_string(alpha.weight()) + "," +
                         std::to_string(beta.weight()) + ") exceeds cutoffs (" + std::to_string(cutoff1_) +
                         "," + std::to_string(cutoff2_) + ")");
}

Complex Expansion2::coefficient(const MultiIndex& alpha, const MultiIndex& beta) const {
  const BiTensor* b = block(alpha.weight(), beta.weight());
  return b ? b->at(alpha, beta) : Complex{};
}

void Expansion2::set(const MultiIndex& alpha, const MultiIndex& beta, Complex value) {
  check_key(alpha, beta);
  const BlockKey key{alpha.weight(), beta.weight()};
  auto it = blocks_.find(key);
  if (it == blocks_.end()) {
    if (value == Complex{}) return;
    it = blocks_.emplace(key, BiTensor(dim1_, dim2_, key.first, key.second)).first;
  }
  it->second.set(alpha, beta, value);
  if (it->second.empty()) blocks_.erase(it);
}

void Expansion2::add(const MultiIndex& alpha, const MultiIndex& beta, Complex value) {
  set(alpha, beta, coefficient(alpha, beta) + value);
}

bool Expansion2::add_block(const BiTensor& b) {
  if (b.dim1() != dim1_ || b.dim2() != dim2_) throw DimensionError("Expansion2: block dimension mismatch");
  if (b.degree1() > cutoff1_ || b.degree2() > cutoff2_) {
    if (!b.empty()) truncated_ = true;
    return false;
  }
  if (b.empty()) return true;
  const BlockKey key{b.degree1(), b.degree2()};
  auto it = blocks_.find(key);
  if (it == blocks_.end()) {
    blocks_.emplace(key, b);
  } else {
    it->second += b;
    if (it->second.empty()) blocks_.erase(it);
  }
  return true;
}

std::size_t Expansion2::term_count() const {
  std::size_t n = 0;
  for (const auto& [k, b] : blocks_) n += b.entries().size();
  return n;
}

int Expansion2::max_degree1() const {
  int d = 0;
  for (const auto& [k, b] : blocks_) d = std::max(d, k.first);
  return d;
}

int Expansion2::max_degree2() const {
  int d = 0;
  for (const auto& [k, b] : blocks_) d = std::max(d, k.second);
  return d;
}

Expansion2 Expansion2::with_role(Role role) const {
  Expansion2 r = *this;
  r.role_ = role;
  return r;
}

Expansion2 Expansion2::restricted(int max1, int max2) const {
  Expansion2 r(dim1_, dim2_, std::min(cutoff1_, max1), std::min(cutoff2_, std::max(max2, 0)), role_);
  r.truncated_ = truncated_;
  r.exact1_ = std::min(exact1_, r.cutoff1_);
  r.exact2_ = std::min(exact2_, r.cutoff2_);
  for (const auto& [k, b] : blocks_) r.add_block(b);
  return r;
}

Expansion2 Expansion2::pruned(double threshold) const {
  Expansion2 r = *this;
  r.blocks_.clear();
  for (const auto& [k, b] : blocks_) {
    BiTensor p = b.pruned(threshold);
    if (!p.empty()) r.blocks_.emplace(k, std::move(p));
  }
  return r;
}

void Expansion2::check_same_dims(const Expansion2& other, const char* op) const {
  if (dim1_ != other.dim1_ || dim2_ != other.dim2_)
    throw DimensionError(std::string(op) + ": dimension mismatch");
}

Expansion2& Expansion2::operator+=(const Expansion2& other) {
  check_same_dims(other, "Expansion2 +");
  if (role_ != other.role_) throw RoleError("Expansion2 +: role mismatch");
  cutoff1_ = std::max(cutoff1_, other.cutoff1_);
  cutoff2_ = std::max(cutoff2_, other.cutoff2_);
  if (!truncated_) {
    exact1_ = cutoff1_;
    exact2_ = cutoff2_;
  }
  if (other.truncated_) mark_truncated(other.exact1_, other.exact2_);
  for (const auto& [k, b] : other.blocks_) add_block(b);
  return *this;
}

Expansion2& Expansion2::operator-=(const Expansion2& other) {
  Expansion2 neg = other;
  neg *= -1.0;
  return *this += neg;
}

Expansion2& Expansion2::operator*=(Complex c) {
  if (c == Complex{}) {
    blocks_.clear();
    return *this;
  }
  for (auto& [k, b] : blocks_) b *= c;
  return *this;
}

Point2 operator+(const Point2& a, const Point2& b) {
  if (a.z.size() != b.z.size() || a.t.size() != b.t.size()) throw DimensionError("Point2 +: dimension mismatch");
  Point2 r = a;
  for (std::size_t j = 0; j < r.z.size(); ++j) r.z[j] += b.z[j];
  for (std::size_t j = 0; j < r.t.size(); ++j) r.t[j] += b.t[j];
  return r;
}

double max_abs_diff(const Expansion2& a, const Expansion2& b, int max1, int max2) {
  if (a.dim1() != b.dim1() || a.dim2() != b.dim2()) throw DimensionError("max_abs_diff: dimension mismatch");
  auto keep = [&](const Expansion2::BlockKey& k) {
    return (max1 < 0 || k.first <= max1) && (max2 < 0 || k.second <= max2);
  };
  double m = 0.0;
  for (const auto& [k, blk] : a.blocks()) {
    if (!keep(k)) continue;
    for (const auto& [key, v] : blk.entries())
      m = std::max(m, std::abs(v - b.coefficient(key.first, key.second)));
  }
  for (const auto& [k, blk] : b.blocks()) {
    if (!keep(k)) continue;
    const BiTensor* other = a.block(k.first, k.second);
    for (const auto& [key, v] : blk.entries())
      if (!other || other->entries().find(key) == other->entries().end()) m = std::max(m, std::abs(v));
  }
  return m;
}

double max_abs_coefficient(const Expansion2& a) {
  double m = 0.0;
  for (const auto& [k, blk] : a.blocks())
    for (const auto& [key, v] : blk.entries()) m = std::max(m, std::abs(v));
  return m;
}

// --- operations -------------------------------------------------------------

namespace detail {

Complex polynomial_value(const Expansion2& e, std::span<const Complex> z, std::span<const Complex> t) {
  if (z.size() != e.dim1() || t.size() != e.dim2()) throw DimensionError("point dimension does not match expansion");
  const auto pz = power_table(z, e.cutoff1());
  const auto pt = power_table(t, e.cutoff2());
  Complex sum{};
  for (const auto& [k, blk] : e.blocks()) {
    for (const auto& [key, v] : blk.entries()) {
      const double w = static_cast<double>(multinomial_weight(key.first)) *
                       static_cast<double>(multinomial_weight(key.second));
      sum += w * v * table_monomial(pz, key.first) * table_monomial(pt, key.second);
    }
  }
  return sum;
}

Expansion2 translate_coefficients(const Expansion2& e, const Point2& shift) {
  if (shift.z.size() != e.dim1() || shift.t.size() != e.dim2())
    throw DimensionError("translate: shift dimension does not match expansion");
  const bool zero_z = is_zero_vector(shift.z);
  const bool zero_t = is_zero_vector(shift.t);
  if (zero_z && zero_t) return e;

  std::vector<SymTensor> zpow, tpow;
  for (int i = 0; i <= e.cutoff1(); ++i) zpow.push_back(SymTensor::power(shift.z, i));
  for (int j = 0; j <= e.cutoff2(); ++j) tpow.push_back(SymTensor::power(shift.t, j));

  Expansion2 r(e.dim1(), e.dim2(), e.cutoff1(), e.cutoff2(), e.role());
  for (const auto& [k, blk] : e.blocks()) {
    const auto [big_n, big_m] = k;
    for (int i = 0; i <= big_n; ++i) {
      if (i > 0 && zero_z) break;
      for (int j = 0; j <= big_m; ++j) {
        if (j > 0 && zero_t) break;
        const double c = static_cast<double>(binomial(big_n, i)) * static_cast<double>(binomial(big_m, j));
        BiTensor part = bi_contract(outer(zpow[static_cast<std::size_t>(i)], tpow[static_cast<std::size_t>(j)]), blk);
        part *= c;
        r.add_block(part);
      }
    }
  }
  if (e.truncated()) r.mark_truncated(-1, -1);
  return r;
}

Expansion2 product_coefficients(const Expansion2& f, const Expansion2& g, Role role) {
  if (f.dim1() != g.dim1() || f.dim2() != g.dim2()) throw DimensionError("product: dimension mismatch");
  const int c1 = std::max(f.cutoff1(), g.cutoff1());
  const int c2 = std::max(f.cutoff2(), g.cutoff2());
  Expansion2 r(f.dim1(), f.dim2(), c1, c2, role);
  for (const auto& [kf, bf] : f.blocks()) {
    for (const auto& [kg, bg] : g.blocks()) {
      if (kf.first + kg.first > c1 || kf.second + kg.second > c2) {
        r.mark_truncated(c1, c2);
        continue;
      }
      r.add_block(bi_sym_product(bf, bg));
    }
  }
  if (f.truncated()) r.mark_truncated(f.exact1(), f.exact2());
  if (g.truncated()) r.mark_truncated(g.exact1(), g.exact2());
  return r;
}

}  // namespace detail

Complex evaluate(const Expansion2& phi, const Point2& p) {
  require_role(phi, Role::test, "evaluate");
  return detail::polynomial_value(phi, p.z, p.t);
}

Expansion2 exponential_vector(std::span<const Complex> xi, std::span<const Complex> eta, int cutoff1,
                              int cutoff2) {
  if (xi.empty()) throw DimensionError("exponential_vector: first variable needs dimension >= 1");
  Expansion2 e(xi.size(), eta.size(), cutoff1, cutoff2, Role::test);
  const int c2 = e.cutoff2();
  std::vector<SymTensor> xp, ep;
  for (int n = 0; n <= cutoff1; ++n) {
    SymTensor s = SymTensor::power(xi, n);
    s *= 1.0 / factorial(n);
    xp.push_back(std::move(s));
  }
  for (int m = 0; m <= c2; ++m) {
    SymTensor s = SymTensor::power(eta, m);
    s *= 1.0 / factorial(m);
    ep.push_back(std::move(s));
  }
  for (const auto& a : xp)
    for (const auto& b : ep) e.add_block(outer(a, b));
  if (!is_zero_vector(xi) || !is_zero_vector(eta)) e.mark_truncated(e.cutoff1(), c2);
  return e;
}

Expansion2 translate(const Expansion2& phi, const Point2& shift) {
  require_role(phi, Role::test, "translate");
  return detail::translate_coefficients(phi, shift);
}

Complex dual_pair(const Expansion2& distribution, const Expansion2& test) {
  require_role(distribution, Role::distribution, "dual_pair");
  require_role(test, Role::test, "dual_pair");
  if (distribution.dim1() != test.dim1() || distribution.dim2() != test.dim2())
    throw DimensionError("dual_pair: dimension mismatch");
  Complex s{};
  for (const auto& [k, blk] : distribution.blocks()) {
    const BiTensor* other = test.block(k.first, k.second);
    if (!other) continue;
    s += factorial(k.first) * factorial(k.second) * bi_pairing(blk, *other);
  }
  return s;
}

Expansion2 pointwise_product(const Expansion2& f, const Expansion2& g) {
  require_role(f, Role::test, "pointwise_product");
  require_role(g, Role::test, "pointwise_product");
  return detail::product_coefficients(f, g, Role::test);
}

Complex laplace(const Expansion2& distribution, std::span<const Complex> xi, std::span<const Complex> eta) {
  require_role(distribution, Role::distribution, "laplace");
  return detail::polynomial_value(distribution, xi, eta);
}

Expansion2 tensor_product(const Expansion2& f, const Expansion2& g) {
  if (!f.one_variable() || !g.one_variable()) throw DimensionError("tensor_product: both factors must be one-variable");
  if (f.role() != g.role()) throw RoleError("tensor_product: role mismatch");
  Expansion2 r(f.dim1(), g.dim1(), f.cutoff1(), g.cutoff1(), f.role());
  for (const auto& [kf, bf] : f.blocks()) {
    for (const auto& [kg, bg] : g.blocks()) {
      BiTensor b(f.dim1(), g.dim1(), kf.first, kg.first);
      for (const auto& [ka, va] : bf.entries())
        for (const auto& [kb, vb] : bg.entries()) b.set(ka.first, kb.first, va * vb);
      r.add_block(b);
    }
  }
  if (f.truncated()) r.mark_truncated(f.exact1(), r.cutoff2());
  if (g.truncated()) r.mark_truncated(r.cutoff1(), g.exact1());
  return r;
}

}  // namespace qgl
