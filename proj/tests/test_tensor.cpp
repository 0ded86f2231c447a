#include <doctest.h>

#include "oracles.hpp"
#include "qgl/errors.hpp"
#include "qgl/random.hpp"
#include "qgl/tensor.hpp"

using namespace qgl;

namespace {

using oracle::mi;

double max_diff(const SymTensor& a, const oracle::Full& b) {
  const oracle::Full fa = oracle::expand(a);
  double m = 0.0;
  for (std::size_t i = 0; i < fa.data.size(); ++i) m = std::max(m, std::abs(fa.data[i] - b.data[i]));
  return m;
}

}  // namespace

TEST_CASE("multinomial weight counts arrangements") {
  CHECK(multinomial_weight(mi({2, 0})) == 1);
  CHECK(multinomial_weight(mi({1, 1})) == 2);
  CHECK(multinomial_weight(mi({2, 1, 1})) == 12);
  for (std::size_t d = 1; d <= 3; ++d)
    for (int n = 0; n <= 5; ++n)
      for (const auto& a : multi_indices(d, n)) CHECK(multinomial_weight(a) == oracle::count_arrangements(a));
}

TEST_CASE("multi_indices enumerates every occupation once") {
  CHECK(multi_indices(3, 4).size() == 15);
  CHECK(multi_indices(1, 7).size() == 1);
  CHECK(multi_indices(2, 0).size() == 1);
  std::uint64_t total = 0;
  for (const auto& a : multi_indices(3, 4)) total += multinomial_weight(a);
  CHECK(total == 81);
}

TEST_CASE("symmetrize averages over slot permutations") {
  DenseTensor t(2, 2);
  const std::size_t i01[] = {0, 1};
  t[i01] = 1.0;
  const SymTensor s = symmetrize(t);
  CHECK(std::abs(s.at(mi({1, 1})) - 0.5) < 1e-15);
  CHECK(std::abs(s.at(mi({2, 0}))) == 0.0);

  Rng rng(7);
  const SymTensor r = random_sym_tensor(rng, 3, 3);
  const SymTensor again = symmetrize(to_dense(r));
  for (const auto& [a, v] : r.entries()) CHECK(std::abs(again.at(a) - v) < 1e-15);
}

TEST_CASE("sym_product matches the averaged outer product") {
  const SymTensor e1 = [] { SymTensor t(2, 1); t.set(mi({1, 0}), 1.0); return t; }();
  const SymTensor e2 = [] { SymTensor t(2, 1); t.set(mi({0, 1}), 1.0); return t; }();
  const SymTensor p = sym_product(e1, e2);
  CHECK(std::abs(p.at(mi({1, 1})) - 0.5) < 1e-15);

  const SymTensor two = SymTensor::scalar(2, 2.0);
  const SymTensor q = sym_product(two, e1);
  CHECK(std::abs(q.at(mi({1, 0})) - 2.0) < 1e-15);

  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const SymTensor a = random_sym_tensor(rng, d, 1 + trial % 2);
    const SymTensor b = random_sym_tensor(rng, d, 2);
    const SymTensor ab = sym_product(a, b);
    const SymTensor ba = sym_product(b, a);
    for (const auto& g : multi_indices(d, ab.degree())) {
      CHECK(std::abs(ab.at(g) - oracle::sym_outer_at(a, b, g)) < 1e-13);
      CHECK(std::abs(ab.at(g) - ba.at(g)) < 1e-14);
    }
  }
}

TEST_CASE("contract_full against the full-tuple oracle") {
  const std::vector<Complex> xi{1.0, 2.0};
  const SymTensor x1 = SymTensor::power(xi, 1);
  const SymTensor x3 = SymTensor::power(xi, 3);
  const SymTensor r = contract_full(x1, x3);
  CHECK(r.degree() == 2);
  CHECK(std::abs(r.at(mi({2, 0})) - 5.0) < 1e-14);
  CHECK(std::abs(r.at(mi({1, 1})) - 10.0) < 1e-14);

  const SymTensor tau = trace_tensor(2);
  const std::vector<Complex> e1{1.0, 0.0};
  CHECK(std::abs(contract_full(tau, SymTensor::power(e1, 2)).at(mi({0, 0})) - 1.0) < 1e-15);

  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const int nb = 1 + trial % 5;
    const int na = trial % (nb + 1);
    const SymTensor a = random_sym_tensor(rng, d, na);
    const SymTensor b = random_sym_tensor(rng, d, nb);
    const oracle::Full want = oracle::contract(oracle::expand(a), oracle::expand(b));
    CHECK(max_diff(contract_full(a, b), want) < 1e-12);
  }
}

TEST_CASE("pairing is bilinear without conjugation") {
  const std::vector<Complex> xi{1.0, Complex(0.0, 2.0)};
  CHECK(std::abs(pairing(trace_tensor(2), SymTensor::power(xi, 2)) - (-3.0)) < 1e-14);
  const std::vector<Complex> w{Complex(0.0, 2.0)};
  CHECK(std::abs(pairing(SymTensor::power(w, 1), SymTensor::power(w, 1)) - (-4.0)) < 1e-14);
}

TEST_CASE("trace contraction is the sum of unit-square contractions") {
  Rng rng(5);
  const SymTensor w = random_sym_tensor(rng, 3, 4);
  SymTensor sum(3, 2);
  for (std::size_t j = 0; j < 3; ++j) {
    std::vector<Complex> e(3, 0.0);
    e[j] = 1.0;
    sum += contract_full(SymTensor::power(e, 2), w);
  }
  const SymTensor t = contract_full(trace_tensor(3), w);
  for (const auto& g : multi_indices(3, 2)) CHECK(std::abs(t.at(g) - sum.at(g)) < 1e-14);
}

TEST_CASE("shape errors") {
  SymTensor a(2, 1), b(3, 2);
  CHECK_THROWS_AS(contract_full(a, b), DimensionError);
  CHECK_THROWS_AS(contract_full(SymTensor(2, 3), SymTensor(2, 1)), DimensionError);
  CHECK_THROWS_AS(pairing(SymTensor(2, 1), SymTensor(2, 2)), DimensionError);
  SymTensor c(2, 2);
  CHECK_THROWS_AS(c.set(mi({1, 0}), 1.0), DimensionError);
}

TEST_CASE("pruned drops small entries") {
  SymTensor t(1, 2);
  t.set(mi({2}), 1e-20);
  CHECK(t.pruned(1e-15).empty());
  t.set(mi({2}), 1.0);
  CHECK(!t.pruned(1e-15).empty());
}

TEST_CASE("bi-tensor contraction in both variables") {
  Rng rng(9);
  const SymTensor a1 = random_sym_tensor(rng, 2, 1), b1 = random_sym_tensor(rng, 2, 3);
  const SymTensor a2 = random_sym_tensor(rng, 1, 2), b2 = random_sym_tensor(rng, 1, 2);
  const BiTensor r = bi_contract(outer(a1, a2), outer(b1, b2));
  const SymTensor r1 = contract_full(a1, b1);
  const Complex s2 = pairing(a2, b2);
  for (const auto& g : multi_indices(2, 2)) CHECK(std::abs(r.at(g, mi({0})) - r1.at(g) * s2) < 1e-13);
  CHECK(std::abs(bi_pairing(outer(a1, a2), outer(a1, a2)) - pairing(a1, a1) * pairing(a2, a2)) < 1e-13);
}
