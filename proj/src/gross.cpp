#include "qgl/gross.hpp"

#include <algorithm>
#include <string>

#include "qgl/errors.hpp"

namespace qgl {

namespace {

void require_role(const Expansion2& e, Role role, const char* op) {
  if (e.role() != role)
    throw RoleError(std::string(op) + ": expected a " + to_string(role) + " expansion, got " +
                    to_string(e.role()));
}

// Delta_G restricted to one variable: block (N, M) feeds (N-2, M) or (N, M-2).
Expansion2 gross_part(const Expansion2& phi, int variable) {
  Expansion2 r(phi.dim1(), phi.dim2(), phi.cutoff1(), phi.cutoff2(), Role::test);
  if (variable == 2 && phi.one_variable()) return r;
  const BiTensor tau = variable == 1 ? outer(trace_tensor(phi.dim1()), SymTensor::scalar(phi.dim2(), 1.0))
                                     : outer(SymTensor::scalar(phi.dim1(), 1.0), trace_tensor(phi.dim2()));
  for (const auto& [k, blk] : phi.blocks()) {
    const int deg = variable == 1 ? k.first : k.second;
    if (deg < 2) continue;
    BiTensor part = bi_contract(tau, blk);
    part *= static_cast<double>(deg) * (deg - 1);
    r.add_block(part);
  }
  if (phi.truncated()) {
    if (variable == 1)
      r.mark_truncated(phi.exact1() - 2, phi.exact2());
    else
      r.mark_truncated(phi.exact1(), phi.exact2() - 2);
  }
  return r;
}

}  // namespace

Expansion2 trace_distribution(std::size_t dim1, std::size_t dim2, int cutoff1, int cutoff2) {
  if (cutoff1 < 2 || (dim2 > 0 && cutoff2 < 2))
    throw DomainError("trace distribution needs cutoffs >= 2, got (" + std::to_string(cutoff1) + "," +
                      std::to_string(cutoff2) + ")");
  Expansion2 t(dim1, dim2, cutoff1, cutoff2, Role::distribution);
  t.add_block(outer(trace_tensor(dim1), SymTensor::scalar(dim2, 1.0)));
  if (dim2 > 0) t.add_block(outer(SymTensor::scalar(dim1, 1.0), trace_tensor(dim2)));
  return t;
}

std::pair<Expansion2, Expansion2> gross_split(const Expansion2& phi) {
  require_role(phi, Role::test, "gross_split");
  return {gross_part(phi, 1), gross_part(phi, 2)};
}

Expansion2 gross_test(const Expansion2& phi) {
  auto [a, b] = gross_split(phi);
  return a += b;
}

Expansion2 convolve_dist_test(const Expansion2& distribution, const Expansion2& test) {
  require_role(distribution, Role::distribution, "convolve_dist_test");
  require_role(test, Role::test, "convolve_dist_test");
  if (distribution.dim1() != test.dim1() || distribution.dim2() != test.dim2())
    throw DimensionError("convolve_dist_test: dimension mismatch");
  Expansion2 r(test.dim1(), test.dim2(), test.cutoff1(), test.cutoff2(), Role::test);
  for (const auto& [kd, bd] : distribution.blocks()) {
    for (const auto& [kt, bt] : test.blocks()) {
      if (kt.first < kd.first || kt.second < kd.second) continue;
      const int k = kt.first - kd.first;
      const int l = kt.second - kd.second;
      const double c = factorial(kt.first) / factorial(k) * (factorial(kt.second) / factorial(l));
      BiTensor part = bi_contract(bd, bt);
      part *= c;
      r.add_block(part);
    }
  }
  if (test.truncated())
    r.mark_truncated(test.exact1() - distribution.max_degree1(), test.exact2() - distribution.max_degree2());
  if (distribution.truncated() &&
      (test.max_degree1() > distribution.exact1() || test.max_degree2() > distribution.exact2()))
    r.mark_truncated(-1, -1);
  return r;
}

Expansion2 convolve_dist_dist(const Expansion2& a, const Expansion2& b) {
  require_role(a, Role::distribution, "convolve_dist_dist");
  require_role(b, Role::distribution, "convolve_dist_dist");
  return detail::product_coefficients(a, b, Role::distribution);
}

Expansion2 gross_distribution(const Expansion2& distribution) {
  require_role(distribution, Role::distribution, "gross_distribution");
  return convolve_dist_dist(trace_distribution(distribution.dim1(), distribution.dim2(), distribution.cutoff1(),
                                               distribution.cutoff2()),
                            distribution);
}

}  // namespace qgl
