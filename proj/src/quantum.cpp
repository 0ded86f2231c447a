#include "qgl/quantum.hpp"

#include <Eigen/Dense>
#include <string>

#include "qgl/errors.hpp"
#include "qgl/gross.hpp"

namespace qgl {

namespace {

void require_kernel(const OperatorKernel& op, const char* what) {
  if (op.kernel.role() != Role::distribution)
    throw RoleError(std::string(what) + ": operator kernel must have role distribution");
}

std::string label_or(const std::string& label, const std::string& fallback) {
  return label.empty() ? fallback : label;
}

}  // namespace

OperatorKernel::OperatorKernel(Expansion2 k, std::string l) : kernel(std::move(k)), label(std::move(l)) {
  require_kernel(*this, "OperatorKernel");
  if (kernel.dim2() == 0) throw DimensionError("OperatorKernel: kernel needs a second variable (dim2 >= 1)");
}

Complex symbol(const OperatorKernel& op, std::span<const Complex> xi1, std::span<const Complex> xi2) {
  require_kernel(op, "symbol");
  return laplace(op.kernel, xi1, xi2);
}

Expansion2 apply(const OperatorKernel& op, const Expansion2& f) {
  require_kernel(op, "apply");
  if (f.role() != Role::test) throw RoleError("apply: argument must be a test function");
  if (!f.one_variable()) throw DimensionError("apply: argument must be a one-variable expansion");
  const Expansion2& k = op.kernel;
  if (f.dim1() != k.dim1()) throw DimensionError("apply: argument dimension does not match the kernel");

  Expansion2 r = Expansion2::one_variable(k.dim2(), k.cutoff2(), Role::distribution);
  const SymTensor unit0 = SymTensor::scalar(0, 1.0);
  for (const auto& [key, blk] : k.blocks()) {
    const BiTensor* fb = f.block(key.first, 0);
    if (!fb) continue;
    SymTensor fn(f.dim1(), key.first);
    for (const auto& [fk, v] : fb->entries()) fn.set(fk.first, v);
    SymTensor part = contract_first(fn, blk);
    part *= factorial(key.first);
    r.add_block(outer(part, unit0));
  }
  if (f.truncated() && k.max_degree1() > f.exact1()) r.mark_truncated(-1, 0);
  if (k.truncated()) r.mark_truncated(f.max_degree1() > k.exact1() ? -1 : k.exact2(), 0);
  return r;
}

OperatorKernel op_convolve(const OperatorKernel& a, const OperatorKernel& b) {
  require_kernel(a, "op_convolve");
  require_kernel(b, "op_convolve");
  return OperatorKernel(convolve_dist_dist(a.kernel, b.kernel),
                        label_or(a.label, "A") + "*" + label_or(b.label, "B"));
}

OperatorKernel quantum_gross(const OperatorKernel& op) {
  require_kernel(op, "quantum_gross");
  return OperatorKernel(gross_distribution(op.kernel), "quantum_gross(" + label_or(op.label, "Xi") + ")");
}

OperatorKernel multiplication_operator(const Expansion2& phi) {
  if (phi.role() != Role::distribution) throw RoleError("multiplication_operator: Phi must be a distribution");
  if (!phi.one_variable()) throw DimensionError("multiplication_operator: Phi must be one-variable");
  const std::size_t d = phi.dim1();
  const int c = phi.cutoff1();
  Expansion2 k(d, d, c, c, Role::distribution);
  for (const auto& [key, blk] : phi.blocks()) {
    const int big_n = key.first;
    for (const auto& [gk, v] : blk.entries()) {
      const MultiIndex& gamma = gk.first;
      // Every split gamma = alpha + beta.
      for (int n = 0; n <= big_n; ++n) {
        const double c_nm = static_cast<double>(binomial(big_n, n));
        for (const MultiIndex& alpha : multi_indices(d, n))
          if (gamma.contains(alpha)) k.set(alpha, gamma - alpha, c_nm * v);
      }
    }
  }
  if (phi.truncated()) k.mark_truncated(phi.exact1() / 2, phi.exact1() / 2);
  return OperatorKernel(std::move(k), "M_Phi");
}

OperatorKernel multiplication_operator(const Expansion2& phi, std::size_t dim1, std::size_t dim2) {
  if (dim1 != dim2)
    throw DimensionError("multiplication_operator: needs equal variable dimensions, got " + std::to_string(dim1) +
                         " and " + std::to_string(dim2));
  if (phi.dim1() != dim1) throw DimensionError("multiplication_operator: Phi dimension does not match");
  return multiplication_operator(phi);
}

std::pair<Expansion2, Expansion2> classical_quantum_bridge(const Expansion2& phi) {
  const OperatorKernel m = multiplication_operator(phi);
  const Expansion2 vacuum = Expansion2::unit(phi.dim1(), 0, phi.cutoff1(), 0, Role::test);
  return {apply(quantum_gross(m), vacuum), gross_distribution(phi)};
}

Expansion2 fit_kernel(const KernelShape& shape, const std::vector<Point2>& points,
                      const std::vector<Complex>& values) {
  return fit_kernels(shape, points, {values}).front();
}

std::vector<Expansion2> fit_kernels(const KernelShape& shape, const std::vector<Point2>& points,
                                    const std::vector<std::vector<Complex>>& values) {
  std::vector<std::pair<MultiIndex, MultiIndex>> unknowns;
  for (int n = 0; n <= shape.cutoff1; ++n)
    for (const MultiIndex& a : multi_indices(shape.dim1, n))
      for (int m = 0; m <= shape.cutoff2; ++m)
        for (const MultiIndex& b : multi_indices(shape.dim2, m)) unknowns.emplace_back(a, b);

  const auto rows = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(unknowns.size());
  Eigen::MatrixXcd design(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Point2& p = points[static_cast<std::size_t>(i)];
    if (p.z.size() != shape.dim1 || p.t.size() != shape.dim2)
      throw DimensionError("fit_kernel: point dimension does not match the kernel shape");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& [a, b] = unknowns[static_cast<std::size_t>(j)];
      design(i, j) = static_cast<double>(multinomial_weight(a)) * static_cast<double>(multinomial_weight(b)) *
                     monomial(p.z, a) * monomial(p.t, b);
    }
  }
  Eigen::MatrixXcd rhs(rows, static_cast<Eigen::Index>(values.size()));
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r].size() != points.size()) throw DimensionError("fit_kernel: one value per point required");
    for (Eigen::Index i = 0; i < rows; ++i) rhs(i, static_cast<Eigen::Index>(r)) = values[r][static_cast<std::size_t>(i)];
  }

  // Columns are equilibrated so the rank test sees geometry, not monomial scale.
  Eigen::VectorXd scale(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    scale(j) = design.col(j).norm();
    if (scale(j) == 0.0) scale(j) = 1.0;
    design.col(j) /= scale(j);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols)
    throw SingularFitError("fit_kernel: design has rank " + std::to_string(qr.rank()) + " < " +
                           std::to_string(cols) + " unknowns; the point set is not generic enough");
  Eigen::MatrixXcd x = qr.solve(rhs);
  for (Eigen::Index j = 0; j < cols; ++j) x.row(j) /= scale(j);

  std::vector<Expansion2> out;
  for (Eigen::Index r = 0; r < x.cols(); ++r) {
    Expansion2 e(shape.dim1, shape.dim2, shape.cutoff1, shape.cutoff2, Role::distribution);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto& [a, b] = unknowns[static_cast<std::size_t>(j)];
      e.set(a, b, x(j, r));
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace qgl
