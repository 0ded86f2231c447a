#pragma once

// Young functions and the diagnostics built on them. Only named families are
// supported so that convexity and growth stay checkable:
//
//   power(k)  theta(x) = x^k / k,  k > 1
//   gaussian  theta(x) = x^2
//   expm1     theta(x) = e^x - 1 - x
//
// plus the numeric Legendre conjugate of any of these (and of conjugates).

#include <cstddef>
#include <memory>
#include <string>

#include "qgl/chaos.hpp"

namespace qgl {

class YoungFunctionSpec {
 public:
  enum class Family { power, gaussian, expm1, conjugate };

  static YoungFunctionSpec power(double k);
  static YoungFunctionSpec gaussian();
  static YoungFunctionSpec expm1();
  // Accepts "power", "gaussian", "expm1"; k is used by power only.
  static YoungFunctionSpec from_name(const std::string& family, double k = 2.0);

  Family family() const { return family_; }
  double exponent() const { return k_; }
  std::string name() const;

  double operator()(double x) const;
  // x -> theta*(x), itself a Young function for the families above.
  YoungFunctionSpec conjugate() const;

 private:
  YoungFunctionSpec(Family f, double k) : family_(f), k_(k) {}

  Family family_ = Family::gaussian;
  double k_ = 2.0;
  std::shared_ptr<const YoungFunctionSpec> base_;
};

// sup_{t >= 0} (t x - theta(t)); golden-section refinement to 1e-10 in t.
double conjugate_eval(const YoungFunctionSpec& theta, double x);

// inf_{r > 0} e^{theta(r)} / r^n
double theta_n(const YoungFunctionSpec& theta, int n);

// Sampled lower estimate of sup |phi(z,t)| exp(-theta1(a1|z|) - theta2(a2|t|))
// over a quasi-random set of points with |z|, |t| <= r_max. The origin is
// always sampled.
double growth_norm_estimate(const Expansion2& phi, double a1, double a2, const YoungFunctionSpec& theta1,
                            const YoungFunctionSpec& theta2, std::size_t samples, double r_max = 10.0);

// limsup theta(x)/x^2 < infinity, judged on x = 10^{k/10} up to 10^6.
bool check_growth_condition(const YoungFunctionSpec& theta);

// theta(0) = 0, increasing and convex on a grid, superlinear
// (theta(x)/x at 10^3 at least 10 times its value at 10).
bool satisfies_young_shape(const YoungFunctionSpec& theta);

}  // namespace qgl
