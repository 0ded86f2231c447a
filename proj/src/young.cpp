#include "qgl/young.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "qgl/errors.hpp"

namespace qgl {

namespace {

constexpr double kInvPhi = 0.6180339887498949;

// Argmin of a unimodal f on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > std::max(tol, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(a + b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

std::vector<int> first_primes(std::size_t count) {
  std::vector<int> primes;
  for (int n = 2; primes.size() < count; ++n) {
    bool prime = true;
    for (int p : primes) {
      if (p * p > n) break;
      if (n % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(n);
  }
  return primes;
}

double radical_inverse(std::size_t i, int base) {
  double r = 0.0;
  double f = 1.0 / base;
  while (i > 0) {
    r += f * static_cast<double>(i % static_cast<std::size_t>(base));
    i /= static_cast<std::size_t>(base);
    f /= base;
  }
  return r;
}

// Fills v with a point of norm `radius` whose direction comes from u (2 * v.size() entries).
void place(std::vector<Complex>& v, const double* u, double radius) {
  double norm2 = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    v[j] = Complex(2.0 * u[2 * j] - 1.0, 2.0 * u[2 * j + 1] - 1.0);
    norm2 += std::norm(v[j]);
  }
  if (norm2 == 0.0) {
    v.assign(v.size(), Complex{});
    if (!v.empty()) v[0] = radius;
    return;
  }
  const double s = radius / std::sqrt(norm2);
  for (auto& c : v) c *= s;
}

}  // namespace

YoungFunctionSpec YoungFunctionSpec::power(double k) {
  if (!(k > 1.0) || !std::isfinite(k)) throw DomainError("power Young function needs a finite exponent k > 1");
  return YoungFunctionSpec(Family::power, k);
}

YoungFunctionSpec YoungFunctionSpec::gaussian() { return YoungFunctionSpec(Family::gaussian, 2.0); }

YoungFunctionSpec YoungFunctionSpec::expm1() { return YoungFunctionSpec(Family::expm1, 0.0); }

YoungFunctionSpec YoungFunctionSpec::from_name(const std::string& family, double k) {
  if (family == "power") return power(k);
  if (family == "gaussian") return gaussian();
  if (family == "expm1") return expm1();
  throw InputError("unknown Young family '" + family + "' (expected power, gaussian or expm1)");
}

std::string YoungFunctionSpec::name() const {
  switch (family_) {
    case Family::power: {
      std::ostringstream os;
      os << "power(k=" << k_ << ")";
      return os.str();
    }
    case Family::gaussian:
      return "gaussian";
    case Family::expm1:
      return "expm1";
    case Family::conjugate:
      return "conjugate(" + base_->name() + ")";
  }
  return "";
}

double YoungFunctionSpec::operator()(double x) const {
  switch (family_) {
    case Family::power:
      return std::pow(x, k_) / k_;
    case Family::gaussian:
      return x * x;
    case Family::expm1:
      return std::expm1(x) - x;
    case Family::conjugate:
      return conjugate_eval(*base_, x);
  }
  return 0.0;
}

YoungFunctionSpec YoungFunctionSpec::conjugate() const {
  YoungFunctionSpec c(Family::conjugate, 0.0);
  c.base_ = std::make_shared<const YoungFunctionSpec>(*this);
  return c;
}

double conjugate_eval(const YoungFunctionSpec& theta, double x) {
  if (!(x >= 0.0)) throw DomainError("conjugate_eval: x must be >= 0");
  if (x == 0.0) return 0.0;
  // The objective is concave with f(0) = 0; double until it starts to fall.
  auto f = [&](double t) { return t * x - theta(t); };
  double hi = 1.0;
  while (f(2.0 * hi) > f(hi) && hi < 1e300) hi *= 2.0;
  const double lo = hi > 1.0 ? 0.5 * hi : 0.0;
  const double t = golden_min([&](double s) { return -f(s); }, lo, 2.0 * hi, 1e-10);
  return std::max(f(t), 0.0);
}

double theta_n(const YoungFunctionSpec& theta, int n) {
  if (n < 1) throw DomainError("theta_n: n must be >= 1");
  // log of e^{theta(r)} / r^n with r = e^s; unimodal in s for convex theta.
  auto g = [&](double s) { return theta(std::exp(s)) - n * s; };
  const double s = golden_min(g, -60.0, 60.0, 1e-12);
  return std::exp(g(s));
}

double growth_norm_estimate(const Expansion2& phi, double a1, double a2, const YoungFunctionSpec& theta1,
                            const YoungFunctionSpec& theta2, std::size_t samples, double r_max) {
  if (phi.role() != Role::test) throw RoleError("growth_norm_estimate: expected a test expansion");
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw DomainError("growth_norm_estimate: weights must be > 0");
  if (!(r_max >= 0.0)) throw DomainError("growth_norm_estimate: r_max must be >= 0");
  if (samples == 0) throw DomainError("growth_norm_estimate: need at least one sample");

  const std::size_t d1 = phi.dim1();
  const std::size_t d2 = phi.dim2();
  // Layout of one Halton point: directions of z, radius of z, directions of t, radius of t.
  const std::size_t width = 2 * d1 + 1 + (d2 > 0 ? 2 * d2 + 1 : 0);
  const auto primes = first_primes(width);
  std::vector<double> u(width);
  Point2 p{std::vector<Complex>(d1), std::vector<Complex>(d2)};

  double best = std::abs(evaluate(phi, p));
  for (std::size_t i = 1; i < samples; ++i) {
    for (std::size_t k = 0; k < width; ++k) u[k] = radical_inverse(i, primes[k]);
    const double r1 = r_max * u[2 * d1];
    place(p.z, u.data(), r1);
    double r2 = 0.0;
    if (d2 > 0) {
      r2 = r_max * u[2 * d1 + 1 + 2 * d2];
      place(p.t, u.data() + 2 * d1 + 1, r2);
    }
    const double penalty = theta1(a1 * r1) + (d2 > 0 ? theta2(a2 * r2) : 0.0);
    const double value = std::abs(evaluate(phi, p));
    if (value == 0.0) continue;
    best = std::max(best, std::exp(std::log(value) - penalty));
  }
  return best;
}

bool check_growth_condition(const YoungFunctionSpec& theta) {
  double running = 0.0;
  double at_last_decade = 0.0;
  for (int k = 0; k <= 60; ++k) {
    const double x = std::pow(10.0, k / 10.0);
    const double ratio = theta(x) / (x * x);
    if (!std::isfinite(ratio)) return false;
    running = std::max(running, ratio);
    if (k == 50) at_last_decade = running;
  }
  return running <= 1.01 * at_last_decade;
}

bool satisfies_young_shape(const YoungFunctionSpec& theta) {
  if (std::abs(theta(0.0)) > 1e-12) return false;
  constexpr int kPoints = 200;
  constexpr double kStep = 0.05;
  double prev = theta(0.0);
  double prev_diff = 0.0;
  for (int i = 1; i <= kPoints; ++i) {
    const double v = theta(i * kStep);
    const double diff = v - prev;
    if (diff < -1e-12) return false;
    if (i > 1 && diff < prev_diff - 1e-9 * std::max(1.0, std::abs(v))) return false;
    prev = v;
    prev_diff = diff;
  }
  const double slope_small = theta(10.0) / 10.0;
  const double slope_large = theta(1000.0) / 1000.0;
  return slope_large >= 10.0 * slope_small * (1.0 - 1e-9);
}

}  // namespace qgl
