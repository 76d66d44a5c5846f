#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <type_traits>
#include <vector>

#include "core.hpp"

namespace qwalk {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(cplx v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

// Nodes and weights on [-1, 1], from Newton iteration on the Legendre recurrence.
class GaussLegendre {
 public:
  explicit GaussLegendre(int n) : nodes_(n), weights_(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes_[i] = -x;
      nodes_[n - 1 - i] = x;
      weights_[i] = weights_[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  int size() const { return static_cast<int>(nodes_.size()); }

  template <class F>
  auto apply(F&& f, double lo, double hi) const {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    using V = std::decay_t<decltype(f(mid))>;
    V acc = f(mid + half * nodes_[0]) * (weights_[0] * half);
    for (int i = 1; i < size(); ++i) acc += V(f(mid + half * nodes_[i]) * (weights_[i] * half));
    return acc;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

template <class V>
struct QuadratureResult {
  V value;
  double error = 0.0;
  bool converged = true;
};

namespace detail {

template <class F, class V>
void adapt(const GaussLegendre& rule, F& f, double lo, double hi, const V& whole, double tol, int depth,
           QuadratureResult<V>& out) {
  const double mid = 0.5 * (lo + hi);
  V left = rule.apply(f, lo, mid);
  V right = rule.apply(f, mid, hi);
  V refined = left + right;
  const double diff = magnitude(V(refined - whole));
  if (diff <= tol || depth == 0) {
    if (diff > tol) out.converged = false;
    out.value += refined;
    out.error += diff;
    return;
  }
  adapt(rule, f, lo, mid, left, tol / 2, depth - 1, out);
  adapt(rule, f, mid, hi, right, tol / 2, depth - 1, out);
}

}  // namespace detail

// Adaptive composite Gauss-Legendre with panel bisection.
template <class F>
auto integrate(F&& f, double lo, double hi, double tol = 1e-10, int max_depth = 40) {
  static const GaussLegendre rule(20);
  using V = std::decay_t<decltype(rule.apply(f, lo, hi))>;
  const V whole = rule.apply(f, lo, hi);
  QuadratureResult<V> out{V(whole * 0.0), 0.0, true};
  detail::adapt(rule, f, lo, hi, whole, tol, max_depth, out);
  return out;
}

// Integral of f(theta) d theta / 2 pi over the arcs |sin theta| > |a|. The
// substitution theta = mid - half cos(phi) flattens the square-root endpoints.
template <class F>
auto integrate_outside_gamma(double abs_a, F&& f, double tol = 1e-10) {
  const double s = std::asin(std::min(1.0, abs_a));
  const double arcs[2][2] = {{s, pi - s}, {pi + s, 2 * pi - s}};
  using V = std::decay_t<decltype(f(0.0))>;
  QuadratureResult<V> total{V(f(pi / 2) * 0.0), 0.0, true};
  for (const auto& arc : arcs) {
    const double mid = 0.5 * (arc[0] + arc[1]);
    const double half = 0.5 * (arc[1] - arc[0]);
    auto g = [&](double phi) -> V { return f(mid - half * std::cos(phi)) * (half * std::sin(phi) / (2 * pi)); };
    auto r = integrate(g, 0.0, pi, tol / 2);
    total.value += r.value;
    total.error += r.error;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace qwalk
