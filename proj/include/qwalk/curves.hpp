#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include "core.hpp"

namespace qwalk {

// A closed curve t -> c(t), t in [0, 2 pi), with its derivative.
struct ClosedCurve {
  std::function<cplx(double)> at;
  std::function<cplx(double)> tangent;
};

// Envelope of the lines through zeta in the direction zeta^2.
inline ClosedCurve epicycloid() {
  return {[](double t) { return 0.75 * unimodular(t) - 0.25 * unimodular(3 * t); },
          [](double t) { return 0.75 * I * unimodular(t) - 0.75 * I * unimodular(3 * t); }};
}

// Locus of a whose exterior envelope touches the circle at a limit point.
inline ClosedCurve epitrochoid() {
  return {[](double t) { return 0.5 * unimodular(t) - 0.5 * unimodular(3 * t); },
          [](double t) { return 0.5 * I * unimodular(t) - 1.5 * I * unimodular(3 * t); }};
}

inline int winding_number(const ClosedCurve& c, cplx p, int samples = 4096) {
  double total = 0.0;
  cplx prev = c.at(0.0) - p;
  for (int i = 1; i <= samples; ++i) {
    const cplx cur = c.at(2 * pi * i / samples) - p;
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2 * pi)));
}

namespace detail {

template <class F>
double golden_min(F&& f, double lo, double hi, double tol = 1e-15) {
  const double r = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

inline double wrap_angle(double t) {
  t = std::fmod(t, 2 * pi);
  return t < 0 ? t + 2 * pi : t;
}

}  // namespace detail

struct CurvePoint {
  double t;
  cplx point;
};

// Parameters where the curve's speed vanishes.
inline std::vector<CurvePoint> find_cusps(const ClosedCurve& c, int samples = 2048) {
  std::vector<double> speed(samples);
  for (int i = 0; i < samples; ++i) speed[i] = std::norm(c.tangent(2 * pi * i / samples));
  const double scale = *std::max_element(speed.begin(), speed.end());
  const double h = 2 * pi / samples;
  std::vector<CurvePoint> out;
  for (int i = 0; i < samples; ++i) {
    const double prev = speed[(i + samples - 1) % samples];
    const double next = speed[(i + 1) % samples];
    if (!(speed[i] <= prev && speed[i] < next)) continue;
    const double t = detail::golden_min([&](double s) { return std::norm(c.tangent(s)); }, i * h - h, i * h + h);
    if (std::norm(c.tangent(t)) > 1e-12 * scale) continue;
    const double tw = detail::wrap_angle(t);
    out.push_back({tw, c.at(tw)});
  }
  return out;
}

struct Crossing {
  double t1;
  double t2;
  cplx point;
};

namespace detail {

inline double cross(cplx u, cplx v) { return (std::conj(u) * v).imag(); }

inline bool segments_meet(cplx p1, cplx p2, cplx q1, cplx q2) {
  const double d1 = cross(p2 - p1, q1 - p1), d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1), d4 = cross(q2 - q1, p2 - q1);
  return d1 * d2 < 0 && d3 * d4 < 0;
}

}  // namespace detail

// Transversal self-intersections, located by polyline crossing and polished
// by Newton's method on c(t1) - c(t2) = 0.
inline std::vector<Crossing> find_self_intersections(const ClosedCurve& c, int samples = 1024) {
  std::vector<cplx> pts(samples + 1);
  for (int i = 0; i <= samples; ++i) pts[i] = c.at(2 * pi * i / samples);
  const double h = 2 * pi / samples;
  std::vector<Crossing> out;
  for (int i = 0; i < samples; ++i)
    for (int j = i + 2; j < samples; ++j) {
      if (i == 0 && j == samples - 1) continue;
      if (!detail::segments_meet(pts[i], pts[i + 1], pts[j], pts[j + 1])) continue;
      double t1 = (i + 0.5) * h, t2 = (j + 0.5) * h;
      for (int it = 0; it < 50; ++it) {
        const cplx r = c.at(t1) - c.at(t2);
        const cplx d1 = c.tangent(t1), d2 = -c.tangent(t2);
        Eigen::Matrix2d jac;
        jac << d1.real(), d2.real(), d1.imag(), d2.imag();
        const Eigen::Vector2d step = jac.fullPivLu().solve(Eigen::Vector2d(r.real(), r.imag()));
        t1 -= step(0);
        t2 -= step(1);
        if (step.norm() < 1e-15) break;
      }
      const cplx d1 = c.tangent(t1), d2 = c.tangent(t2);
      if (std::abs(detail::cross(d1, d2)) < 1e-6 * std::abs(d1) * std::abs(d2)) continue;
      const cplx p = 0.5 * (c.at(t1) + c.at(t2));
      const bool seen = std::any_of(out.begin(), out.end(), [&](const Crossing& x) { return std::abs(x.point - p) < 1e-9; });
      if (!seen) out.push_back({detail::wrap_angle(t1), detail::wrap_angle(t2), p});
    }
  return out;
}

struct NearestPoint {
  double t;
  double distance;
};

inline NearestPoint nearest_on_curve(const ClosedCurve& c, cplx p, int samples = 4096) {
  const double h = 2 * pi / samples;
  std::vector<double> d(samples);
  for (int i = 0; i < samples; ++i) d[i] = std::abs(c.at(i * h) - p);
  NearestPoint best{0.0, std::numeric_limits<double>::infinity()};
  for (int i = 0; i < samples; ++i) {
    if (!(d[i] <= d[(i + samples - 1) % samples] && d[i] <= d[(i + 1) % samples])) continue;
    const double t = detail::golden_min([&](double s) { return std::abs(c.at(s) - p); }, i * h - h, i * h + h);
    const double dist = std::abs(c.at(t) - p);
    if (dist < best.distance) best = {detail::wrap_angle(t), dist};
  }
  return best;
}

}  // namespace qwalk
