#pragma once

#include <Eigen/Dense>
#include <map>
#include <span>

#include "cmv.hpp"
#include "loc_halfline.hpp"
#include "loc_line.hpp"
#include "quadrature.hpp"

namespace qwalk {

// (1/(2N+1)) sum_{|n|<=N} |mu_n|^2 with mu_{-n} = conj(mu_n).
inline double wiener_average(std::span<const cplx> moments, long N) {
  if (N < 1 || static_cast<long>(moments.size()) <= N)
    throw Error(ErrorCode::InvalidArgument, "need moments 0..N with N >= 1");
  double s = std::norm(moments[0]);
  for (long n = 1; n <= N; ++n) s += 2.0 * std::norm(moments[n]);
  return s / (2.0 * N + 1.0);
}

inline constexpr double moment_tol = 1e-6;

namespace detail {

template <class V>
void require_converged(const QuadratureResult<V>& r) {
  if (!r.converged || r.error > moment_tol)
    throw Error(ErrorCode::QuadratureNotConverged, "error estimate " + std::to_string(r.error));
}

}  // namespace detail

// n-th moment of the half-line measure, i.e. (U^n)_{0,0}.
inline cplx halfline_moment(const DefectParams& p, long n) {
  if (p.a == 0.0) throw Error(ErrorCode::ZeroA, "quadrature needs a != 0");
  const double nn = static_cast<double>(n);
  auto r = integrate_outside_gamma(std::abs(p.a), [&](double th) {
    return unimodular(nn * th) * halfline_weight_unchecked(p.a, p.b, th);
  });
  detail::require_converged(r);
  cplx m = r.value;
  for (const MassPointZplus& x : halfline_roots(p.a, p.b)) m += std::pow(x.z0, nn) * x.mu;
  return unimodular(nn * p.vartheta) * m;
}

// n-th matrix moment of the line measure, i.e. the block of U^n on |0 up>, |-1 down>.
inline Mat2c line_moment(const DefectParams& p, long n) {
  if (p.a == 0.0) throw Error(ErrorCode::ZeroA, "quadrature needs a != 0");
  const double nn = static_cast<double>(n);
  auto r = integrate_outside_gamma(std::abs(p.a), [&](double th) -> Mat2c {
    return unimodular(nn * th) * line_weight_unchecked(p.a, p.b, p.omega, th);
  });
  detail::require_converged(r);
  Mat2c m = r.value;
  for (const MassPointZ& x : classify_line(p.a, p.b, p.omega).points) m += std::pow(x.z0, nn) * x.mass_matrix();
  return unimodular(nn * p.vartheta) * m;
}

inline Eigen::MatrixXcd moment_by_quadrature(const DefectParams& p, long n, Lattice lattice) {
  if (lattice == Lattice::HalfLine) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = halfline_moment(p, n);
    return m;
  }
  return line_moment(p, n);
}

// The same block read off the simulated dynamics.
inline Eigen::MatrixXcd simulated_moment(const WalkSpec& spec, long n) {
  if (spec.lattice == Lattice::HalfLine) {
    Eigen::MatrixXcd m(1, 1);
    m(0, 0) = amplitude(spec, 0, 0, n);
    return m;
  }
  Eigen::MatrixXcd m(2, 2);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) m(j, k) = amplitude(spec, j, k, n);
  return m;
}

inline constexpr long brute_force_max_steps = 64;

// Dense re-implementation of the return probability in a plain site-major
// ordering, sharing no code with the banded engine.
inline double brute_force_return(const WalkSpec& spec, long site, const Qubit& q, long steps) {
  if (steps > brute_force_max_steps) throw Error(ErrorCode::TooLarge, "dense check limited to 64 steps");
  if (spec.lattice == Lattice::HalfLine && site < 0) throw Error(ErrorCode::InvalidArgument, "negative site");
  const long lo = spec.lattice == Lattice::HalfLine ? 0 : site - steps - 2;
  const long hi = site + steps + 2;
  const long sites = hi - lo + 1;
  auto idx = [&](long s, int spin) { return (s - lo) * 2 + spin; };
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * sites, 2 * sites);
  for (long s = lo; s <= hi; ++s) {
    const Mat2 c = (s == 0 ? spec.defect : spec.coin).matrix();
    for (int spin = 0; spin < 2; ++spin) {
      // column `spin` of the coin is the image of that spin state
      const cplx to_up = c(0, spin), to_down = c(1, spin);
      if (s + 1 <= hi) u(idx(s + 1, 0), idx(s, spin)) += to_up;
      if (spec.lattice == Lattice::HalfLine && s == 0)
        u(idx(0, 0), idx(s, spin)) += to_down;
      else if (s - 1 >= lo)
        u(idx(s - 1, 1), idx(s, spin)) += to_down;
    }
  }
  const Qubit nq = q.normalized();
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * sites);
  psi(idx(site, 0)) = nq.alpha;
  psi(idx(site, 1)) = nq.beta;
  for (long n = 0; n < steps; ++n) psi = u * psi;
  return std::norm(psi(idx(site, 0))) + std::norm(psi(idx(site, 1)));
}

}  // namespace qwalk
