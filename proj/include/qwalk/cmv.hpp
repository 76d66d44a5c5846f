#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <span>
#include <vector>

#include "coin.hpp"

namespace qwalk {

// Square matrix stored as a band of scalar half-width `half_width`. Row i holds
// the entries at columns i - half_width .. i + half_width.
template <class Scalar>
class BandedMatrix {
 public:
  BandedMatrix(long dimension, int half_width)
      : dim_(dimension), hw_(half_width), data_(static_cast<std::size_t>(dimension) * (2 * half_width + 1)) {}

  long dimension() const { return dim_; }
  int half_width() const { return hw_; }

  bool in_band(long i, long j) const {
    return i >= 0 && j >= 0 && i < dim_ && j < dim_ && std::abs(i - j) <= hw_;
  }

  Scalar at(long i, long j) const { return in_band(i, j) ? data_[slot(i, j)] : Scalar{}; }

  Scalar& ref(long i, long j) {
    if (!in_band(i, j)) throw Error(ErrorCode::InvalidArgument, "entry outside band");
    return data_[slot(i, j)];
  }

  // Row vector times matrix: out = psi * M.
  void left_multiply(std::span<const Scalar> psi, std::span<Scalar> out) const {
    std::fill(out.begin(), out.end(), Scalar{});
    const int w = 2 * hw_ + 1;
    for (long i = 0; i < dim_; ++i) {
      const Scalar v = psi[i];
      if (v == Scalar{}) continue;
      const Scalar* row = &data_[static_cast<std::size_t>(i) * w];
      const long j0 = std::max(0L, i - hw_);
      const long j1 = std::min(dim_ - 1, i + hw_);
      for (long j = j0; j <= j1; ++j) out[j] += v * row[j - i + hw_];
    }
  }

  Eigen::MatrixXcd dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (long i = 0; i < dim_; ++i)
      for (long j = std::max(0L, i - hw_); j <= std::min(dim_ - 1, i + hw_); ++j) m(i, j) = at(i, j);
    return m;
  }

 private:
  std::size_t slot(long i, long j) const {
    return static_cast<std::size_t>(i) * (2 * hw_ + 1) + static_cast<std::size_t>(j - i + hw_);
  }

  long dim_;
  int hw_;
  std::vector<Scalar> data_;
};

using BandedUnitary = BandedMatrix<cplx>;
using WaveFunction = std::vector<cplx>;

// The half-line ordering interleaves spins site by site; the line ordering
// folds negative sites in, which doubles the reach of one step.
inline int band_half_width(Lattice lattice) { return lattice == Lattice::HalfLine ? 2 : 4; }

inline long size_granularity(Lattice lattice) { return lattice == Lattice::HalfLine ? 2 : 4; }

// Smallest admissible truncation keeping `n` steps from `site` clear of the edge.
namespace detail {

inline long size_for_index(Lattice lattice, long index, long steps) {
  const long g = size_granularity(lattice);
  const long reach = index + 1 + band_half_width(lattice) * (steps + 8);
  return (reach + g - 1) / g * g;
}

}  // namespace detail

inline long truncation_size(Lattice lattice, long steps, long site) {
  const SiteIndex s = site_index(lattice, site);
  return detail::size_for_index(lattice, std::max(s.up, s.down), steps);
}

inline std::vector<cplx> build_lambda(const WalkSpec& spec, long size) {
  if (size < 2) throw Error(ErrorCode::SizeTooSmall, "size < 2");
  std::vector<cplx> lambda(static_cast<std::size_t>(size));
  for (long j = 0; j < size; ++j) lambda[j] = detail::lambda_at(spec, j);
  return lambda;
}

namespace detail {

inline void check_size(Lattice lattice, long size) {
  const long g = size_granularity(lattice);
  if (size < 4 || size % g != 0)
    throw Error(ErrorCode::SizeTooSmall, "size must be a multiple of " + std::to_string(g) + " and >= 4");
}

// Basis index of (site, spin) or -1 when it falls outside the truncation.
inline long index_of(Lattice lattice, long size, long site, int spin) {
  long idx;
  if (lattice == Lattice::HalfLine) {
    if (site < 0) return -1;
    idx = 2 * site + spin;
  } else if (site >= 0) {
    idx = spin == 0 ? 4 * site : 4 * site + 3;
  } else {
    const long m = -site - 1;
    idx = spin == 0 ? 4 * m + 2 : 4 * m + 1;
  }
  return idx < size ? idx : -1;
}

}  // namespace detail

// Transition matrix read straight off the one-step rule of the walk.
inline BandedUnitary transition_from_coin_action(const WalkSpec& spec, long size) {
  detail::check_size(spec.lattice, size);
  const Lattice lat = spec.lattice;
  BandedUnitary u(size, band_half_width(lat));
  const long lo = lat == Lattice::HalfLine ? 0 : -size / 4;
  const long hi = lat == Lattice::HalfLine ? size / 2 : size / 4;
  for (long k = lo; k < hi; ++k) {
    const Coin& c = spec.coin_at(k);
    const long up = detail::index_of(lat, size, k, 0);
    const long dn = detail::index_of(lat, size, k, 1);
    const long right_up = detail::index_of(lat, size, k + 1, 0);
    // At the half-line wall the down component reflects into |0 up>.
    const long left_dn = (lat == Lattice::HalfLine && k == 0) ? up : detail::index_of(lat, size, k - 1, 1);
    if (right_up >= 0) {
      u.ref(up, right_up) += c.c11;
      u.ref(dn, right_up) += c.c12;
    }
    if (left_dn >= 0) {
      u.ref(up, left_dn) += c.c21;
      u.ref(dn, left_dn) += c.c22;
    }
  }
  return u;
}

namespace detail {

// Scalar coefficients on the line, indexed by even integers 2k.
inline cplx line_alpha(const WalkSpec& spec, long k) {
  const Coin& c = spec.coin;
  if (k == 0) return std::conj(spec.defect.c21);
  const double sigma = c.sigma();
  const double tau = spec.defect.sigma();
  if (k > 0) return std::conj(c.c21) * unimodular(-(tau + (k - 1) * sigma));
  return std::conj(c.c21) * unimodular(-k * sigma);
}

}  // namespace detail

// Entries of the CMV matrix whose odd coefficients vanish. Scalar on the
// half-line; 2x2 antidiagonal blocks on the line.
inline BandedUnitary cmv_matrix(const WalkSpec& spec, long size) {
  detail::check_size(spec.lattice, size);
  BandedUnitary cm(size, band_half_width(spec.lattice));
  auto put = [&](long i, long j, cplx v) {
    if (i < size && j < size) cm.ref(i, j) = v;
  };
  if (spec.lattice == Lattice::HalfLine) {
    const std::vector<cplx> lambda = build_lambda(spec, size + 2);
    for (long k = 0; 2 * k < size; ++k) {
      const Coin& c = spec.coin_at(k);
      const cplx prev = k == 0 ? cplx{1.0} : lambda[2 * k - 1];
      const cplx alpha = std::conj(c.c21) * lambda[2 * k] / prev;
      const double r = rho(alpha);
      const long left = k == 0 ? 0 : 2 * k - 1;
      put(2 * k, left, std::conj(alpha));
      put(2 * k, 2 * k + 2, r);
      put(2 * k + 1, left, r);
      put(2 * k + 1, 2 * k + 2, -alpha);
    }
    return cm;
  }
  using B2 = Eigen::Matrix2cd;
  auto put_block = [&](long bi, long bj, const B2& m) {
    for (int r = 0; r < 2; ++r)
      for (int s = 0; s < 2; ++s)
        if (m(r, s) != 0.0) put(2 * bi + r, 2 * bj + s, m(r, s));
  };
  for (long k = 0; 4 * k < size; ++k) {
    const cplx ap = detail::line_alpha(spec, k);
    const cplx am = detail::line_alpha(spec, -k - 1);
    B2 alpha;
    alpha << 0.0, -std::conj(am), ap, 0.0;
    B2 rho_r = B2::Zero();
    rho_r(0, 0) = rho(am);
    rho_r(1, 1) = rho(ap);
    B2 rho_l = B2::Zero();
    rho_l(0, 0) = rho(ap);
    rho_l(1, 1) = rho(am);
    const long left = k == 0 ? 0 : 2 * k - 1;
    put_block(2 * k, left, alpha.adjoint());
    put_block(2 * k, 2 * k + 2, rho_l);
    put_block(2 * k + 1, left, rho_r);
    put_block(2 * k + 1, 2 * k + 2, -alpha);
  }
  return cm;
}

// U = Lambda C Lambda^dagger.
inline BandedUnitary transition_from_cmv(const WalkSpec& spec, long size) {
  const BandedUnitary cm = cmv_matrix(spec, size);
  const std::vector<cplx> lambda = build_lambda(spec, size);
  BandedUnitary u(size, cm.half_width());
  for (long i = 0; i < size; ++i)
    for (long j = std::max(0L, i - cm.half_width()); j <= std::min(size - 1, i + cm.half_width()); ++j) {
      const cplx v = cm.at(i, j);
      if (v != 0.0) u.ref(i, j) = lambda[i] * v * std::conj(lambda[j]);
    }
  return u;
}

inline BandedUnitary build_transition(const WalkSpec& spec, long size) { return transition_from_cmv(spec, size); }

inline double max_entry_difference(const BandedUnitary& x, const BandedUnitary& y) {
  if (x.dimension() != y.dimension()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const int hw = std::max(x.half_width(), y.half_width());
  double worst = 0.0;
  for (long i = 0; i < x.dimension(); ++i)
    for (long j = std::max(0L, i - hw); j <= std::min(x.dimension() - 1, i + hw); ++j)
      worst = std::max(worst, std::abs(x.at(i, j) - y.at(i, j)));
  return worst;
}

inline long highest_support(std::span<const cplx> psi) {
  for (long i = static_cast<long>(psi.size()) - 1; i >= 0; --i)
    if (psi[i] != 0.0) return i;
  return -1;
}

inline void check_truncation(const BandedUnitary& u, std::span<const cplx> psi, long steps) {
  const long h = highest_support(psi);
  const long need = h + 1 + static_cast<long>(u.half_width()) * (steps + 8);
  if (u.dimension() < need)
    throw Error(ErrorCode::TruncationTooSmall,
                "dimension " + std::to_string(u.dimension()) + " < " + std::to_string(need));
}

inline WaveFunction evolve(const BandedUnitary& u, WaveFunction psi, long steps) {
  if (static_cast<long>(psi.size()) != u.dimension()) throw Error(ErrorCode::InvalidArgument, "size mismatch");
  check_truncation(u, psi, steps);
  WaveFunction next(psi.size());
  for (long n = 0; n < steps; ++n) {
    u.left_multiply(psi, next);
    psi.swap(next);
  }
  return psi;
}

inline WaveFunction localized_state(Lattice lattice, long size, long site, const Qubit& q) {
  const SiteIndex s = site_index(lattice, site);
  if (s.up >= size || s.down >= size) throw Error(ErrorCode::TruncationTooSmall, "site outside truncation");
  WaveFunction psi(static_cast<std::size_t>(size));
  psi[s.up] = q.alpha;
  psi[s.down] = q.beta;
  return psi;
}

inline double probability_at(Lattice lattice, std::span<const cplx> psi, long site) {
  const SiteIndex s = site_index(lattice, site);
  return std::norm(psi[s.up]) + std::norm(psi[s.down]);
}

// p(0), ..., p(steps) for the walker started at `site` with spin state q.
inline std::vector<double> return_probability_series(const WalkSpec& spec, long site, const Qubit& q, long steps) {
  const long size = truncation_size(spec.lattice, steps, site);
  const BandedUnitary u = build_transition(spec, size);
  WaveFunction psi = localized_state(spec.lattice, size, site, q.normalized());
  check_truncation(u, psi, steps);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(probability_at(spec.lattice, psi, site));
  WaveFunction next(psi.size());
  for (long n = 0; n < steps; ++n) {
    u.left_multiply(psi, next);
    psi.swap(next);
    out.push_back(probability_at(spec.lattice, psi, site));
  }
  return out;
}

inline double return_probability(const WalkSpec& spec, long site, const Qubit& q, long steps) {
  return return_probability_series(spec, site, q, steps).back();
}

// (U^n)_{j,k} in the CMV ordering.
inline cplx amplitude(const WalkSpec& spec, long j, long k, long steps) {
  const long size = detail::size_for_index(spec.lattice, std::max(j, k), steps);
  const BandedUnitary u = build_transition(spec, size);
  WaveFunction psi(static_cast<std::size_t>(size));
  psi[j] = 1.0;
  return evolve(u, std::move(psi), steps)[k];
}

// (U^n)_{j,k} for n = 0..steps from a single trajectory.
inline std::vector<cplx> amplitude_series(const WalkSpec& spec, long j, long k, long steps) {
  const long size = detail::size_for_index(spec.lattice, std::max(j, k), steps);
  const BandedUnitary u = build_transition(spec, size);
  WaveFunction psi(static_cast<std::size_t>(size));
  psi[j] = 1.0;
  std::vector<cplx> out{psi[k]};
  WaveFunction next(psi.size());
  for (long n = 0; n < steps; ++n) {
    u.left_multiply(psi, next);
    psi.swap(next);
    out.push_back(psi[k]);
  }
  return out;
}

}  // namespace qwalk
