#pragma once

#include <Eigen/Dense>

#include "core.hpp"

namespace qwalk {

using Mat2 = Eigen::Matrix2cd;

inline constexpr double unitarity_tol = 1e-12;

// A 2x2 unitary with nonzero diagonal. The phases of the diagonal are cached
// because every closed form below only sees them through e^{i sigma}.
struct Coin {
  cplx c11, c12, c21, c22;
  double sigma1 = 0.0;
  double sigma2 = 0.0;

  Mat2 matrix() const {
    Mat2 m;
    m << c11, c12, c21, c22;
    return m;
  }
  double sigma() const { return sigma1 + sigma2; }
};

inline Coin validate_coin(const Mat2& m) {
  const double dev = (m.adjoint() * m - Mat2::Identity()).cwiseAbs().maxCoeff();
  if (!(dev <= unitarity_tol))
    throw Error(ErrorCode::NotUnitary, "deviation " + std::to_string(dev));
  if (m(0, 0) == 0.0 || m(1, 1) == 0.0)
    throw Error(ErrorCode::ReducibleCoin, "zero diagonal entry");
  return Coin{m(0, 0), m(0, 1), m(1, 0), m(1, 1), std::arg(m(0, 0)), std::arg(m(1, 1))};
}

namespace coins {

inline Mat2 identity() { return Mat2::Identity(); }

inline Mat2 hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Mat2 m;
  m << s, s, s, -s;
  return m;
}

// Hadamard-like defect with an off-diagonal phase.
inline Mat2 konno(double phi) {
  const double s = 1.0 / std::sqrt(2.0);
  Mat2 m;
  m << s, s * unimodular(phi), s * unimodular(-phi), -s;
  return m;
}

}  // namespace coins

struct WalkSpec {
  Lattice lattice = Lattice::Line;
  Coin coin;    // every site except the origin
  Coin defect;  // the origin

  const Coin& coin_at(long site) const { return site == 0 ? defect : coin; }
};

inline WalkSpec make_spec(Lattice lattice, const Mat2& coin, const Mat2& defect) {
  return WalkSpec{lattice, validate_coin(coin), validate_coin(defect)};
}

struct Qubit {
  cplx alpha{1.0, 0.0};
  cplx beta{0.0, 0.0};

  double norm2() const { return std::norm(alpha) + std::norm(beta); }
  Qubit normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw Error(ErrorCode::InvalidArgument, "zero qubit");
    return {alpha / n, beta / n};
  }
};

// Reduced parameters that classify a one-defect walk up to rotation.
struct DefectParams {
  cplx a;
  cplx b;
  cplx omega{1.0, 0.0};
  double vartheta = 0.0;

  bool diagonal_coin() const { return a == 0.0; }
};

inline DefectParams defect_params(const WalkSpec& spec) {
  const Coin& c = spec.coin;
  const Coin& d = spec.defect;
  const double sigma = c.sigma();
  const double tau = d.sigma();
  DefectParams p;
  p.vartheta = sigma / 2;
  if (spec.lattice == Lattice::HalfLine) {
    p.a = std::conj(c.c21) * unimodular(1.5 * sigma - tau);
    p.b = std::conj(d.c21) * unimodular(sigma / 2);
    p.omega = 1.0;
    return p;
  }
  const double m = std::abs(c.c21);
  if (m == 0.0) {
    p.a = 0.0;
    p.b = std::conj(d.c21) * unimodular((tau - sigma) / 2) * I;
    p.omega = 1.0;
    return p;
  }
  const cplx u = c.c21 / m;
  p.a = I * m * unimodular((sigma - tau) / 2);
  p.b = I * u * unimodular((tau - sigma) / 2) * std::conj(d.c21);
  p.omega = I * u * unimodular(tau / 2 - sigma);
  return p;
}

// Phase factors of the basis vectors. On the half-line index 2k is |k up>
// and 2k+1 is |k down>. On the line, index 4m is |m up>, 4m+1 is |-m-1 down>,
// 4m+2 is |-m-1 up> and 4m+3 is |m down>.
namespace detail {

// Scalar phase at basis index j, before the rotation by vartheta.
inline cplx lambda_at(const WalkSpec& spec, long j) {
  const Coin& c = spec.coin;
  const Coin& d = spec.defect;
  if (spec.lattice == Lattice::HalfLine) {
    if (j == 0) return 1.0;
    const long k = j / 2;
    if (j % 2 == 1) return unimodular(d.sigma2 + k * c.sigma2);
    return unimodular(-(d.sigma1 + (k - 1) * c.sigma1));
  }
  const long block = j / 2;
  const int comp = static_cast<int>(j % 2);
  if (block == 0) return 1.0;
  if (block % 2 == 1) {
    const long k = (block + 1) / 2;
    return comp == 0 ? unimodular(k * c.sigma1) : unimodular(d.sigma2 + (k - 1) * c.sigma2);
  }
  const long k = block / 2;
  return comp == 0 ? unimodular(-(d.sigma1 + (k - 1) * c.sigma1)) : unimodular(-k * c.sigma2);
}

// Rotation exponent: block 2k-1 picks up e^{-ik vartheta}, block 2k picks up e^{ik vartheta}.
inline double hat_exponent(Lattice lattice, long j) {
  const long block = lattice == Lattice::HalfLine ? j : j / 2;
  if (block % 2 == 0) return static_cast<double>(block / 2);
  return -static_cast<double>((block + 1) / 2);
}

}  // namespace detail

inline cplx lambda_hat(const WalkSpec& spec, long j) {
  const double theta = spec.coin.sigma() / 2;
  return detail::lambda_at(spec, j) * unimodular(detail::hat_exponent(spec.lattice, j) * theta);
}

// Basis indices of |site up> and |site down>.
struct SiteIndex {
  long up;
  long down;
};

inline SiteIndex site_index(Lattice lattice, long site) {
  if (lattice == Lattice::HalfLine) {
    if (site < 0) throw Error(ErrorCode::InvalidArgument, "negative site on the half-line");
    return {2 * site, 2 * site + 1};
  }
  if (site >= 0) return {4 * site, 4 * site + 3};
  const long m = -site - 1;
  return {4 * m + 2, 4 * m + 1};
}

inline Qubit hat_qubit(const Qubit& q, long site, const WalkSpec& spec) {
  const SiteIndex s = site_index(spec.lattice, site);
  return {lambda_hat(spec, s.up) * q.alpha, lambda_hat(spec, s.down) * q.beta};
}

inline Qubit unhat_qubit(const Qubit& hq, long site, const WalkSpec& spec) {
  const SiteIndex s = site_index(spec.lattice, site);
  return {std::conj(lambda_hat(spec, s.up)) * hq.alpha, std::conj(lambda_hat(spec, s.down)) * hq.beta};
}

}  // namespace qwalk
