#pragma once

#include <optional>
#include <vector>

#include "coin.hpp"
#include "schur.hpp"

namespace qwalk {

inline constexpr double disk_tol = 1e-12;

struct MassPointZ {
  cplx z0;
  cplx zeta0;
  double m = 0.0;  // mass matrix is m [[1, eta], [conj(eta), 1]]
  cplx eta;

  Mat2c mass_matrix() const {
    Mat2c w;
    w << 1.0, eta, std::conj(eta), 1.0;
    return m * w;
  }
};

enum class LineLabel { M0, M2plus, M2minus, M4 };

inline const char* to_string(LineLabel l) {
  switch (l) {
    case LineLabel::M0: return "M0";
    case LineLabel::M2plus: return "M2+";
    case LineLabel::M2minus: return "M2-";
    case LineLabel::M4: return "M4";
  }
  return "?";
}

struct ClassZ {
  LineLabel label = LineLabel::M0;
  std::vector<MassPointZ> points;  // closed under z -> -z
};

struct ZetaPair {
  cplx plus;
  cplx minus;
};

inline ZetaPair zeta_pm(cplx b) {
  const double s = std::sqrt(std::max(0.0, 1.0 - b.imag() * b.imag()));
  return {{s, b.imag()}, {-s, b.imag()}};
}

inline cplx zeta_of(cplx b, int sign) {
  const ZetaPair z = zeta_pm(b);
  return sign > 0 ? z.plus : z.minus;
}

// Strictly outside the closed disk of radius 1/2 centred at zeta_pm(b)/2.
inline bool condition_m(cplx a, cplx b, int sign) {
  if (a == 0.0) return false;
  return std::abs(a - zeta_of(b, sign) / 2.0) > 0.5 + disk_tol;
}

// Inside Sigma_a: Re(conj(a) zeta) < |a|^2.
inline bool in_sigma(cplx a, cplx zeta, double margin = disk_tol) {
  return (std::conj(a) * zeta).real() < std::norm(a) - margin;
}

inline cplx z_of_zeta(cplx a, cplx zeta) {
  const cplx w = 1.0 - std::conj(a) * zeta;
  return w / std::abs(w);
}

inline MassPointZ mass_at(cplx a, cplx b, cplx omega, cplx zeta0) {
  if (!in_sigma(a, zeta0)) throw Error(ErrorCode::BoundaryZeta, "zeta0 not interior to Sigma_a");
  const double ra2 = 1.0 - std::norm(a);
  const double rb2 = 1.0 - std::norm(b);
  MassPointZ p;
  p.zeta0 = zeta0;
  p.z0 = z_of_zeta(a, zeta0);
  p.m = 0.5 * (1.0 - ra2 / std::norm(zeta0 - a)) / (1.0 + rb2 / std::norm(zeta0 - b));
  p.eta = -omega * (zeta0 - a) / std::abs(zeta0 - a);
  return p;
}

inline MassPointZ reflected(const MassPointZ& p) { return {-p.z0, p.zeta0, p.m, -p.eta}; }

inline ClassZ classify_line(cplx a, cplx b, cplx omega = 1.0) {
  ClassZ out;
  if (a == 0.0) return out;
  const bool plus = condition_m(a, b, +1);
  const bool minus = condition_m(a, b, -1);
  out.label = plus && minus ? LineLabel::M4 : plus ? LineLabel::M2plus : minus ? LineLabel::M2minus : LineLabel::M0;
  for (int sign : {+1, -1}) {
    if (!(sign > 0 ? plus : minus)) continue;
    const MassPointZ p = mass_at(a, b, omega, zeta_of(b, sign));
    out.points.push_back(p);
    out.points.push_back(reflected(p));
  }
  return out;
}

namespace detail {

// (1 - rho_a^2/|zeta - a|^2)^2, the prefactor of one pair of mass points.
inline double line_pair_weight(cplx a, cplx zeta) {
  const double t = 1.0 - (1.0 - std::norm(a)) / std::norm(zeta - a);
  return t * t;
}

inline bool sign_active(LineLabel l, int sign) {
  if (l == LineLabel::M4) return true;
  return sign > 0 ? l == LineLabel::M2plus : l == LineLabel::M2minus;
}

}  // namespace detail

// Contribution of the pair +-z_{sign} to the limiting return probability at
// the origin, for a qubit already in the rotated frame.
inline double arp_pair_line(cplx a, cplx b, cplx omega, const Qubit& hq, int sign) {
  const double s = std::sqrt(1.0 - b.imag() * b.imag());
  const double rb = rho(b);
  const double k = detail::line_pair_weight(a, zeta_of(b, sign));
  const double form = (std::norm(hq.alpha) - std::norm(hq.beta)) * b.real() +
                      2.0 * rb * (std::conj(omega * hq.alpha) * hq.beta).real();
  return 0.5 * k * (1.0 - sign * form / s);
}

// Same quantity from the mass and the projected amplitude.
inline double arp_pair_line_projected(cplx a, cplx b, cplx omega, const Qubit& hq, int sign) {
  const cplx zeta = zeta_of(b, sign);
  const double ra2 = 1.0 - std::norm(a);
  const double rb = rho(b);
  const double t = 1.0 - ra2 / std::norm(zeta - a);
  const double x = rb * rb / std::norm(zeta - b);
  const cplx proj = hq.alpha - hq.beta * std::conj(omega) * (std::conj(zeta) + b) / rb;
  return t * t / (1.0 + x) * std::norm(proj);
}

inline double arp_origin_line(cplx a, cplx b, cplx omega, const Qubit& hq) {
  if (a == 0.0) return 0.0;
  const ClassZ c = classify_line(a, b, omega);
  double p = 0.0;
  for (int sign : {+1, -1})
    if (detail::sign_active(c.label, sign)) p += arp_pair_line(a, b, omega, hq, sign);
  return p;
}

inline double arp_origin_line(const WalkSpec& spec, const Qubit& q) {
  const DefectParams dp = defect_params(spec);
  return arp_origin_line(dp.a, dp.b, dp.omega, hat_qubit(q.normalized(), 0, spec));
}

// Closed form for purely imaginary a and Im b < Im a.
inline double arp_imaginary_a(double im_a, double im_b) {
  const double v = 2.0 * im_a * (im_a - im_b) / (1.0 + im_a * im_a - 2.0 * im_a * im_b);
  return v * v;
}

// The rotated-frame qubit that avoids localization, when one exists.
inline std::optional<Qubit> nonlocalized_qubit_line(cplx a, cplx b, cplx omega) {
  const ClassZ c = classify_line(a, b, omega);
  if (c.label != LineLabel::M2plus && c.label != LineLabel::M2minus) return std::nullopt;
  const int sign = c.label == LineLabel::M2plus ? +1 : -1;
  const double s = std::sqrt(1.0 - b.imag() * b.imag());
  const cplx ratio = omega * rho(b) / (b.real() + sign * s);
  return Qubit{1.0, ratio}.normalized();
}

// p(origin) as a Hermitian form q^dagger Q q on rotated-frame qubits.
inline Mat2c arp_form_line(cplx a, cplx b, cplx omega) {
  Mat2c q = Mat2c::Zero();
  if (a == 0.0) return q;
  const ClassZ c = classify_line(a, b, omega);
  const double s = std::sqrt(1.0 - b.imag() * b.imag());
  const double rb = rho(b);
  Mat2c m;
  m << b.real(), rb * std::conj(omega), rb * omega, -b.real();
  for (int sign : {+1, -1}) {
    if (!detail::sign_active(c.label, sign)) continue;
    const double k = detail::line_pair_weight(a, zeta_of(b, sign));
    q += 0.5 * k * (Mat2c::Identity() - (sign / s) * m);
  }
  return q;
}

struct MaxArp {
  LineLabel label = LineLabel::M0;
  double sup = 0.0;          // over all qubits
  double lower_bound = 0.0;  // qubit with beta = i omega alpha
};

inline MaxArp max_arp(cplx a, cplx b, cplx omega) {
  MaxArp r;
  if (a == 0.0) return r;
  r.label = classify_line(a, b, omega).label;
  const Mat2c q = arp_form_line(a, b, omega);
  Eigen::SelfAdjointEigenSolver<Mat2c> es(q, Eigen::EigenvaluesOnly);
  r.sup = std::max(0.0, es.eigenvalues()(1));
  const Qubit probe = Qubit{1.0, I * omega}.normalized();
  r.lower_bound = arp_origin_line(a, b, omega, probe);
  return r;
}

// g(r z) near a branch point, for the boundary-exclusion scaling check.
inline double boundary_ratio(cplx a, cplx b, cplx z_branch, double one_minus_r) {
  const cplx g = g_ab(a, b, (1.0 - one_minus_r) * z_branch);
  return one_minus_r / std::abs(1.0 - g);
}

}  // namespace qwalk
