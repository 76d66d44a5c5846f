#pragma once

#include <optional>
#include <vector>

#include "coin.hpp"
#include "curves.hpp"
#include "loc_line.hpp"
#include "schur.hpp"

namespace qwalk {

struct SigmaArc {
  cplx direction;  // a/|a|
  double t_lo;
  double t_hi;

  cplx at(double t) const { return direction * unimodular(t); }
  cplx lower_end() const { return at(t_lo); }  // (a/|a|)(|a| + i rho_a)
  cplx upper_end() const { return at(t_hi); }  // (a/|a|)(|a| - i rho_a)
};

inline SigmaArc sigma_arc(cplx a) {
  if (a == 0.0) throw Error(ErrorCode::ZeroA, "Sigma_a needs a != 0");
  const double t0 = std::acos(std::abs(a));
  return {a / std::abs(a), t0, 2 * pi - t0};
}

enum class GammaSide { GammaPlus, GammaMinus };

inline const char* to_string(GammaSide s) { return s == GammaSide::GammaPlus ? "gamma_plus" : "gamma_minus"; }

struct MassPointZplus {
  cplx z0;
  cplx zeta0;
  GammaSide side = GammaSide::GammaPlus;
  double mu = 0.0;
};

// (zeta - b)^2 / (zeta - a): real negative on the Gamma+ family, real positive on Gamma-.
inline cplx family_quotient(cplx a, cplx b, cplx zeta) { return (zeta - b) * (zeta - b) / (zeta - a); }

inline double halfline_mass(cplx a, cplx b, cplx zeta0) {
  if (!in_sigma(a, zeta0)) throw Error(ErrorCode::BoundaryZeta, "zeta0 not interior to Sigma_a");
  const double xa = (1.0 - std::norm(a)) / std::norm(zeta0 - a);
  const double xb = (1.0 - std::norm(b)) / std::norm(zeta0 - b);
  return 1.0 / (1.0 + 2.0 * xb / (1.0 - xa));
}

struct RootSearch {
  int grid = 4096;
  double t_margin = 1e-9;
  double t_tol = 1e-14;
};

inline std::vector<MassPointZplus> halfline_roots(cplx a, cplx b, const RootSearch& opt = {}) {
  std::vector<MassPointZplus> out;
  if (a == 0.0) return out;
  const SigmaArc arc = sigma_arc(a);
  const double lo = arc.t_lo + opt.t_margin;
  const double hi = arc.t_hi - opt.t_margin;
  auto im_q = [&](double t) { return family_quotient(a, b, arc.at(t)).imag(); };
  std::vector<double> ts;
  double t_prev = lo;
  double v_prev = im_q(lo);
  if (v_prev == 0.0) ts.push_back(lo);
  for (int i = 1; i <= opt.grid; ++i) {
    const double t = lo + (hi - lo) * i / opt.grid;
    const double v = im_q(t);
    if (v == 0.0) {
      ts.push_back(t);
    } else if (v_prev != 0.0 && (v > 0) != (v_prev > 0)) {
      double l = t_prev, r = t;
      const bool l_pos = v_prev > 0;
      while (r - l > opt.t_tol) {
        const double m = 0.5 * (l + r);
        if (m <= l || m >= r) break;
        const double vm = im_q(m);
        if (vm == 0.0) {
          l = r = m;
          break;
        }
        ((vm > 0) == l_pos ? l : r) = m;
      }
      ts.push_back(0.5 * (l + r));
    }
    t_prev = t;
    v_prev = v;
  }
  for (double t : ts) {
    const cplx zeta = arc.at(t);
    const bool plus = family_quotient(a, b, zeta).real() < 0;
    const cplx z = z_of_zeta(a, zeta);
    out.push_back({plus ? z : -z, zeta, plus ? GammaSide::GammaPlus : GammaSide::GammaMinus, halfline_mass(a, b, zeta)});
  }
  return out;
}

// Region where localization is guaranteed for every a-direction: Re(conj(a) b) < |a|^2.
inline bool in_s_region(cplx a, cplx b) { return (std::conj(a) * b).real() < std::norm(a); }

enum class ArpMode { Sequence, Cesaro };

// Atomic part of the return amplitudes at the origin, one term per mass point.
struct HalflineAsymptotics {
  struct Term {
    cplx z;
    cplx up;    // coefficient of z^n in the up amplitude
    cplx down;  // coefficient of z^n in the down amplitude
  };
  std::vector<Term> terms;

  double at(long n) const {
    cplx u = 0.0, d = 0.0;
    for (const Term& t : terms) {
      const cplx zn = std::pow(t.z, static_cast<double>(n));
      u += zn * t.up;
      d += zn * t.down;
    }
    return std::norm(u) + std::norm(d);
  }
  double cesaro() const {
    double s = 0.0;
    for (const Term& t : terms) s += std::norm(t.up) + std::norm(t.down);
    return s;
  }
  // The limit exists when at most one mass point contributes.
  std::optional<double> limit() const {
    if (terms.size() > 1) return std::nullopt;
    return cesaro();
  }
};

inline HalflineAsymptotics halfline_asymptotics(cplx a, cplx b, const Qubit& hq) {
  HalflineAsymptotics out;
  const double rb = rho(b);
  for (const MassPointZplus& r : halfline_roots(a, b)) {
    const cplx up = r.mu * (hq.alpha - hq.beta * rb / std::conj(r.zeta0 - b));
    const cplx down = -rb / (r.zeta0 - b) * up;
    out.terms.push_back({r.z0, up, down});
  }
  return out;
}

inline double arp_origin_halfline(cplx a, cplx b, const Qubit& hq, ArpMode mode = ArpMode::Cesaro, long n = 0) {
  const HalflineAsymptotics s = halfline_asymptotics(a, b, hq);
  return mode == ArpMode::Cesaro ? s.cesaro() : s.at(n);
}

inline double arp_origin_halfline(const WalkSpec& spec, const Qubit& q, ArpMode mode = ArpMode::Cesaro, long n = 0) {
  const DefectParams dp = defect_params(spec);
  return arp_origin_halfline(dp.a, dp.b, hat_qubit(q.normalized(), 0, spec), mode, n);
}

// Rotated-frame qubit that avoids localization when exactly one mass point exists.
inline std::optional<Qubit> nonlocalized_qubit_halfline(cplx a, cplx b) {
  const auto roots = halfline_roots(a, b);
  if (roots.size() != 1) return std::nullopt;
  return Qubit{1.0, std::conj(roots[0].zeta0 - b) / rho(b)}.normalized();
}

// Direction of the family line through zeta; sign +1 is the Gamma+ family.
inline cplx family_direction(cplx a, cplx zeta, int sign) {
  const cplx r = std::sqrt(zeta - a);
  return sign > 0 ? I * r : r;
}

// Point of contact of the family line through zeta(t) with its envelope.
inline cplx envelope_point(cplx a, double t, int sign) {
  if (a == 0.0) throw Error(ErrorCode::ZeroA, "envelope needs a != 0");
  const cplx zeta = (a / std::abs(a)) * unimodular(t);
  const cplx A = zeta - a;
  const double m = std::abs(A);
  const cplx x = sign > 0 ? A + m : A - m;
  const cplx y = std::conj(zeta) + (sign > 0 ? 1.0 : -1.0) * I * (std::conj(a) * zeta).imag() / m;
  const double den = (x * y).real();
  if (std::abs(den) < 1e-12) throw Error(ErrorCode::CuspParameter, "degenerate envelope parameter");
  return zeta + I * ((x * std::conj(zeta)).imag() / den) * x;
}

struct Chord {
  cplx from;
  cplx to;
  int family;
};

inline std::vector<Chord> limit_lines(cplx a) {
  const SigmaArc arc = sigma_arc(a);
  const cplx za = branch_point(a);
  const cplx p = arc.lower_end();
  const cplx m = arc.upper_end();
  return {{p, za, +1}, {p, -za, -1}, {m, std::conj(za), +1}, {m, -std::conj(za), -1}};
}

enum class LLabel { L0, L1, L2, Borderline };

inline const char* to_string(LLabel l) {
  switch (l) {
    case LLabel::L0: return "L0";
    case LLabel::L1: return "L1";
    case LLabel::L2: return "L2";
    case LLabel::Borderline: return "borderline";
  }
  return "?";
}

enum class TangentProfile { T0p1, T1p1, T1p2, T1p1bar, T1p2bar, T1p1p1bar };

inline const char* to_string(TangentProfile p) {
  switch (p) {
    case TangentProfile::T0p1: return "Te^{0+1}";
    case TangentProfile::T1p1: return "Te^{1+1}";
    case TangentProfile::T1p2: return "Te^{1+2}";
    case TangentProfile::T1p1bar: return "Te^{1+1bar}";
    case TangentProfile::T1p2bar: return "Te^{1+2bar}";
    case TangentProfile::T1p1p1bar: return "Te^{1+1 1bar}";
  }
  return "?";
}

struct TangentCount {
  int full = 0;           // tangencies of the whole envelope with the circle
  int exterior_plus = 0;  // exterior tangencies on the Gamma+ family envelope
  int exterior_minus = 0;
  int exterior() const { return exterior_plus + exterior_minus; }
};

// Tangency points zeta solve Im(zeta - conj(a) zeta^2) = 0; the exterior ones lie in Sigma_a.
inline TangentCount tangent_count(cplx a, int samples = 4096) {
  TangentCount out;
  auto f = [&](double t) {
    const cplx z = unimodular(t);
    return (z - std::conj(a) * z * z).imag();
  };
  const double h = 2 * pi / samples;
  for (int i = 0; i < samples; ++i) {
    double l = i * h, r = l + h;
    double fl = f(l);
    const double fr = f(r);
    if (fl == 0.0) {
      r = l;
    } else if ((fl > 0) == (fr > 0)) {
      continue;
    } else {
      while (r - l > 1e-15) {
        const double m = 0.5 * (l + r);
        if (m <= l || m >= r) break;
        const double fm = f(m);
        if ((fm > 0) == (fl > 0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
    }
    const cplx zeta = unimodular(0.5 * (l + r));
    ++out.full;
    if (!in_sigma(a, zeta, 1e-12)) continue;
    if ((zeta * zeta / (zeta - a)).real() > 0)
      ++out.exterior_plus;
    else
      ++out.exterior_minus;
  }
  return out;
}

struct RegionClassZplus {
  LLabel label = LLabel::L0;
  TangentProfile profile = TangentProfile::T1p2;
  std::vector<Chord> limit_lines;
  int crossing_lines = 0;
  int epitrochoid_winding = 0;
  int epicycloid_winding = 0;
  TangentCount tangents;
  double distance_to_epitrochoid = 0.0;
  bool consistent = true;  // the three independent counts agree
};

inline constexpr double borderline_tol = 1e-9;

// Number of limit lines crossing the open arc complementary to Sigma_a.
inline int crossing_limit_lines(cplx a, const std::vector<Chord>& chords) {
  const SigmaArc arc = sigma_arc(a);
  int count = 0;
  int coincident = 0;
  for (const Chord& c : chords) {
    const cplx other = std::abs(c.from - arc.lower_end()) < std::abs(c.from - arc.upper_end()) ? arc.upper_end()
                                                                                                  : arc.lower_end();
    if (std::abs(c.to - other) < borderline_tol)
      ++coincident;  // the chord joins the two ends of Sigma_a
    else if ((std::conj(a) * c.to).real() - std::norm(a) > disk_tol)
      ++count;
  }
  // For imaginary a two limit lines coincide with the chord between the ends
  // of Sigma_a; nearby a has exactly one of them crossing, so count the pair once.
  return count + (coincident > 0 ? 1 : 0);
}

inline RegionClassZplus classify_region_halfline(cplx a) {
  if (a == 0.0) throw Error(ErrorCode::ZeroA, "classification needs a != 0");
  RegionClassZplus r;
  r.limit_lines = limit_lines(a);
  r.crossing_lines = crossing_limit_lines(a, r.limit_lines);
  const ClosedCurve trochoid = epitrochoid();
  r.epitrochoid_winding = winding_number(trochoid, a);
  r.epicycloid_winding = winding_number(epicycloid(), a);
  r.tangents = tangent_count(a);
  const NearestPoint near = nearest_on_curve(trochoid, a);
  r.distance_to_epitrochoid = near.distance;
  if (near.distance < borderline_tol) {
    r.label = LLabel::Borderline;
    const double self = 1.0 / std::sqrt(2.0);
    if (std::min(std::abs(a - self), std::abs(a + self)) < 1e-6) {
      r.profile = TangentProfile::T1p2bar;
    } else {
      // The loops are traced for t within pi/4 of 0 or pi.
      const double t = near.t;
      const double d = std::min({t, std::abs(t - pi), 2 * pi - t});
      r.profile = d < pi / 4 ? TangentProfile::T1p1bar : TangentProfile::T1p1p1bar;
    }
    return r;
  }
  static constexpr LLabel by_count[] = {LLabel::L0, LLabel::L1, LLabel::L2};
  r.label = by_count[std::clamp(r.crossing_lines, 0, 2)];
  const int e = r.tangents.exterior();
  r.profile = e <= 1 ? TangentProfile::T0p1 : e == 2 ? TangentProfile::T1p1 : TangentProfile::T1p2;
  const int expected_full = r.epicycloid_winding != 0 ? 2 : 4;
  r.consistent = r.crossing_lines <= 2 && r.epitrochoid_winding == r.crossing_lines && e == 3 - r.crossing_lines &&
                 r.tangents.full == expected_full;
  return r;
}

}  // namespace qwalk
