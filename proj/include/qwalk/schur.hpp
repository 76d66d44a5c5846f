#pragma once

#include <Eigen/Dense>
#include <concepts>
#include <span>

#include "core.hpp"

namespace qwalk {

template <std::floating_point T>
std::complex<T> delta_a(std::complex<T> a, std::complex<T> z) {
  const std::complex<T> z2 = z * z;
  return (z2 - T(1)) * (z2 - T(1)) + T(4) * std::norm(a) * z2;
}

// z_a = rho_a + i|a|; the four branch points are +-z_a and +-conj(z_a).
template <std::floating_point T>
std::complex<T> branch_point(std::complex<T> a) {
  return {std::sqrt(std::max(T(0), T(1) - std::norm(a))), std::abs(a)};
}

// Analytic square root of delta_a on the disk with value 1 at the origin,
// continuous up to the circle. delta_a(z) = (1 - z^2 conj(z_a)^2)(1 - z^2 z_a^2)
// and each factor has positive real part on the disk. Only z^2 enters, so the
// result is exactly even.
template <std::floating_point T>
std::complex<T> sqrt_delta_a(std::complex<T> a, std::complex<T> z) {
  const std::complex<T> za = branch_point(a);
  const std::complex<T> w = z * z;
  return std::sqrt(T(1) - w * std::conj(za * za)) * std::sqrt(T(1) - w * za * za);
}

// Schur function with constant coefficients (a, 0, a, 0, ...). Written with
// the conjugate radical so z = 0 needs no special case.
template <std::floating_point T>
std::complex<T> f_a(std::complex<T> a, std::complex<T> z) {
  if (a == std::complex<T>{}) throw Error(ErrorCode::ZeroA, "f_a needs a != 0");
  return T(2) * a / (sqrt_delta_a(a, z) + T(1) - z * z);
}

// Closed form on the unit circle.
template <std::floating_point T>
std::complex<T> f_a_boundary(std::complex<T> a, T theta) {
  if (a == std::complex<T>{}) throw Error(ErrorCode::ZeroA, "f_a needs a != 0");
  const T s = std::sin(theta);
  const T c = std::cos(theta);
  const T ma2 = std::norm(a);
  std::complex<T> r;
  if (s * s <= ma2)
    r = (c >= T(0) ? T(1) : T(-1)) * std::sqrt(ma2 - s * s);
  else
    r = std::complex<T>(0, s >= T(0) ? T(-1) : T(1)) * std::sqrt(s * s - ma2);
  return std::polar(T(1), -theta) / std::conj(a) * (r + std::complex<T>(0, s));
}

template <std::floating_point T>
std::complex<T> prepend_parameter(std::complex<T> b, std::complex<T> z2fa) {
  return (z2fa + b) / (T(1) + std::conj(b) * z2fa);
}

// Schur function with coefficients (b, 0, a, 0, a, ...).
template <std::floating_point T>
std::complex<T> f_ab(std::complex<T> a, std::complex<T> b, std::complex<T> z) {
  return prepend_parameter(b, z * z * f_a(a, z));
}

template <std::floating_point T>
std::complex<T> f_ab_boundary(std::complex<T> a, std::complex<T> b, T theta) {
  const std::complex<T> z = std::polar(T(1), theta);
  return prepend_parameter(b, z * z * f_a_boundary(a, theta));
}

template <std::floating_point T>
void check_parameter(std::complex<T> alpha) {
  if (!(std::abs(alpha) < T(1))) throw Error(ErrorCode::ParameterOutOfDisk, "|alpha| >= 1");
}

// f_{k+1} from f_k at one point.
template <std::floating_point T>
std::complex<T> schur_step(std::complex<T> fk, std::complex<T> alpha, std::complex<T> z) {
  check_parameter(alpha);
  return (fk - alpha) / (z * (T(1) - std::conj(alpha) * fk));
}

template <std::floating_point T>
std::complex<T> schur_inverse_step(std::complex<T> fk1, std::complex<T> alpha, std::complex<T> z) {
  check_parameter(alpha);
  return (z * fk1 + alpha) / (T(1) + std::conj(alpha) * z * fk1);
}

// Schur function of a finite parameter stream followed by f_tail.
template <std::floating_point T>
std::complex<T> schur_from_parameters(std::span<const std::complex<T>> alphas, std::complex<T> f_tail,
                                      std::complex<T> z) {
  std::complex<T> f = f_tail;
  for (auto it = alphas.rbegin(); it != alphas.rend(); ++it) f = schur_inverse_step(f, *it, z);
  return f;
}

template <std::floating_point T>
std::complex<T> g_ab(std::complex<T> a, std::complex<T> b, std::complex<T> z) {
  const std::complex<T> z2fa = z * z * f_a(a, z);
  return z2fa * prepend_parameter(b, z2fa);
}

template <std::floating_point T>
std::complex<T> h_ab(std::complex<T> a, std::complex<T> b, std::complex<T> z) {
  return z * f_ab(a, b, z);
}

template <std::floating_point T>
bool in_gamma(std::complex<T> a, T theta) {
  return std::abs(std::sin(theta)) <= std::abs(a);
}

namespace detail {

template <std::floating_point T>
void check_branch(std::complex<T> a, T theta) {
  if (std::abs(std::abs(std::sin(theta)) - std::abs(a)) < T(1e-14))
    throw Error(ErrorCode::BranchPoint, "theta at an endpoint of Gamma_a");
}

}  // namespace detail

// Density of the absolutely continuous part of mu_{a,b} (rotated frame, half-line).
// Integrators call this directly: their nodes may sit within roundoff of a
// branch point, where the density is still finite.
template <std::floating_point T>
T halfline_weight_unchecked(std::complex<T> a, std::complex<T> b, T theta) {
  if (in_gamma(a, theta)) return T(0);
  const std::complex<T> h = std::polar(T(1), theta) * f_ab_boundary(a, b, theta);
  return std::max(T(0), (T(1) - std::norm(h)) / std::norm(T(1) - h));
}

template <std::floating_point T>
T halfline_weight(std::complex<T> a, std::complex<T> b, T theta) {
  detail::check_branch(a, theta);
  return halfline_weight_unchecked(a, b, theta);
}

using Mat2c = Eigen::Matrix2cd;

// 2x2 Caratheodory function of the line measure (rotated frame).
inline Mat2c caratheodory_from_schur(cplx omega, cplx z, cplx fa, cplx fab) {
  const cplx g = z * z * fa * fab;
  const cplx f_plus = std::conj(omega) * fab;
  const cplx f_minus = omega * fa;
  Mat2c F;
  F << 1.0 + g, 2.0 * z * f_minus, 2.0 * z * f_plus, 1.0 + g;
  return F / (1.0 - g);
}

inline Mat2c line_caratheodory(cplx a, cplx b, cplx omega, cplx z) {
  return caratheodory_from_schur(omega, z, f_a(a, z), f_ab(a, b, z));
}

inline Mat2c line_weight_unchecked(cplx a, cplx b, cplx omega, double theta) {
  if (in_gamma(a, theta)) return Mat2c::Zero();
  const cplx z = std::polar(1.0, theta);
  const Mat2c F = caratheodory_from_schur(omega, z, f_a_boundary(a, theta), f_ab_boundary(a, b, theta));
  return (F + F.adjoint()) / 2.0;
}

inline Mat2c line_weight(cplx a, cplx b, cplx omega, double theta) {
  detail::check_branch(a, theta);
  return line_weight_unchecked(a, b, omega, theta);
}

}  // namespace qwalk
