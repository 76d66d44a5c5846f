#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwalk {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

enum class Lattice { Line, HalfLine };

inline const char* to_string(Lattice l) { return l == Lattice::Line ? "line" : "halfline"; }

enum class ErrorCode {
  NotUnitary,
  ReducibleCoin,
  InvalidArgument,
  SizeTooSmall,
  TruncationTooSmall,
  ZeroA,
  BoundaryZeta,
  BranchPoint,
  ParameterOutOfDisk,
  CuspParameter,
  BorderlineA,
  QuadratureNotConverged,
  TooLarge,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ReducibleCoin: return "ReducibleCoin";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SizeTooSmall: return "SizeTooSmall";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::ZeroA: return "ZeroA";
    case ErrorCode::BoundaryZeta: return "BoundaryZeta";
    case ErrorCode::BranchPoint: return "BranchPoint";
    case ErrorCode::ParameterOutOfDisk: return "ParameterOutOfDisk";
    case ErrorCode::CuspParameter: return "CuspParameter";
    case ErrorCode::BorderlineA: return "BorderlineA";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::TooLarge: return "TooLarge";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

  // Input problems, as opposed to numerical guards tripping.
  bool is_validation() const noexcept {
    return code_ == ErrorCode::NotUnitary || code_ == ErrorCode::ReducibleCoin ||
           code_ == ErrorCode::InvalidArgument || code_ == ErrorCode::ParameterOutOfDisk;
  }

 private:
  ErrorCode code_;
};

inline cplx unimodular(double phase) { return std::polar(1.0, phase); }

inline double rho(cplx a) { return std::sqrt(std::max(0.0, 1.0 - std::norm(a))); }

}  // namespace qwalk
