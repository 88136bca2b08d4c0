#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mimecloak {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// 2-D point / vector in model units.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
  Vec2 rotated(double angle) const {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * x - s * y, s * x + c * y};
  }
  // Polar angle in [0, 2pi).
  double angle() const {
    double a = std::atan2(y, x);
    return a < 0.0 ? a + kTwoPi : a;
  }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

// Row-major 2x2 matrix.
struct Mat2 {
  double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 rotation(double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c};
  }

  double det() const { return m00 * m11 - m01 * m10; }

  Vec2 operator*(Vec2 v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
            m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }
  Mat2 operator+(const Mat2& o) const {
    return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
  }
  Mat2 operator-(const Mat2& o) const {
    return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
  }
  Mat2 operator*(double s) const { return {m00 * s, m01 * s, m10 * s, m11 * s}; }
  Mat2 transposed() const { return {m00, m10, m01, m11}; }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

enum class ErrorCode {
  QueryAtVantage,
  DegeneratePiece,
  NotNested,
  Empty,
  OutsideCoating,
  DegenerateRay,
  NonFiniteSample,
  GeometryConflict,
  TagMismatch,
  SingularSystem,
  FactorizationFailure,
  ProbeOutsideDomain,
  ConfigMismatch,
  NoConvergence,
  ShiftSingular,
  InvalidArgument,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::QueryAtVantage: return "QueryAtVantage";
    case ErrorCode::DegeneratePiece: return "DegeneratePiece";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::OutsideCoating: return "OutsideCoating";
    case ErrorCode::DegenerateRay: return "DegenerateRay";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::GeometryConflict: return "GeometryConflict";
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::ProbeOutsideDomain: return "ProbeOutsideDomain";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ShiftSingular: return "ShiftSingular";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Execution policy for the data-parallel kernels. Serial is the reference
// path; Parallel runs the same per-item kernel under OpenMP and must produce
// bitwise-identical results.
enum class Execution { Serial, Parallel };

}  // namespace mimecloak
