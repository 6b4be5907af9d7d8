#pragma once

// Two-strand geometry. After conjugation a pair (X, Y) of points of (S^2)^2
// with X_1 X_2 = Y_1 Y_2 takes the form
//   X_1 = i e^{-k theta}, X_2 = i, Y_1 = i e^{-k psi}, Y_2 = i e^{-k (psi - theta)}
// and (theta, psi) in [0, pi] x (-pi, pi] are its pillowcase coordinates.

#include <cstdint>
#include <string>
#include <vector>

#include "braidrep/action.hpp"

namespace braidrep {

// num/den * pi, kept in lowest terms with den > 0.
class RationalPi {
 public:
  RationalPi() = default;
  RationalPi(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const;
  std::string to_string() const;  // "pi/2", "-pi", "5pi/6", "0"

  friend bool operator==(const RationalPi&, const RationalPi&) = default;
  friend auto operator<=>(const RationalPi& a, const RationalPi& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct PillowcasePoint {
  double theta = 0.0;
  double psi = 0.0;
  bool corner = false;  // within 1e-9 of A, B, A', B'
};

PillowcasePoint make_pillowcase_point(double theta, double psi);

// Points A = (0, 0), B = (pi, 0), A' = (0, pi), B' = (pi, pi).
struct Corner {
  const char* label;
  double theta;
  double psi;
};
const std::vector<Corner>& pillowcase_corners();

// psi = slope * theta + intercept (mod 2 pi).
struct PillowLine {
  int slope = 1;
  RationalPi intercept;
};

// Throws ReducibleInput, SizeMismatch, or NotAFixedPoint when the products differ
// by more than 1e-9.
PillowcasePoint to_pillowcase(const RepTuple& X, const RepTuple& Y);
// The normal-form tuples (X, Y) with the given coordinates.
std::pair<RepTuple, RepTuple> from_pillowcase(double theta, double psi);

// The graph of (-1, -1) sigma_1^{2k}. Throws std::invalid_argument for k < 1.
PillowLine graph_line(int k);

struct ExactPoint {
  RationalPi theta;
  RationalPi psi;
};

struct Intersections {
  int count = 0;
  std::vector<ExactPoint> points;  // increasing theta
  int common_sign = 0;
};

// Solutions of slope * theta + intercept = theta (mod 2 pi) with
// 0 < theta < pi. Throws std::invalid_argument when slope = 1.
Intersections signed_intersections(const PillowLine& line);

std::string render_svg(const std::vector<PillowLine>& lines, const std::vector<ExactPoint>& points);
// Throws std::runtime_error on I/O failure.
void render_svg(const std::vector<PillowLine>& lines, const std::vector<ExactPoint>& points,
                const std::string& path);

}  // namespace braidrep
