#include "braidrep/pillowcase.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "braidrep/errors.hpp"
#include "braidrep/solver.hpp"

namespace braidrep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCornerTol = 1e-9;
constexpr double kProductTol = 1e-9;
constexpr double kParallelTol = 1e-9;

// Representative of psi modulo 2 pi in (-pi, pi].
double wrap_psi(double psi) {
  double r = std::remainder(psi, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

RationalPi::RationalPi(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("RationalPi with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

double RationalPi::value() const {
  return static_cast<double>(num_) * kPi / static_cast<double>(den_);
}

std::string RationalPi::to_string() const {
  if (num_ == 0) return "0";
  std::string s;
  if (num_ == -1)
    s = "-pi";
  else if (num_ == 1)
    s = "pi";
  else
    s = std::to_string(num_) + "pi";
  if (den_ != 1) s += "/" + std::to_string(den_);
  return s;
}

PillowcasePoint make_pillowcase_point(double theta, double psi) {
  PillowcasePoint p;
  p.theta = theta;
  p.psi = wrap_psi(psi);
  for (const auto& c : pillowcase_corners())
    if (std::abs(p.theta - c.theta) <= kCornerTol && std::abs(wrap_psi(p.psi - c.psi)) <= kCornerTol)
      p.corner = true;
  return p;
}

const std::vector<Corner>& pillowcase_corners() {
  static const std::vector<Corner> corners = {
      {"A", 0.0, 0.0}, {"B", kPi, 0.0}, {"A′", 0.0, kPi}, {"B′", kPi, kPi}};
  return corners;
}

PillowcasePoint to_pillowcase(const RepTuple& X, const RepTuple& Y) {
  if (X.size() != 2 || Y.size() != 2) throw SizeMismatch("to_pillowcase needs two pairs");
  const Quaternion px = X[0].quat() * X[1].quat();
  const Quaternion py = Y[0].quat() * Y[1].quat();
  const double gap = distance(px, py);
  if (gap > kProductTol)
    throw NotAFixedPoint("to_pillowcase: products differ by " + std::to_string(gap));

  const Quaternion first = rotation_taking(X[1].vec(), Vec3::UnitX());
  const SpherePoint candidates[3] = {X[0], Y[0], Y[1]};
  int anchor = -1;
  Vec3 rotated[3];
  for (int c = 0; c < 3; ++c) {
    rotated[c] = conjugate_by(first, candidates[c]).vec();
    if (anchor < 0 && rotated[c].cross(Vec3::UnitX()).norm() > kParallelTol) anchor = c;
  }
  if (anchor < 0) throw ReducibleInput("to_pillowcase: all entries commute");
  const double alpha = -std::atan2(rotated[anchor].z(), rotated[anchor].y());
  const Quaternion spin = exp_so3(Vec3(alpha / 2.0, 0, 0));
  const Vec3 x1 = conjugate_by(spin, SpherePoint(rotated[0])).vec();
  const Vec3 y1 = conjugate_by(spin, SpherePoint(rotated[1])).vec();
  const double theta = std::atan2(std::max(x1.y(), 0.0), x1.x());
  return make_pillowcase_point(theta, std::atan2(y1.y(), y1.x()));
}

std::pair<RepTuple, RepTuple> from_pillowcase(double theta, double psi) {
  auto in_plane = [](double a) { return SpherePoint(std::cos(a), std::sin(a), 0.0); };
  return {RepTuple{in_plane(theta), SpherePoint::i()}, RepTuple{in_plane(psi), in_plane(psi - theta)}};
}

PillowLine graph_line(int k) {
  if (k < 1) throw std::invalid_argument("graph_line needs k >= 1");
  return PillowLine{2 * k + 1, RationalPi(-1)};
}

Intersections signed_intersections(const PillowLine& line) {
  const std::int64_t d = line.slope - 1;
  if (d == 0) throw std::invalid_argument("line is parallel to the diagonal");
  const std::int64_t p = line.intercept.num();
  const std::int64_t q = line.intercept.den();
  // theta = (2 m q - p) / (q d) * pi; keep 0 < 2 m q - p < q |d| after
  // absorbing the sign of d into m.
  const std::int64_t s = d > 0 ? 1 : -1;
  const std::int64_t ad = s * d;
  Intersections out;
  for (std::int64_t m = floor_div(s * p, 2 * q) - 1; 2 * m * q - s * p < q * ad; ++m) {
    const std::int64_t num = 2 * m * q - s * p;
    if (num <= 0) continue;
    const RationalPi theta(num, q * ad);
    out.points.push_back({theta, theta});
  }
  out.count = static_cast<int>(out.points.size());
  out.common_sign = static_cast<int>(s) * kOrientationCalibration;
  return out;
}

namespace {

constexpr double kMargin = 48.0;
constexpr double kWidth = 240.0;
constexpr double kHeight = 480.0;

double px(double theta) { return kMargin + theta / kPi * kWidth; }
double py(double psi) { return kMargin + (kPi - psi) / (2.0 * kPi) * kHeight; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

void segment(std::ostringstream& os, double t0, double s0, double t1, double s1, const char* cls) {
  os << "  <line class=\"" << cls << "\" x1=\"" << fmt(px(t0)) << "\" y1=\"" << fmt(py(s0))
     << "\" x2=\"" << fmt(px(t1)) << "\" y2=\"" << fmt(py(s1)) << "\"/>\n";
}

// Pieces of psi = a theta + c on [0, pi] x [-pi, pi], wrapping psi by 2 pi.
void wrapped_line(std::ostringstream& os, int slope, double c) {
  if (slope == 0) {
    const double psi = wrap_psi(c);
    segment(os, 0.0, psi, kPi, psi, "graph");
    return;
  }
  const double a = slope;
  const double lo = std::min(c, a * kPi + c);
  const double hi = std::max(c, a * kPi + c);
  const auto j_min = static_cast<int>(std::floor((lo + kPi) / (2.0 * kPi)));
  const auto j_max = static_cast<int>(std::ceil((hi - kPi) / (2.0 * kPi)));
  for (int j = j_min; j <= j_max; ++j) {
    const double shift = 2.0 * kPi * j;
    double t0 = (-kPi + shift - c) / a;
    double t1 = (kPi + shift - c) / a;
    if (t0 > t1) std::swap(t0, t1);
    t0 = std::max(t0, 0.0);
    t1 = std::min(t1, kPi);
    if (t1 - t0 <= 1e-12) continue;
    segment(os, t0, a * t0 + c - shift, t1, a * t1 + c - shift, "graph");
  }
}

}  // namespace

std::string render_svg(const std::vector<PillowLine>& lines, const std::vector<ExactPoint>& points) {
  const double w = kWidth + 2.0 * kMargin;
  const double h = kHeight + 2.0 * kMargin;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(w)
     << "\" height=\"" << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << ' ' << fmt(h) << "\">\n"
     << "  <title>The pillowcase</title>\n"
     << "  <style>\n"
     << "    .frame { fill: none; stroke: black; stroke-width: 1.5; }\n"
     << "    .diagonal { stroke: #1f5fbf; stroke-width: 1.5; }\n"
     << "    .graph { stroke: #bf3f1f; stroke-width: 1.5; }\n"
     << "    .dot { fill: black; }\n"
     << "    text { font-family: serif; font-size: 16px; }\n"
     << "  </style>\n";
  os << "  <rect class=\"frame\" x=\"" << fmt(px(0)) << "\" y=\"" << fmt(py(kPi)) << "\" width=\""
     << fmt(kWidth) << "\" height=\"" << fmt(kHeight) << "\"/>\n";
  os << "  <line class=\"frame\" x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
     << fmt(px(kPi)) << "\" y2=\"" << fmt(py(0)) << "\" stroke-dasharray=\"4 4\"/>\n";
  segment(os, 0.0, 0.0, kPi, kPi, "diagonal");
  for (const auto& l : lines) wrapped_line(os, l.slope, l.intercept.value());
  for (const auto& p : points)
    os << "  <circle class=\"dot\" cx=\"" << fmt(px(p.theta.value())) << "\" cy=\""
       << fmt(py(wrap_psi(p.psi.value()))) << "\" r=\"4\"/>\n";
  for (const auto& c : pillowcase_corners()) {
    const bool left = c.theta == 0.0;
    os << "  <circle class=\"frame\" cx=\"" << fmt(px(c.theta)) << "\" cy=\"" << fmt(py(c.psi))
       << "\" r=\"4\"/>\n"
       << "  <text x=\"" << fmt(px(c.theta) + (left ? -22.0 : 10.0)) << "\" y=\""
       << fmt(py(c.psi) + 5.0) << "\">" << c.label << "</text>\n";
  }
  os << "  <text x=\"" << fmt(px(kPi / 2) - 4.0) << "\" y=\"" << fmt(py(-kPi) + 28.0)
     << "\">θ</text>\n"
     << "  <text x=\"" << fmt(px(0) - 36.0) << "\" y=\"" << fmt(py(-kPi / 2)) << "\">ψ</text>\n"
     << "</svg>\n";
  return os.str();
}

void render_svg(const std::vector<PillowLine>& lines, const std::vector<ExactPoint>& points,
                const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << render_svg(lines, points);
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace braidrep
