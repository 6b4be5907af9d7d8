#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <numbers>
#include <sstream>

#include "braidrep/errors.hpp"
#include "braidrep/pillowcase.hpp"
#include "braidrep/solver.hpp"
#include "support.hpp"

using namespace braidrep;

namespace {

constexpr double kPi = std::numbers::pi;

BraidWord torus(int k) { return BraidWord(2, std::vector<Letter>(static_cast<std::size_t>(2 * k), {1, 1})); }

double wrap(double a) { return std::remainder(a, 2 * kPi); }

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("RationalPi normalizes and orders") {
  CHECK(RationalPi(2, 4) == RationalPi(1, 2));
  CHECK(RationalPi(1, -2) == RationalPi(-1, 2));
  CHECK(RationalPi(1, 6) < RationalPi(1, 2));
  CHECK(RationalPi(5, 6).to_string() == "5pi/6");
  CHECK(RationalPi(-1).to_string() == "-pi");
  CHECK(RationalPi(0, 3).to_string() == "0");
  CHECK(RationalPi(1, 2).value() == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(RationalPi(1, 0), std::invalid_argument);
}

TEST_CASE("to_pillowcase examples") {
  const RepTuple X{SpherePoint::j(), SpherePoint::i()};
  const PillowcasePoint p = to_pillowcase(X, X);
  CHECK(p.theta == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(p.psi == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK_FALSE(p.corner);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const RepTuple Z = testing_support::random_tuple(rng, 2);
    const PillowcasePoint q = to_pillowcase(Z, Z);
    CHECK(std::abs(wrap(q.psi - q.theta)) < 1e-12);
  }
}

TEST_CASE("from_pillowcase and to_pillowcase are inverse on the interior") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> th(0.05, kPi - 0.05), ps(-kPi + 0.05, kPi - 0.05);
  for (int t = 0; t < 100; ++t) {
    const double theta = th(rng), psi = ps(rng);
    const auto [X, Y] = from_pillowcase(theta, psi);
    CHECK(distance(product_holonomy(X), product_holonomy(Y)) < 1e-14);
    const PillowcasePoint p = to_pillowcase(X, Y);
    CHECK(p.theta == doctest::Approx(theta).epsilon(1e-12));
    CHECK(p.psi == doctest::Approx(psi).epsilon(1e-12));

    const Quaternion A = sample_unit_quaternion(rng);
    const PillowcasePoint c = to_pillowcase(conjugate_by(A, X), conjugate_by(A, Y));
    CHECK(std::abs(c.theta - p.theta) < 1e-9);
    CHECK(std::abs(wrap(c.psi - p.psi)) < 1e-9);
  }
}

TEST_CASE("to_pillowcase errors and corners") {
  CHECK_THROWS_AS(to_pillowcase(RepTuple{SpherePoint::i(), SpherePoint::i()}, RepTuple{SpherePoint::i(), SpherePoint::i()}),
                  ReducibleInput);
  CHECK_THROWS_AS(to_pillowcase(RepTuple{SpherePoint::j(), SpherePoint::i()}, RepTuple{SpherePoint::k(), SpherePoint::i()}),
                  NotAFixedPoint);
  CHECK_THROWS_AS(to_pillowcase(RepTuple::all_i(3), RepTuple::all_i(2)), SizeMismatch);
  CHECK(make_pillowcase_point(0, 0).corner);
  CHECK(make_pillowcase_point(kPi, -kPi).corner);
  CHECK(make_pillowcase_point(0, kPi).corner);
  CHECK_FALSE(make_pillowcase_point(kPi / 2, kPi).corner);
  CHECK(make_pillowcase_point(1.0, -kPi).psi == doctest::Approx(kPi));
  CHECK(pillowcase_corners().size() == 4);
}

TEST_CASE("graph_line examples") {
  CHECK(graph_line(1).slope == 3);
  CHECK(graph_line(1).intercept == RationalPi(-1));
  CHECK(graph_line(2).slope == 5);
  CHECK_THROWS_AS(graph_line(0), std::invalid_argument);
}

TEST_CASE("the graph of sigma_1^{2k} lies on graph_line(k)") {
  const SignVector eps({-1, -1});
  for (int k = 1; k <= 5; ++k) {
    const PillowLine line = graph_line(k);
    for (int s = 1; s <= 20; ++s) {
      const double theta = kPi * s / 21.0;
      const RepTuple X = from_pillowcase(theta, theta).first;
      const RepTuple Y = act_signed(eps, torus(k), X);
      const PillowcasePoint p = to_pillowcase(X, Y);
      CHECK(p.theta == doctest::Approx(theta).epsilon(1e-12));
      CHECK(std::abs(wrap(p.psi - (line.slope * theta + line.intercept.value()))) < 1e-9);
    }
  }
}

TEST_CASE("signed_intersections examples") {
  const Intersections one = signed_intersections(graph_line(1));
  CHECK(one.count == 1);
  CHECK(one.points.at(0).theta == RationalPi(1, 2));
  CHECK(one.common_sign == 1);

  const Intersections three = signed_intersections(graph_line(3));
  REQUIRE(three.count == 3);
  CHECK(three.points[0].theta == RationalPi(1, 6));
  CHECK(three.points[1].theta == RationalPi(1, 2));
  CHECK(three.points[2].theta == RationalPi(5, 6));
  for (const auto& p : three.points) CHECK(p.psi == p.theta);

  for (int k = 1; k <= 12; ++k) {
    const Intersections r = signed_intersections(graph_line(k));
    CHECK(r.count == k);
    CHECK(r.count == std::abs(linking_number(torus(k))));
    for (int m = 0; m < k; ++m) CHECK(r.points[static_cast<std::size_t>(m)].theta == RationalPi(2 * m + 1, 2 * k));
  }
  CHECK_THROWS_AS(signed_intersections(PillowLine{1, RationalPi(1, 3)}), std::invalid_argument);
  const Intersections neg = signed_intersections(PillowLine{-3, RationalPi(1)});
  CHECK(neg.common_sign == -1);
  CHECK(neg.count == 2);
}

TEST_CASE("solver classes of sigma_1^{2k} match the exact intersections") {
  SolverConfig cfg;
  for (int k = 1; k <= 5; ++k) {
    const HResult r = compute_h(torus(k), std::nullopt, cfg);
    const Intersections exact = signed_intersections(graph_line(k));
    REQUIRE(static_cast<int>(r.classes.size()) == exact.count);
    std::vector<double> thetas;
    for (const auto& c : r.classes) {
      const RepTuple Y = act_signed(r.epsilon, r.braid, c.representative);
      const PillowcasePoint p = to_pillowcase(c.representative, Y);
      thetas.push_back(p.theta);
      CHECK(to_int(c.sign) == exact.common_sign);
    }
    std::sort(thetas.begin(), thetas.end());
    for (int m = 0; m < k; ++m)
      CHECK(std::abs(thetas[static_cast<std::size_t>(m)] - exact.points[static_cast<std::size_t>(m)].theta.value()) < 1e-8);
  }
}

TEST_CASE("render_svg output") {
  const std::string empty = render_svg({}, {});
  CHECK(empty.find("<rect") != std::string::npos);
  CHECK(empty.find("class=\"diagonal\"") != std::string::npos);
  CHECK(empty.find("class=\"graph\"") == std::string::npos);
  CHECK(empty.find("class=\"dot\"") == std::string::npos);

  const PillowLine line = graph_line(1);
  const Intersections hits = signed_intersections(line);
  const std::string fig = render_svg({line}, hits.points);
  CHECK(fig == render_svg({line}, hits.points));
  for (const char* label : {">A<", ">B<", ">A′<", ">B′<"}) CHECK(fig.find(label) != std::string::npos);
  CHECK(fig.find("version=\"1.1\"") != std::string::npos);
  std::size_t pieces = 0;
  for (std::size_t pos = fig.find("class=\"graph\""); pos != std::string::npos; pos = fig.find("class=\"graph\"", pos + 1))
    ++pieces;
  // psi = 3 theta - pi over [0, pi] sweeps [-pi, 2 pi]: two pieces after wrapping.
  CHECK(pieces == 2);
  CHECK(fig == read_file(BRAIDREP_TEST_DATA "/pillowcase_k1.svg"));

  const std::string path = "pillowcase_test_output.svg";
  render_svg({line}, hits.points, path);
  CHECK(read_file(path) == fig);
  CHECK_THROWS_AS(render_svg({line}, hits.points, "/nonexistent-dir/x.svg"), std::runtime_error);
}
