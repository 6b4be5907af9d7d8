#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>

#include "braidrep/errors.hpp"
#include "braidrep/solver.hpp"
#include "support.hpp"

using namespace braidrep;
using testing_support::random_tuple;

namespace {

const RepTuple kHopfPoint{SpherePoint::j(), SpherePoint::i()};
const SignVector kMinus2({-1, -1});

BraidWord torus(int k) { return BraidWord(2, std::vector<Letter>(static_cast<std::size_t>(2 * k), {1, 1})); }

SolverConfig config(int starts = 0) {
  SolverConfig c;
  c.starts = starts;
  return c;
}

}  // namespace

TEST_CASE("residual examples") {
  CHECK(residual(kMinus2, torus(1), kHopfPoint).norm() < 1e-14);
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const RepTuple X = random_tuple(rng, 2);
    CHECK(residual(kMinus2, BraidWord::identity(2), X).norm() == doctest::Approx(std::sqrt(8.0)));
    CHECK(residual(SignVector::ones(2), BraidWord::identity(2), X).norm() < 1e-15);
  }
}

TEST_CASE("refine converges from nearby starts and returns at once from a fixed point") {
  const SolverConfig cfg = config();
  const RefineResult exact = refine(kMinus2, torus(1), kHopfPoint, cfg);
  CHECK(exact.converged);
  CHECK(exact.iterations == 0);

  std::mt19937_64 rng(2);
  const auto target = fingerprint(kHopfPoint);
  for (int t = 0; t < 20; ++t) {
    std::vector<SpherePoint> pts;
    for (int s = 0; s < 2; ++s) {
      const Vec3 noise = random_tuple(rng, 1)[0].vec() * 0.05;
      pts.emplace_back(kHopfPoint[s].vec() + noise);
    }
    const RepTuple start(std::move(pts));
    CHECK(max_distance(start, kHopfPoint) < 0.1);
    const RefineResult r = refine(kMinus2, torus(1), start, cfg);
    CHECK(r.converged);
    CHECK(r.residual_norm <= cfg.residual_tol);
    CHECK(fingerprint_distance(fingerprint(r.point), target) < 1e-8);
  }
}

TEST_CASE("refine never converges for the split link") {
  std::mt19937_64 rng(3);
  const SolverConfig cfg = config();
  for (int t = 0; t < 50; ++t) CHECK_FALSE(refine(kMinus2, BraidWord::identity(2), random_tuple(rng, 2), cfg).converged);
}

TEST_CASE("is_irreducible examples") {
  CHECK_FALSE(is_irreducible(RepTuple::all_i(2)).irreducible);
  const Irreducibility hopf = is_irreducible(kHopfPoint);
  CHECK(hopf.irreducible);
  CHECK(hopf.margin == doctest::Approx(2.0));
  CHECK_FALSE(is_irreducible(RepTuple{SpherePoint::i(), -SpherePoint::i()}).irreducible);
  CHECK_FALSE(is_irreducible(RepTuple{SpherePoint::i(), SpherePoint(1, 1e-7, 0)}).irreducible);
}

TEST_CASE("gauge_fix examples") {
  const RepTuple g = gauge_fix(kHopfPoint);
  CHECK(max_distance(g, RepTuple{SpherePoint::i(), SpherePoint::j()}) < 1e-15);
  CHECK(fingerprint_distance(fingerprint(g), fingerprint(kHopfPoint)) < 1e-15);
  const RepTuple canon{SpherePoint::i(), SpherePoint(0.3, 0.8, 0), SpherePoint::k()};
  CHECK(max_distance(gauge_fix(canon), canon) < 1e-15);
  CHECK(max_distance(gauge_fix(RepTuple{-SpherePoint::i(), SpherePoint::k()}), RepTuple{SpherePoint::i(), SpherePoint::j()}) < 1e-12);
  CHECK_THROWS_AS(gauge_fix(RepTuple{SpherePoint::k(), -SpherePoint::k()}), ReducibleInput);
}

TEST_CASE("gauge_fix and fingerprint are conjugation invariant") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const int n = testing_support::uniform(rng, 2, 5);
    const RepTuple X = random_tuple(rng, n);
    const RepTuple Y = conjugate_by(sample_unit_quaternion(rng), X);
    const RepTuple g = gauge_fix(X);
    CHECK(max_distance(gauge_fix(Y), g) < 1e-9);
    CHECK((g[0].vec() - Vec3::UnitX()).norm() < 1e-12);
    CHECK(std::abs(g[1].z()) < 1e-12);
    CHECK(g[1].y() >= 0);
    CHECK(fingerprint_distance(fingerprint(X), fingerprint(Y)) < 1e-12);
    CHECK(fingerprint(X).size() == static_cast<std::size_t>(n * (n - 1) / 2 + n * (n - 1) * (n - 2) / 6));
  }
}

TEST_CASE("sign_of examples") {
  const SolverConfig cfg = config();
  const SignResult hopf = sign_of(kMinus2, torus(1), kHopfPoint, cfg);
  CHECK(hopf.sign == Sign::Plus);
  CHECK(hopf.det_ratio > 0.1);
  CHECK(hopf.orbit_defect < 1e-8);
  CHECK_THROWS_AS(sign_of(kMinus2, torus(1), RepTuple::all_i(2), cfg), ReducibleInput);
  const RepTuple off{SpherePoint::i(), SpherePoint(1.0, 1.0, 0.0)};
  REQUIRE(residual(kMinus2, torus(1), off).norm() > 0.1);
  CHECK_THROWS_AS(sign_of(kMinus2, torus(1), off, cfg), NotAFixedPoint);

  const HResult four = compute_h(torus(2), std::nullopt, cfg);
  REQUIRE(four.classes.size() == 2);
  CHECK(four.classes[0].sign == four.classes[1].sign);
}

TEST_CASE("the mirror Hopf link has the opposite sign") {
  const HResult r = compute_h(parse_braid("-1 -1"), std::nullopt, config());
  REQUIRE(r.classes.size() == 1);
  CHECK(r.h == -1);
  CHECK(r.lk == -1);
}

TEST_CASE("compute_h on the torus family") {
  const SolverConfig cfg = config();
  const HResult hopf = compute_h(torus(1), std::nullopt, cfg);
  CHECK(hopf.classes.size() == 1);
  CHECK(hopf.h == 1);
  CHECK(hopf.lk == 1);
  CHECK(hopf.starts == 800);
  CHECK(hopf.epsilon == kMinus2);
  for (int k = 1; k <= 5; ++k) {
    const HResult r = compute_h(torus(k), std::nullopt, cfg);
    CHECK(static_cast<int>(r.classes.size()) == k);
    CHECK(r.h == k);
    CHECK(r.lk == k);
    for (const auto& c : r.classes) {
      CHECK(c.sign == Sign::Plus);
      CHECK(c.residual_norm <= cfg.residual_tol);
      CHECK(c.min_commutator > 10 * cfg.cluster_tol);
      CHECK(distance(product_holonomy(act_signed(r.epsilon, r.braid, c.representative)),
                     product_holonomy(c.representative)) < 1e-10);
      CHECK(sign_of(r.epsilon, r.braid, c.representative, cfg).orbit_defect < 1e-8);
    }
  }
}

TEST_CASE("compute_h on the split link and error cases") {
  const HResult id = compute_h(BraidWord::identity(2), std::nullopt, config(2000));
  CHECK(id.h == 0);
  CHECK(id.classes.empty());
  CHECK(id.converged == 0);
  CHECK_THROWS_AS(compute_h(parse_braid("1"), std::nullopt, config()), NotTwoComponents);
  CHECK_THROWS_AS(compute_h(torus(1), SignVector({-1, 1}), config()), InvalidEpsilon);
  SolverConfig bad;
  bad.residual_tol = 0;
  CHECK_THROWS_AS(compute_h(torus(1), std::nullopt, bad), std::invalid_argument);
}

TEST_CASE("results do not depend on the thread count") {
  SolverConfig a = config(600);
  a.threads = 1;
  SolverConfig b = a;
  b.threads = 4;
  const BraidWord braid = parse_braid("-2 1 -2 -2 1 1 1");
  const HResult ra = compute_h(braid, std::nullopt, a);
  const HResult rb = compute_h(braid, std::nullopt, b);
  CHECK(ra.h == rb.h);
  REQUIRE(ra.classes.size() == rb.classes.size());
  for (std::size_t i = 0; i < ra.classes.size(); ++i) {
    CHECK(ra.classes[i].fingerprint == rb.classes[i].fingerprint);
    CHECK(ra.classes[i].hits == rb.classes[i].hits);
  }
}

TEST_CASE("the unconstrained search only finds trace-free tuples") {
  const UnconstrainedSearch s = search_unconstrained(kMinus2, torus(2), config(400));
  CHECK(s.starts == 400);
  CHECK(!s.converged.empty());
  CHECK(s.max_abs_trace <= 1e-6);
}
