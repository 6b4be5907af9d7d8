#pragma once

// Multistart enumeration of the conjugacy classes of fixed points of
// X -> eps * sigma(X) on (S^2)^n, their local intersection signs, and the
// invariant h as the signed count.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "braidrep/action.hpp"
#include "braidrep/braid.hpp"

namespace braidrep {

struct SolverConfig {
  std::uint64_t seed = 1;
  int starts = 0;  // 0 selects 400 * n
  double residual_tol = 1e-10;
  double cluster_tol = 1e-6;
  double degenerate_tol = 1e-8;  // relative to the Hadamard bound
  int max_iters = 200;
  int threads = 0;  // 0 selects std::thread::hardware_concurrency()

  int starts_for(int n) const { return starts > 0 ? starts : 400 * n; }
  // Throws std::invalid_argument on non-positive tolerances or iteration counts.
  void validate() const;
};

enum class Sign { Minus = -1, Degenerate = 0, Plus = 1 };

int to_int(Sign s);
const char* to_string(Sign s);

// Fixed global orientation constant; chosen so that the Hopf link braid
// sigma_1^2 gets h = +1.
inline constexpr int kOrientationCalibration = 1;

struct FixedPointClass {
  RepTuple representative;  // gauge fixed
  std::vector<double> fingerprint;
  Sign sign = Sign::Degenerate;
  double residual_norm = 0.0;
  double min_commutator = 0.0;
  double det_ratio = 0.0;
  int hits = 0;  // converged starts landing in this class
};

struct HResult {
  BraidWord braid;
  SignVector epsilon;
  Cycles cycles;
  std::vector<FixedPointClass> classes;
  std::optional<int> h;  // empty when some class is degenerate
  int lk = 0;
  SolverConfig config;
  int starts = 0;
  int converged = 0;
  int rejected_reducible = 0;

  int strands() const { return braid.strands(); }
  bool indeterminate() const { return !h.has_value(); }
};

// eps * sigma(X) - X as stacked 3-vectors.
Eigen::VectorXd residual(const SignVector& eps, const BraidWord& b, const RepTuple& X);

struct RefineResult {
  bool converged = false;
  RepTuple point;
  double residual_norm = 0.0;
  int iterations = 0;
};

// Levenberg-Marquardt on the residual, retracting each step back to (S^2)^n.
RefineResult refine(const SignVector& eps, const BraidWord& b, const RepTuple& start,
                    const SolverConfig& cfg);

struct Irreducibility {
  bool irreducible = false;
  double margin = 0.0;  // max over pairs of |X_i X_j - X_j X_i|
};

Irreducibility is_irreducible(const RepTuple& X, double cluster_tol = 1e-6);

// Conjugate of X with X_1 = i and the first entry not parallel to X_1 in the
// i-j half-plane with positive j-component. Throws ReducibleInput.
RepTuple gauge_fix(const RepTuple& X);

// tr(X_i X_j) for i < j followed by tr(X_i X_j X_k) for i < j < k.
std::vector<double> fingerprint(const RepTuple& X);
double fingerprint_distance(const std::vector<double>& a, const std::vector<double>& b);

struct SignResult {
  Sign sign = Sign::Degenerate;
  double det_ratio = 0.0;      // |det| divided by the product of column norms
  double raw_determinant = 0.0;
  double orbit_defect = 0.0;   // |(J - I) O| / |O|
};

// Local intersection sign of the graph with the diagonal in the quotient by
// conjugation. The determinant is that of [dP^T | (J - I) U], with J the
// derivative at X, U an oriented complement of the conjugation orbit O and
// dP the right-trivialized derivative of X_1 ... X_n. Throws NotAFixedPoint
// or ReducibleInput when the preconditions fail.
SignResult sign_of(const SignVector& eps, const BraidWord& b, const RepTuple& X,
                   const SolverConfig& cfg = {});

// Throws NotTwoComponents, InvalidEpsilon.
HResult compute_h(const BraidWord& b, const std::optional<SignVector>& eps,
                  const SolverConfig& cfg);

// Control search on all of SU(2)^n, without the trace-free restriction.
struct UnconstrainedSearch {
  int starts = 0;
  std::vector<QuatTuple> converged;
  double max_abs_trace = 0.0;
};

UnconstrainedSearch search_unconstrained(const SignVector& eps, const BraidWord& b,
                                         const SolverConfig& cfg);

}  // namespace braidrep
