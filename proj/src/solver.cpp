#include "braidrep/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "braidrep/errors.hpp"

namespace braidrep {

void SolverConfig::validate() const {
  if (!(residual_tol > 0) || !(cluster_tol > 0) || !(degenerate_tol > 0))
    throw std::invalid_argument("solver tolerances must be positive");
  if (starts < 0) throw std::invalid_argument("starts must be non-negative");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
}

int to_int(Sign s) { return static_cast<int>(s); }

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Plus:
      return "+1";
    case Sign::Minus:
      return "-1";
    case Sign::Degenerate:
      return "degenerate";
  }
  return "degenerate";
}

Eigen::VectorXd residual(const SignVector& eps, const BraidWord& b, const RepTuple& X) {
  const RepTuple Y = act_signed(eps, b, X);
  Eigen::VectorXd r(3 * X.size());
  for (int s = 0; s < X.size(); ++s) r.segment<3>(3 * s) = Y[s].vec() - X[s].vec();
  return r;
}

namespace {

// Damped Gauss-Newton. `eval` fills the residual and its Jacobian in the
// local chart at the current point; `retract` moves along a chart step.
template <class State, class Eval, class Retract>
bool levenberg_marquardt(State& x, Eval eval, Retract retract, double tol, int max_iters,
                         double& final_norm, int& iterations) {
  Eigen::VectorXd r;
  Eigen::MatrixXd J;
  eval(x, r, J, true);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  iterations = 0;
  for (; iterations < max_iters; ++iterations) {
    if (std::sqrt(cost) <= tol) break;
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool accepted = false;
    while (lambda < 1e12) {
      Eigen::MatrixXd damped = A;
      damped.diagonal().array() += lambda;
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      State trial = retract(x, step);
      Eigen::VectorXd rt;
      Eigen::MatrixXd Jt;
      eval(trial, rt, Jt, false);
      const double trial_cost = rt.squaredNorm();
      if (trial_cost < cost) {
        x = std::move(trial);
        eval(x, r, J, true);
        cost = r.squaredNorm();
        lambda = std::max(lambda / 3.0, 1e-15);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
  }
  final_norm = std::sqrt(cost);
  return final_norm <= tol;
}

unsigned worker_count(const SolverConfig& cfg, std::size_t jobs) {
  unsigned t = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  if (t == 0) t = 1;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

// Runs job(i) for i in [0, count); results are written by index so the
// outcome does not depend on scheduling.
template <class Job>
void parallel_for(std::size_t count, unsigned workers, Job job) {
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) job(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

RefineResult refine(const SignVector& eps, const BraidWord& b, const RepTuple& start,
                    const SolverConfig& cfg) {
  const int n = start.size();
  auto eval = [&](const RepTuple& X, Eigen::VectorXd& r, Eigen::MatrixXd& J, bool want_jacobian) {
    if (!want_jacobian) {
      r = residual(eps, b, X);
      return;
    }
    const SphereImage img = act_signed_with_derivative(eps, b, X);
    r.resize(3 * n);
    J = img.ambient;
    for (int s = 0; s < n; ++s) {
      r.segment<3>(3 * s) = img.image[s].vec() - X[s].vec();
      J.block<3, 2>(3 * s, 2 * s) -= tangent_frame(X[s]);
    }
  };
  auto retract = [&](const RepTuple& X, const Eigen::VectorXd& step) {
    std::vector<SpherePoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) out.emplace_back(X[s].vec() + tangent_frame(X[s]) * step.segment<2>(2 * s));
    return RepTuple(std::move(out));
  };
  RefineResult res;
  res.point = start;
  res.converged = levenberg_marquardt(res.point, eval, retract, cfg.residual_tol, cfg.max_iters,
                                      res.residual_norm, res.iterations);
  return res;
}

Irreducibility is_irreducible(const RepTuple& X, double cluster_tol) {
  Irreducibility out;
  for (int i = 0; i < X.size(); ++i)
    for (int j = i + 1; j < X.size(); ++j)
      out.margin = std::max(out.margin, 2.0 * X[i].vec().cross(X[j].vec()).norm());
  out.irreducible = out.margin > 10.0 * cluster_tol;
  return out;
}

RepTuple gauge_fix(const RepTuple& X) {
  if (X.size() == 0) throw ReducibleInput("gauge_fix of an empty tuple");
  constexpr double kParallel = 1e-5;
  const Quaternion first = rotation_taking(X[0].vec(), Vec3::UnitX());
  RepTuple Y = conjugate_by(first, X);
  int anchor = -1;
  for (int s = 1; s < Y.size(); ++s)
    if (Y[s].vec().cross(Vec3::UnitX()).norm() > kParallel) {
      anchor = s;
      break;
    }
  if (anchor < 0) throw ReducibleInput("gauge_fix: all entries commute");
  // Rotation about i by alpha takes (y, z) to (r, 0) with r > 0.
  const double alpha = -std::atan2(Y[anchor].z(), Y[anchor].y());
  const Quaternion spin = exp_so3(Vec3(alpha / 2.0, 0, 0));
  RepTuple Z = conjugate_by(spin, Y);
  Z[0] = SpherePoint::i();
  return Z;
}

std::vector<double> fingerprint(const RepTuple& X) {
  const int n = X.size();
  std::vector<double> f;
  const QuatTuple q = to_quaternions(X);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) f.push_back((q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)]).trace());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        f.push_back((q[static_cast<std::size_t>(i)] * q[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k)]).trace());
  return f;
}

double fingerprint_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

SignResult sign_of(const SignVector& eps, const BraidWord& b, const RepTuple& X,
                   const SolverConfig& cfg) {
  const int n = X.size();
  const Irreducibility irr = is_irreducible(X, cfg.cluster_tol);
  if (!irr.irreducible) throw ReducibleInput("sign_of: reducible fixed point");
  const double res = residual(eps, b, X).norm();
  if (res > std::max(cfg.residual_tol, 1e-8) * 100.0)
    throw NotAFixedPoint("sign_of: residual " + std::to_string(res) + " is too large");

  const SphereImage img = act_signed_with_derivative(eps, b, X);
  // At a fixed point the image frames are the domain frames.
  Eigen::MatrixXd J(2 * n, 2 * n);
  Eigen::MatrixXd orbit(2 * n, 3);
  Eigen::MatrixXd holonomy(3, 2 * n);
  const QuatTuple q = to_quaternions(X);
  const Quaternion P = product_holonomy(q);
  for (int s = 0; s < n; ++s) {
    const auto frame = tangent_frame(X[s]);
    J.middleRows(2 * s, 2) = frame.transpose() * img.ambient.middleRows(3 * s, 3);
    for (int a = 0; a < 3; ++a) orbit.block<2, 1>(2 * s, a) = frame.transpose() * Vec3::Unit(a).cross(X[s].vec());
    Quaternion before = Quaternion::one();
    for (int t = 0; t < s; ++t) before = before * q[static_cast<std::size_t>(t)];
    Quaternion after = Quaternion::one();
    for (int t = s + 1; t < n; ++t) after = after * q[static_cast<std::size_t>(t)];
    for (int a = 0; a < 2; ++a) {
      const Quaternion d = before * Quaternion::pure(frame.col(a)) * after * P.conj();
      holonomy.col(2 * s + a) = d.vec();
    }
  }

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  SignResult out;
  out.orbit_defect = ((J - I) * orbit).norm() / orbit.norm();

  // Oriented orthonormal complement U of the orbit directions.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(orbit);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(2 * n, 2 * n);
  Eigen::MatrixXd U = Q.rightCols(2 * n - 3);
  Eigen::MatrixXd basis(2 * n, 2 * n);
  basis << U, orbit;
  if (basis.determinant() < 0) U.col(0) *= -1.0;

  Eigen::MatrixXd M(2 * n, 2 * n);
  M << holonomy.transpose(), (J - I) * U;
  out.raw_determinant = M.determinant();
  double hadamard = 1.0;
  for (int c = 0; c < M.cols(); ++c) hadamard *= M.col(c).norm();
  out.det_ratio = hadamard > 0 ? std::abs(out.raw_determinant) / hadamard : 0.0;
  if (out.det_ratio < cfg.degenerate_tol || out.orbit_defect > 1e-6) {
    out.sign = Sign::Degenerate;
  } else {
    out.sign = (out.raw_determinant > 0) == (kOrientationCalibration > 0) ? Sign::Plus : Sign::Minus;
  }
  return out;
}

HResult compute_h(const BraidWord& b, const std::optional<SignVector>& eps,
                  const SolverConfig& cfg) {
  cfg.validate();
  const int n = b.strands();
  HResult out;
  out.braid = b;
  out.config = cfg;
  out.cycles = cycle_structure(permutation(b));
  if (out.cycles.size() != 2) throw NotTwoComponents(static_cast<int>(out.cycles.size()));
  if (eps) {
    if (!is_valid_epsilon(*eps, b))
      throw InvalidEpsilon("sign vector does not have product -1 over each cycle");
    out.epsilon = *eps;
  } else {
    out.epsilon = choose_epsilon(b);
  }
  out.lk = linking_number(b);
  out.starts = cfg.starts_for(n);

  std::mt19937_64 rng(cfg.seed);
  std::vector<RepTuple> starts;
  starts.reserve(static_cast<std::size_t>(out.starts));
  for (int s = 0; s < out.starts; ++s) {
    std::vector<SpherePoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back(sample_sphere(rng));
    starts.emplace_back(std::move(pts));
  }

  std::vector<RefineResult> results(starts.size());
  parallel_for(starts.size(), worker_count(cfg, starts.size()),
               [&](std::size_t i) { results[i] = refine(out.epsilon, b, starts[i], cfg); });

  struct Converged {
    std::vector<double> key;
    RepTuple point;
    double residual;
    double margin;
  };
  std::vector<Converged> points;
  for (const auto& r : results) {
    if (!r.converged) continue;
    ++out.converged;
    const Irreducibility irr = is_irreducible(r.point, cfg.cluster_tol);
    if (!irr.irreducible) {
      ++out.rejected_reducible;
      continue;
    }
    points.push_back({fingerprint(r.point), gauge_fix(r.point), r.residual_norm, irr.margin});
  }
  std::sort(points.begin(), points.end(), [](const Converged& a, const Converged& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.residual < b.residual;
  });

  std::vector<std::vector<const Converged*>> clusters;
  for (const auto& p : points) {
    bool placed = false;
    for (auto& c : clusters)
      if (fingerprint_distance(c.front()->key, p.key) < cfg.cluster_tol) {
        c.push_back(&p);
        placed = true;
        break;
      }
    if (!placed) clusters.push_back({&p});
  }

  std::vector<FixedPointClass> classes(clusters.size());
  parallel_for(clusters.size(), worker_count(cfg, clusters.size()), [&](std::size_t c) {
    const Converged* best = clusters[c].front();
    for (const auto* p : clusters[c])
      if (p->residual < best->residual) best = p;
    FixedPointClass& cls = classes[c];
    cls.representative = best->point;
    cls.fingerprint = best->key;
    cls.residual_norm = best->residual;
    cls.min_commutator = best->margin;
    cls.hits = static_cast<int>(clusters[c].size());
    const SignResult sr = sign_of(out.epsilon, b, best->point, cfg);
    cls.sign = sr.sign;
    cls.det_ratio = sr.det_ratio;
  });
  std::sort(classes.begin(), classes.end(),
            [](const FixedPointClass& a, const FixedPointClass& b) { return a.fingerprint < b.fingerprint; });

  int h = 0;
  bool degenerate = false;
  for (const auto& c : classes) {
    if (c.sign == Sign::Degenerate) degenerate = true;
    h += to_int(c.sign);
  }
  if (!degenerate) out.h = h;
  out.classes = std::move(classes);
  return out;
}

UnconstrainedSearch search_unconstrained(const SignVector& eps, const BraidWord& b,
                                         const SolverConfig& cfg) {
  cfg.validate();
  const int n = b.strands();
  if (eps.size() != n) throw SizeMismatch("sign vector size does not match braid");
  UnconstrainedSearch out;
  out.starts = cfg.starts_for(n);
  std::mt19937_64 rng(cfg.seed);
  std::vector<QuatTuple> starts(static_cast<std::size_t>(out.starts));
  for (auto& s : starts)
    for (int i = 0; i < n; ++i) s.push_back(sample_unit_quaternion(rng));

  const Quaternion units[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  auto eval = [&](const QuatTuple& X, Eigen::VectorXd& r, Eigen::MatrixXd& J, bool want_jacobian) {
    r.resize(4 * n);
    if (!want_jacobian) {
      const QuatTuple Y = act_signed(eps, b, X);
      for (int s = 0; s < n; ++s) {
        const Quaternion d = Y[static_cast<std::size_t>(s)] - X[static_cast<std::size_t>(s)];
        r.segment<4>(4 * s) = Eigen::Vector4d(d.w, d.x, d.y, d.z);
      }
      return;
    }
    const QuatImage img = act_signed_with_derivative(eps, b, X);
    J = img.ambient;
    for (int s = 0; s < n; ++s) {
      const Quaternion& x = X[static_cast<std::size_t>(s)];
      const Quaternion d = img.image[static_cast<std::size_t>(s)] - x;
      r.segment<4>(4 * s) = Eigen::Vector4d(d.w, d.x, d.y, d.z);
      for (int a = 0; a < 3; ++a) {
        const Quaternion t = x * units[a];
        J.block<4, 1>(4 * s, 3 * s + a) -= Eigen::Vector4d(t.w, t.x, t.y, t.z);
      }
    }
  };
  auto retract = [&](const QuatTuple& X, const Eigen::VectorXd& step) {
    QuatTuple out_x(X.size());
    for (int s = 0; s < n; ++s)
      out_x[static_cast<std::size_t>(s)] =
          (X[static_cast<std::size_t>(s)] * exp_so3(step.segment<3>(3 * s))).normalized();
    return out_x;
  };

  std::vector<std::optional<QuatTuple>> results(starts.size());
  parallel_for(starts.size(), worker_count(cfg, starts.size()), [&](std::size_t i) {
    QuatTuple x = starts[i];
    double norm = 0.0;
    int iters = 0;
    if (levenberg_marquardt(x, eval, retract, cfg.residual_tol, cfg.max_iters, norm, iters))
      results[i] = std::move(x);
  });
  for (auto& r : results) {
    if (!r) continue;
    for (const auto& q : *r) out.max_abs_trace = std::max(out.max_abs_trace, std::abs(q.trace()));
    out.converged.push_back(std::move(*r));
  }
  return out;
}

}  // namespace braidrep
