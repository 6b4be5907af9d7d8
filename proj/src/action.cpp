#include "braidrep/action.hpp"

#include <algorithm>

#include "braidrep/errors.hpp"

namespace braidrep {

namespace {

constexpr std::size_t kRenormalizeEvery = 8;

void check_size(const BraidWord& b, int n) {
  if (b.strands() != n)
    throw SizeMismatch("tuple has " + std::to_string(n) + " entries but braid has " +
                       std::to_string(b.strands()) + " strands");
}

void check_size(const SignVector& eps, int n) {
  if (eps.size() != n) throw SizeMismatch("sign vector size does not match tuple");
}

// Applies the letters right to left to X, carrying along the tangent vectors
// in `dirs` (dirs[d][s] is the component of direction d at entry s).
void propagate(const BraidWord& b, QuatTuple& X, std::vector<QuatTuple>* dirs) {
  std::size_t steps = 0;
  const auto& letters = b.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const auto p = static_cast<std::size_t>(it->gen - 1);
    const Quaternion a = X[p];
    const Quaternion c = X[p + 1];
    if (it->sign > 0) {
      const Quaternion ai = a.conj();
      const Quaternion top = a * c * ai;
      X[p] = top;
      X[p + 1] = a;
      if (dirs) {
        for (auto& t : *dirs) {
          const Quaternion da = t[p];
          const Quaternion dc = t[p + 1];
          t[p] = da * c * ai + a * dc * ai - top * da * ai;
          t[p + 1] = da;
        }
      }
    } else {
      const Quaternion ci = c.conj();
      const Quaternion bottom = ci * a * c;
      X[p] = c;
      X[p + 1] = bottom;
      if (dirs) {
        for (auto& t : *dirs) {
          const Quaternion da = t[p];
          const Quaternion dc = t[p + 1];
          t[p] = dc;
          t[p + 1] = ci * da * c + ci * a * dc - ci * dc * bottom;
        }
      }
    }
    if (++steps % kRenormalizeEvery == 0)
      for (auto& q : X) q = q.normalized();
  }
}

}  // namespace

QuatTuple to_quaternions(const RepTuple& X) {
  QuatTuple out;
  out.reserve(static_cast<std::size_t>(X.size()));
  for (const auto& p : X) out.push_back(p.quat());
  return out;
}

RepTuple conjugate_by(const Quaternion& a, const RepTuple& X) {
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(X.size()));
  for (const auto& p : X) out.push_back(conjugate_by(a, p));
  return RepTuple(std::move(out));
}

RepTuple apply_signs(const SignVector& eps, const RepTuple& X) {
  check_size(eps, X.size());
  std::vector<SpherePoint> out;
  out.reserve(static_cast<std::size_t>(X.size()));
  for (int i = 0; i < X.size(); ++i) out.push_back(eps[i] > 0 ? X[i] : -X[i]);
  return RepTuple(std::move(out));
}

double max_distance(const RepTuple& a, const RepTuple& b) {
  if (a.size() != b.size()) throw SizeMismatch("tuple size mismatch");
  double d = 0.0;
  for (int i = 0; i < a.size(); ++i) d = std::max(d, (a[i].vec() - b[i].vec()).norm());
  return d;
}

RepTuple act(const BraidWord& b, const RepTuple& X) {
  return act_signed(SignVector::ones(X.size()), b, X);
}

QuatTuple act_signed(const SignVector& eps, const BraidWord& b, const QuatTuple& X) {
  const int n = static_cast<int>(X.size());
  check_size(b, n);
  check_size(eps, n);
  QuatTuple Y = X;
  propagate(b, Y, nullptr);
  for (int i = 0; i < n; ++i)
    if (eps[i] < 0) Y[static_cast<std::size_t>(i)] = -Y[static_cast<std::size_t>(i)];
  return Y;
}

RepTuple act_signed(const SignVector& eps, const BraidWord& b, const RepTuple& X) {
  const QuatTuple Y = act_signed(eps, b, to_quaternions(X));
  std::vector<SpherePoint> out;
  out.reserve(Y.size());
  for (const auto& q : Y) out.emplace_back(q.vec());
  return RepTuple(std::move(out));
}

Quaternion product_holonomy(const QuatTuple& X) {
  Quaternion p = Quaternion::one();
  std::size_t count = 0;
  for (const auto& q : X) {
    p = p * q;
    if (++count % kRenormalizeEvery == 0) p = p.normalized();
  }
  return p;
}

Quaternion product_holonomy(const RepTuple& X) { return product_holonomy(to_quaternions(X)); }

Quaternion evaluate(const FreeWord& w, const QuatTuple& X) {
  Quaternion p = Quaternion::one();
  std::size_t count = 0;
  for (const auto& l : w.letters()) {
    const Quaternion& q = X.at(static_cast<std::size_t>(l.gen));
    p = p * (l.exp > 0 ? q : q.conj());
    if (++count % kRenormalizeEvery == 0) p = p.normalized();
  }
  return p;
}

SphereImage act_signed_with_derivative(const SignVector& eps, const BraidWord& b,
                                       const RepTuple& X) {
  const int n = X.size();
  check_size(b, n);
  check_size(eps, n);
  const auto un = static_cast<std::size_t>(n);
  QuatTuple Y = to_quaternions(X);
  std::vector<QuatTuple> dirs(2 * un, QuatTuple(un, Quaternion{0, 0, 0, 0}));
  for (int s = 0; s < n; ++s) {
    const auto frame = tangent_frame(X[s]);
    for (int a = 0; a < 2; ++a)
      dirs[static_cast<std::size_t>(2 * s + a)][static_cast<std::size_t>(s)] =
          Quaternion::pure(frame.col(a));
  }
  propagate(b, Y, &dirs);

  SphereImage out;
  out.ambient.resize(3 * n, 2 * n);
  std::vector<SpherePoint> image;
  image.reserve(un);
  for (int s = 0; s < n; ++s) {
    const double e = eps[s];
    image.emplace_back(e * Y[static_cast<std::size_t>(s)].vec());
    for (int d = 0; d < 2 * n; ++d)
      out.ambient.block<3, 1>(3 * s, d) =
          e * dirs[static_cast<std::size_t>(d)][static_cast<std::size_t>(s)].vec();
  }
  out.image = RepTuple(std::move(image));
  return out;
}

QuatImage act_signed_with_derivative(const SignVector& eps, const BraidWord& b,
                                     const QuatTuple& X) {
  const int n = static_cast<int>(X.size());
  check_size(b, n);
  check_size(eps, n);
  const auto un = static_cast<std::size_t>(n);
  const Quaternion units[3] = {Quaternion::i(), Quaternion::j(), Quaternion::k()};
  QuatTuple Y = X;
  std::vector<QuatTuple> dirs(3 * un, QuatTuple(un, Quaternion{0, 0, 0, 0}));
  for (std::size_t s = 0; s < un; ++s)
    for (std::size_t a = 0; a < 3; ++a) dirs[3 * s + a][s] = X[s] * units[a];
  propagate(b, Y, &dirs);

  QuatImage out;
  out.ambient.resize(4 * n, 3 * n);
  for (int s = 0; s < n; ++s) {
    const double e = eps[s];
    auto& y = Y[static_cast<std::size_t>(s)];
    y *= e;
    for (int d = 0; d < 3 * n; ++d) {
      const Quaternion& t = dirs[static_cast<std::size_t>(d)][static_cast<std::size_t>(s)];
      out.ambient.block<4, 1>(4 * s, d) = e * Eigen::Vector4d(t.w, t.x, t.y, t.z);
    }
  }
  out.image = std::move(Y);
  return out;
}

ActionJacobian differential(const SignVector& eps, const BraidWord& b, const RepTuple& X) {
  const SphereImage img = act_signed_with_derivative(eps, b, X);
  const int n = X.size();
  ActionJacobian J;
  J.matrix.resize(2 * n, 2 * n);
  for (int s = 0; s < n; ++s) {
    const auto frame = tangent_frame(img.image[s]);
    J.matrix.middleRows(2 * s, 2) = frame.transpose() * img.ambient.middleRows(3 * s, 3);
  }
  return J;
}

SignVector epsilon_transport(const SignVector& eps, const SignVector& eps_prime) {
  if (eps.size() != eps_prime.size()) throw SizeMismatch("sign vector size mismatch");
  const int n = eps.size();
  std::vector<int> delta(static_cast<std::size_t>(n), 1);
  for (int k = 0; k + 1 < n; ++k)
    delta[static_cast<std::size_t>(k + 1)] = delta[static_cast<std::size_t>(k)] * eps[k] * eps_prime[k];
  return SignVector(std::move(delta));
}

SignVector epsilon_transport(const SignVector& eps, const SignVector& eps_prime,
                             const Permutation& perm) {
  if (eps.size() != eps_prime.size() || eps.size() != perm.size())
    throw SizeMismatch("sign vector size mismatch");
  std::vector<int> delta(static_cast<std::size_t>(eps.size()), 1);
  for (const auto& cycle : cycle_structure(perm)) {
    int d = 1;
    for (int i : cycle) {
      delta[static_cast<std::size_t>(i)] = d;
      d *= eps[i] * eps_prime[i];
    }
    if (d != 1)
      throw InvalidEpsilon("sign vectors differ in their product over a cycle");
  }
  return SignVector(std::move(delta));
}

SignVector lifted_epsilon(const SignVector& eps) {
  std::vector<int> out = eps.entries();
  if (out.empty()) throw SizeMismatch("empty sign vector");
  out.insert(out.end() - 1, 1);
  return SignVector(std::move(out));
}

RepTuple markov_lift(const SignVector& eps, const BraidWord& b, const RepTuple& X,
                     double tol) {
  const double res = max_distance(act_signed(eps, b, X), X);
  if (res > tol)
    throw NotAFixedPoint("markov_lift: input residual " + std::to_string(res) +
                         " exceeds tolerance");
  std::vector<SpherePoint> out = X.points();
  out.push_back(out.back());
  return RepTuple(std::move(out));
}

}  // namespace braidrep
