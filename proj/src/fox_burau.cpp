#include "braidrep/fox_burau.hpp"

#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include "braidrep/errors.hpp"

namespace braidrep {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Burau arithmetic");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in Burau arithmetic");
  return r;
}

}  // namespace

GroupRingElement::GroupRingElement(const FreeWord& w, std::int64_t coef) { add(w, coef); }

std::int64_t GroupRingElement::coefficient(const FreeWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0 : it->second;
}

GroupRingElement& GroupRingElement::add(const FreeWord& w, std::int64_t coef) {
  if (coef == 0) return *this;
  auto [it, inserted] = terms_.try_emplace(w, coef);
  if (!inserted) {
    it->second = checked_add(it->second, coef);
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  return r += o;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  GroupRingElement r = *this;
  return r -= o;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  GroupRingElement r;
  for (const auto& [u, a] : terms_)
    for (const auto& [v, b] : o.terms_) r.add(u * v, checked_mul(a, b));
  return r;
}

std::string GroupRingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (a != 1 || w.empty()) out += std::to_string(a);
    if (!w.empty()) {
      if (a != 1) out += "*";
      out += w.to_string();
    }
  }
  return out;
}

GroupRingElement fox_derivative(const FreeWord& w, int gen) {
  GroupRingElement out;
  FreeWord prefix;
  for (const auto& l : w.letters()) {
    if (l.gen == gen) {
      if (l.exp > 0) {
        out.add(prefix, 1);
        prefix.push_back(l);
      } else {
        // d(x^-1)/dx = -x^-1
        prefix.push_back(l);
        out.add(prefix, -1);
      }
    } else {
      prefix.push_back(l);
    }
  }
  return out;
}

LaurentPoly::LaurentPoly(std::int64_t constant) { add(0, constant); }

LaurentPoly LaurentPoly::monomial(int exponent, std::int64_t coef) {
  LaurentPoly p;
  p.add(exponent, coef);
  return p;
}

LaurentPoly& LaurentPoly::add(int exponent, std::int64_t coef) {
  if (coef == 0) return *this;
  auto [it, inserted] = coefs_.try_emplace(exponent, coef);
  if (!inserted) {
    it->second = checked_add(it->second, coef);
    if (it->second == 0) coefs_.erase(it);
  }
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.coefs_) r.add(e, c);
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  for (const auto& [e, c] : o.coefs_) r.add(e, -c);
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, c1] : coefs_)
    for (const auto& [e2, c2] : o.coefs_) r.add(e1 + e2, checked_mul(c1, c2));
  return r;
}

double LaurentPoly::evaluate(double t) const {
  double s = 0.0;
  for (const auto& [e, c] : coefs_) s += static_cast<double>(c) * std::pow(t, e);
  return s;
}

std::int64_t LaurentPoly::evaluate_unit(int t) const {
  if (t != 1 && t != -1) throw std::invalid_argument("evaluate_unit needs t = +-1");
  std::int64_t s = 0;
  for (const auto& [e, c] : coefs_) s = checked_add(s, (t < 0 && (e % 2 != 0)) ? -c : c);
  return s;
}

std::string LaurentPoly::to_string() const {
  if (coefs_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : coefs_) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const std::int64_t a = c < 0 ? -c : c;
    if (e == 0) {
      out += std::to_string(a);
      continue;
    }
    if (a != 1) out += std::to_string(a) + "*";
    out += "t";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

LaurentPoly abelianize(const GroupRingElement& e) {
  LaurentPoly p;
  for (const auto& [w, c] : e.terms()) {
    int deg = 0;
    for (const auto& l : w.letters()) deg += l.exp;
    p.add(deg, c);
  }
  return p;
}

BurauMatrix fox_jacobian(const BraidWord& b) {
  const int n = b.strands();
  const auto images = automorphism_images(b);
  BurauMatrix m(static_cast<std::size_t>(n), std::vector<LaurentPoly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          abelianize(fox_derivative(images[static_cast<std::size_t>(i)], j));
  return m;
}

namespace {

BurauMatrix identity_matrix(int n) {
  BurauMatrix m(static_cast<std::size_t>(n), std::vector<LaurentPoly>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = LaurentPoly(1);
  return m;
}

BurauMatrix multiply(const BurauMatrix& a, const BurauMatrix& b) {
  const std::size_t n = a.size();
  BurauMatrix r(n, std::vector<LaurentPoly>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[k][j].is_zero()) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    }
  return r;
}

}  // namespace

BurauMatrix burau(const BraidWord& b) {
  const int n = b.strands();
  // One Fox Jacobian per distinct letter.
  std::map<std::pair<int, int>, BurauMatrix> generator;
  BurauMatrix m = identity_matrix(n);
  for (const auto& l : b.letters()) {
    auto key = std::make_pair(l.gen, l.sign);
    auto it = generator.find(key);
    if (it == generator.end())
      it = generator.emplace(key, fox_jacobian(BraidWord(n, {l}))).first;
    m = multiply(it->second, m);
  }
  return m;
}

Eigen::MatrixXd evaluate(const BurauMatrix& m, double t) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      r(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].evaluate(t);
  return r;
}

IntMatrix evaluate_unit(const BurauMatrix& m, int t) {
  const auto n = static_cast<Eigen::Index>(m.size());
  IntMatrix r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      r(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].evaluate_unit(t);
  return r;
}

IntMatrix burau_at_minus_one(const BraidWord& b) {
  const int n = b.strands();
  IntMatrix m = IntMatrix::Identity(n, n);
  std::map<std::pair<int, int>, IntMatrix> generator;
  for (const auto& l : b.letters()) {
    auto key = std::make_pair(l.gen, l.sign);
    auto it = generator.find(key);
    if (it == generator.end())
      it = generator.emplace(key, evaluate_unit(fox_jacobian(BraidWord(n, {l})), -1)).first;
    IntMatrix next = IntMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        const std::int64_t a = it->second(i, k);
        if (a == 0) continue;
        for (int j = 0; j < n; ++j) next(i, j) = checked_add(next(i, j), checked_mul(a, m(k, j)));
      }
    m = std::move(next);
  }
  return m;
}

GF2Matrix GF2Matrix::from_integers(const IntMatrix& m) {
  GF2Matrix g(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) g.set(r, c, static_cast<int>(((m(r, c) % 2) + 2) % 2));
  return g;
}

int GF2Matrix::determinant() const {
  if (rows_ != cols_) throw SizeMismatch("determinant of a non-square matrix");
  GF2Matrix a = *this;
  const int n = rows_;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col)
      for (int c = 0; c < n; ++c) {
        const int t = a(col, c);
        a.set(col, c, a(pivot, c));
        a.set(pivot, c, t);
      }
    for (int r = col + 1; r < n; ++r)
      if (a(r, col))
        for (int c = col; c < n; ++c) a.set(r, c, a(r, c) ^ a(col, c));
  }
  return 1;
}

GF2Matrix permutation_matrix(const Permutation& p) {
  GF2Matrix m(p.size(), p.size());
  for (int i = 0; i < p.size(); ++i) m.set(i, p(i), 1);
  return m;
}

GF2Matrix burau_mod2(const BraidWord& b) { return GF2Matrix::from_integers(burau_at_minus_one(b)); }

std::optional<std::int64_t> integer_determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw SizeMismatch("determinant of a non-square matrix");
  const auto n = static_cast<int>(m.rows());
  if (n == 0) return 1;
  std::vector<__int128> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = m(i, j);
  auto at = [&](int i, int j) -> __int128& { return a[static_cast<std::size_t>(i * n + j)]; };
  const __int128 limit = static_cast<__int128>(1) << 62;
  auto fits = [&](__int128 v) { return v < limit && v > -limit; };
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (at(r, k) != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        if (!fits(at(i, j)) || !fits(at(k, k)) || !fits(at(i, k)) || !fits(at(k, j))) return std::nullopt;
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
    prev = at(k, k);
  }
  const __int128 det = sign * at(n - 1, n - 1);
  if (!fits(det)) return std::nullopt;
  return static_cast<std::int64_t>(det);
}

bool is_certificate_normal_form(const Permutation& p) {
  const int n = p.size();
  if (n < 2) return false;
  // Length m of the cycle through 0 determines the target uniquely.
  int m = 1;
  for (int x = p(0); x != 0; x = p(x)) ++m;
  if (m > n - 1) return false;
  std::vector<int> target(static_cast<std::size_t>(n));
  std::vector<int> first;
  first.push_back(0);
  for (int t = 2; t <= m; ++t) first.push_back(t);
  std::vector<int> second;
  second.push_back(1);
  for (int t = m + 1; t < n; ++t) second.push_back(t);
  for (const auto* cyc : {&first, &second})
    for (std::size_t s = 0; s < cyc->size(); ++s)
      target[static_cast<std::size_t>((*cyc)[s])] = (*cyc)[(s + 1) % cyc->size()];
  return p.images() == target;
}

DBlockCertificate d_block_certificate(const BraidWord& b) {
  const int n = b.strands();
  const int comps = component_count(b);
  if (comps != 2) throw NotTwoComponents(comps);

  struct Node {
    Permutation perm;
    BraidWord xi;
  };
  std::size_t cap = 1;
  for (int i = 2; i <= n; ++i) cap *= static_cast<std::size_t>(i);

  std::deque<Node> queue;
  std::set<std::vector<int>> seen;
  queue.push_back({permutation(b), BraidWord::identity(n)});
  seen.insert(queue.front().perm.images());
  std::optional<Node> found;
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    if (is_certificate_normal_form(cur.perm)) {
      found = std::move(cur);
      break;
    }
    for (int g = 1; g < n; ++g) {
      BraidWord step(n, {{g, 1}});
      const Permutation t = permutation(step);
      // perm(xi^-1 s xi) relabels i -> t(i)
      Permutation next = t.inverse().then(cur.perm).then(t);
      if (seen.size() >= cap) break;
      if (seen.insert(next.images()).second) queue.push_back({std::move(next), cur.xi * step});
    }
  }
  if (!found)
    throw NormalFormNotFound("no conjugate of '" + b.to_string() + "' reached the normal form");

  DBlockCertificate cert;
  cert.conjugator = found->xi;
  cert.normalized = markov_conjugate(b, found->xi);
  const IntMatrix full = burau_at_minus_one(cert.normalized);
  const int k = n - 2;
  cert.d_block = full.bottomRightCorner(k, k);
  const IntMatrix one_minus_d = IntMatrix::Identity(k, k) - cert.d_block;
  cert.det_mod2 = GF2Matrix::from_integers(one_minus_d).determinant();
  cert.det = integer_determinant(one_minus_d);
  cert.is_invertible = cert.det_mod2 == 1 || (cert.det && *cert.det != 0);
  return cert;
}

}  // namespace braidrep
