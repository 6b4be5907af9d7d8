#pragma once

// Fox free differential calculus, the Burau matrix of a braid and the
// mod-2 certificate that 1 - D is invertible.
//
// The Burau matrix of sigma has entries d sigma(x_i) / d x_j with every x_k
// sent to t. With braid words read as automorphisms (see braid.hpp) this is
// an anti-homomorphism, burau(a b) = burau(b) burau(a), and the derivative
// of the tuple action at (i, .., i) is burau(b^-1, -1) (x) I_2.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "braidrep/braid.hpp"

namespace braidrep {

// Finite Z-linear combination of reduced free words.
class GroupRingElement {
 public:
  GroupRingElement() = default;
  explicit GroupRingElement(const FreeWord& w, std::int64_t coef = 1);
  static GroupRingElement one() { return GroupRingElement(FreeWord{}); }

  const std::map<FreeWord, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(const FreeWord& w) const;

  GroupRingElement& add(const FreeWord& w, std::int64_t coef);
  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;

  std::string to_string() const;

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

 private:
  std::map<FreeWord, std::int64_t> terms_;
};

GroupRingElement fox_derivative(const FreeWord& w, int gen);

// Laurent polynomial in t with integer coefficients, keyed by exponent.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::int64_t constant);
  static LaurentPoly monomial(int exponent, std::int64_t coef = 1);

  const std::map<int, std::int64_t>& coefficients() const { return coefs_; }
  bool is_zero() const { return coefs_.empty(); }

  LaurentPoly& add(int exponent, std::int64_t coef);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;

  double evaluate(double t) const;
  // Exact value at t = +-1.
  std::int64_t evaluate_unit(int t) const;

  std::string to_string() const;

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

 private:
  std::map<int, std::int64_t> coefs_;
};

// x_k -> t for every generator.
LaurentPoly abelianize(const GroupRingElement& e);

using BurauMatrix = std::vector<std::vector<LaurentPoly>>;
using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// Entries from the Fox derivatives of the full automorphism images.
BurauMatrix fox_jacobian(const BraidWord& b);
// Same matrix, assembled from the per-generator Fox Jacobians.
BurauMatrix burau(const BraidWord& b);
Eigen::MatrixXd evaluate(const BurauMatrix& m, double t);
IntMatrix evaluate_unit(const BurauMatrix& m, int t);
// burau(b) at t = -1 in exact integers.
IntMatrix burau_at_minus_one(const BraidWord& b);

class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(int rows, int cols) : rows_(rows), cols_(cols), bits_(static_cast<std::size_t>(rows * cols), 0) {}
  static GF2Matrix from_integers(const IntMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int operator()(int r, int c) const { return bits_[index(r, c)]; }
  void set(int r, int c, int v) { bits_[index(r, c)] = static_cast<std::uint8_t>(v & 1); }

  int determinant() const;

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r * cols_ + c); }
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Row i has its 1 in column p(i).
GF2Matrix permutation_matrix(const Permutation& p);
GF2Matrix burau_mod2(const BraidWord& b);

// Exact integer determinant (Bareiss); nullopt on 64-bit overflow.
std::optional<std::int64_t> integer_determinant(const IntMatrix& m);

struct DBlockCertificate {
  BraidWord conjugator;  // xi with normalized = xi^-1 b xi
  BraidWord normalized;  // permutation (1, 3, .., k)(2, k+1, .., n)
  IntMatrix d_block;     // lower-right (n-2)x(n-2) block of burau(normalized, -1)
  bool is_invertible = false;
  int det_mod2 = 0;
  std::optional<std::int64_t> det;  // det(1 - D) over Z when it fits in 64 bits
};

// True iff the permutation is (0, 2, 3, .., m)(1, m+1, .., n-1) in 0-based
// labels for some m >= 1.
bool is_certificate_normal_form(const Permutation& p);

// Breadth-first search over conjugations by single generators until the
// permutation reaches the normal form, then the 1 - D block test.
// Throws NotTwoComponents, or NormalFormNotFound if the search is exhausted.
DBlockCertificate d_block_certificate(const BraidWord& b);

}  // namespace braidrep
