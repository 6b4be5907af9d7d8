#pragma once

// Braid words, their action on the free group, permutations and the
// combinatorial linking number of a two-component closure.
//
// Conventions used throughout the library:
//  * Letter::gen is the 1-based generator index i of sigma_i; sigma_i crosses
//    the strands at 0-based positions i-1 and i.
//  * Free-group generators, strand positions, permutation images and cycles
//    are 0-based (x_1 is generator 0).
//  * A braid word l_1 l_2 ... l_k is the automorphism l_1 o l_2 o ... o l_k of
//    F_n. Its permutation sends a strand to the position it reaches when the
//    letters are read left to right.

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace braidrep {

struct Letter {
  int gen = 1;   // 1..n-1
  int sign = 1;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

class BraidWord {
 public:
  BraidWord() : BraidWord(2) {}
  explicit BraidWord(int strands, std::vector<Letter> letters = {});

  static BraidWord identity(int strands) { return BraidWord(strands); }

  int strands() const { return strands_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  BraidWord inverse() const;
  // Concatenation; strand counts must agree.
  BraidWord operator*(const BraidWord& rhs) const;

  // Space-separated signed generator indices, e.g. "1 -2 1".
  std::string to_string() const;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int strands_;
  std::vector<Letter> letters_;
};

// Whitespace separated signed integers; "1 1" is sigma_1^2, "-2" is
// sigma_2^{-1}. Without an explicit strand count n = max|index| + 1 (at
// least 2).
BraidWord parse_braid(std::string_view text,
                      std::optional<int> strands = std::nullopt);

struct FreeLetter {
  int gen = 0;  // 0-based generator
  int exp = 1;  // +1 or -1
  friend auto operator<=>(const FreeLetter&, const FreeLetter&) = default;
};

// Element of F_n, kept freely reduced.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(const std::vector<FreeLetter>& letters);

  static FreeWord generator(int gen, int exp = 1);

  const std::vector<FreeLetter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  void push_back(FreeLetter l);
  FreeWord inverse() const;
  FreeWord operator*(const FreeWord& rhs) const;
  FreeWord& operator*=(const FreeWord& rhs);

  // Exponent sum of each generator (the abelianization), size n.
  std::vector<int> exponent_sums(int n) const;

  std::string to_string() const;

  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<FreeLetter> letters_;
};

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  // (*this).then(q) applies *this first, then q.
  Permutation then(const Permutation& q) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

// Each cycle begins at its smallest element and lists i, p(i), p(p(i)), ...;
// cycles are ordered by their smallest element.
using Cycles = std::vector<std::vector<int>>;

class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<int> entries);
  static SignVector ones(int n) { return SignVector(std::vector<int>(static_cast<std::size_t>(n), 1)); }

  int size() const { return static_cast<int>(entries_.size()); }
  int operator[](int i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& entries() const { return entries_; }

  // Entrywise product.
  SignVector operator*(const SignVector& rhs) const;

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<int> entries_;
};

std::vector<FreeWord> automorphism_images(const BraidWord& b);
FreeWord apply_automorphism(const BraidWord& b, const FreeWord& w);
// Substitutes images[g] for each generator g of w.
FreeWord substitute(const FreeWord& w, const std::vector<FreeWord>& images);

Permutation permutation(const BraidWord& b);
Cycles cycle_structure(const Permutation& p);
int component_count(const BraidWord& b);

// sigma(eps)_i = eps_{perm(i)}.
SignVector permute_signs(const Permutation& p, const SignVector& eps);

// True iff eps has one entry per strand and its product over every cycle of
// the permutation is -1.
bool is_valid_epsilon(const SignVector& eps, const BraidWord& b);
// -1 at the smallest index of each cycle, +1 elsewhere.
SignVector choose_epsilon(const BraidWord& b);

// Half the signed count of crossings between the two components, with
// sigma_i counted as a positive crossing.
int linking_number(const BraidWord& b);

BraidWord markov_conjugate(const BraidWord& b, const BraidWord& xi);
BraidWord markov_stabilize(const BraidWord& b, int sign);

}  // namespace braidrep
