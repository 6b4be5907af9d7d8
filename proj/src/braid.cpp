#include "braidrep/braid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "braidrep/errors.hpp"

namespace braidrep {

BraidWord::BraidWord(int strands, std::vector<Letter> letters)
    : strands_(strands), letters_(std::move(letters)) {
  if (strands_ < 2) throw SizeMismatch("braid needs at least 2 strands");
  for (const auto& l : letters_) {
    if (l.gen < 1 || l.gen > strands_ - 1)
      throw SizeMismatch("generator index " + std::to_string(l.gen) +
                         " out of range for " + std::to_string(strands_) +
                         " strands");
    if (l.sign != 1 && l.sign != -1)
      throw SizeMismatch("letter sign must be +1 or -1");
  }
}

BraidWord BraidWord::inverse() const {
  std::vector<Letter> inv(letters_.rbegin(), letters_.rend());
  for (auto& l : inv) l.sign = -l.sign;
  return BraidWord(strands_, std::move(inv));
}

BraidWord BraidWord::operator*(const BraidWord& rhs) const {
  if (rhs.strands_ != strands_)
    throw SizeMismatch("cannot multiply braids on different strand counts");
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return BraidWord(strands_, std::move(out));
}

std::string BraidWord::to_string() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(l.sign * l.gen);
  }
  return out;
}

BraidWord parse_braid(std::string_view text, std::optional<int> strands) {
  std::vector<Letter> letters;
  int max_gen = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r' || text[pos] == ','))
      ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' &&
           text[end] != '\n' && text[end] != '\r' && text[end] != ',')
      ++end;
    std::string_view token = text.substr(pos, end - pos);
    std::string_view digits = token;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (digits.empty() || ec != std::errc() ||
        ptr != digits.data() + digits.size() || digits.front() == '+')
      throw ParseError("malformed braid token '" + std::string(token) + "'");
    if (value == 0) throw ParseError("generator index 0 is not allowed");
    letters.push_back({std::abs(value), value > 0 ? 1 : -1});
    max_gen = std::max(max_gen, std::abs(value));
    pos = end;
  }
  int required = std::max(2, max_gen + 1);
  int n = required;
  if (strands) {
    if (*strands < required)
      throw ParseError("strand count " + std::to_string(*strands) +
                       " is smaller than the required " +
                       std::to_string(required));
    n = *strands;
  }
  return BraidWord(n, std::move(letters));
}

FreeWord::FreeWord(const std::vector<FreeLetter>& letters) {
  for (const auto& l : letters) push_back(l);
}

FreeWord FreeWord::generator(int gen, int exp) {
  FreeWord w;
  w.push_back({gen, exp});
  return w;
}

void FreeWord::push_back(FreeLetter l) {
  if (!letters_.empty() && letters_.back().gen == l.gen &&
      letters_.back().exp == -l.exp) {
    letters_.pop_back();
  } else {
    letters_.push_back(l);
  }
}

FreeWord FreeWord::inverse() const {
  FreeWord out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    out.letters_.push_back({it->gen, -it->exp});
  return out;
}

FreeWord& FreeWord::operator*=(const FreeWord& rhs) {
  for (const auto& l : rhs.letters_) push_back(l);
  return *this;
}

FreeWord FreeWord::operator*(const FreeWord& rhs) const {
  FreeWord out = *this;
  out *= rhs;
  return out;
}

std::vector<int> FreeWord::exponent_sums(int n) const {
  std::vector<int> sums(static_cast<std::size_t>(n), 0);
  for (const auto& l : letters_) sums[static_cast<std::size_t>(l.gen)] += l.exp;
  return sums;
}

std::string FreeWord::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(l.gen + 1);
    if (l.exp < 0) out += "^-1";
  }
  return out;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)])
      throw SizeMismatch("not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i)
    inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& q) const {
  if (q.size() != size()) throw SizeMismatch("permutation size mismatch");
  std::vector<int> out(images_.size());
  for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = q((*this)(i));
  return Permutation(std::move(out));
}

SignVector::SignVector(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_)
    if (e != 1 && e != -1) throw SizeMismatch("sign entries must be +1 or -1");
}

SignVector SignVector::operator*(const SignVector& rhs) const {
  if (rhs.size() != size()) throw SizeMismatch("sign vector size mismatch");
  std::vector<int> out(entries_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = entries_[i] * rhs.entries_[i];
  return SignVector(std::move(out));
}

namespace {

// Images of the generators under sigma_gen^sign composed after `cur`.
void compose_generator(std::vector<FreeWord>& cur, const Letter& l) {
  const auto a = static_cast<std::size_t>(l.gen - 1);
  const auto b = a + 1;
  FreeWord img_a = cur[a];
  FreeWord img_b = cur[b];
  if (l.sign > 0) {
    // x_a -> x_b,  x_b -> x_b^-1 x_a x_b
    cur[a] = img_b;
    cur[b] = img_b.inverse() * img_a * img_b;
  } else {
    // x_a -> x_a x_b x_a^-1,  x_b -> x_a
    cur[a] = img_a * img_b * img_a.inverse();
    cur[b] = img_a;
  }
}

}  // namespace

std::vector<FreeWord> automorphism_images(const BraidWord& b) {
  std::vector<FreeWord> images;
  images.reserve(static_cast<std::size_t>(b.strands()));
  for (int i = 0; i < b.strands(); ++i) images.push_back(FreeWord::generator(i));
  // (phi o l)(x_j) is phi applied to l(x_j), so letters are folded in from
  // the left.
  for (const auto& l : b.letters()) compose_generator(images, l);
  return images;
}

FreeWord substitute(const FreeWord& w, const std::vector<FreeWord>& images) {
  FreeWord out;
  for (const auto& l : w.letters()) {
    const FreeWord& img = images.at(static_cast<std::size_t>(l.gen));
    out *= (l.exp > 0 ? img : img.inverse());
  }
  return out;
}

FreeWord apply_automorphism(const BraidWord& b, const FreeWord& w) {
  for (const auto& l : w.letters())
    if (l.gen < 0 || l.gen >= b.strands())
      throw SizeMismatch("free word uses a generator outside the braid");
  return substitute(w, automorphism_images(b));
}

Permutation permutation(const BraidWord& b) {
  const int n = b.strands();
  // at[p] = strand currently at position p
  std::vector<int> at(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) at[static_cast<std::size_t>(i)] = i;
  for (const auto& l : b.letters())
    std::swap(at[static_cast<std::size_t>(l.gen - 1)], at[static_cast<std::size_t>(l.gen)]);
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) images[static_cast<std::size_t>(at[static_cast<std::size_t>(p)])] = p;
  return Permutation(std::move(images));
}

Cycles cycle_structure(const Permutation& p) {
  Cycles cycles;
  std::vector<bool> seen(static_cast<std::size_t>(p.size()), false);
  for (int s = 0; s < p.size(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::vector<int> cycle;
    for (int x = s; !seen[static_cast<std::size_t>(x)]; x = p(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      cycle.push_back(x);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

int component_count(const BraidWord& b) {
  return static_cast<int>(cycle_structure(permutation(b)).size());
}

SignVector permute_signs(const Permutation& p, const SignVector& eps) {
  if (p.size() != eps.size()) throw SizeMismatch("sign vector size mismatch");
  std::vector<int> out(static_cast<std::size_t>(eps.size()));
  for (int i = 0; i < eps.size(); ++i) out[static_cast<std::size_t>(i)] = eps[p(i)];
  return SignVector(std::move(out));
}

bool is_valid_epsilon(const SignVector& eps, const BraidWord& b) {
  if (eps.size() != b.strands()) return false;
  for (const auto& cycle : cycle_structure(permutation(b))) {
    int prod = 1;
    for (int i : cycle) prod *= eps[i];
    if (prod != -1) return false;
  }
  return true;
}

SignVector choose_epsilon(const BraidWord& b) {
  const Cycles cycles = cycle_structure(permutation(b));
  if (cycles.size() != 2) throw NotTwoComponents(static_cast<int>(cycles.size()));
  std::vector<int> eps(static_cast<std::size_t>(b.strands()), 1);
  for (const auto& c : cycles) eps[static_cast<std::size_t>(c.front())] = -1;
  return SignVector(std::move(eps));
}

int linking_number(const BraidWord& b) {
  const int n = b.strands();
  const Cycles cycles = cycle_structure(permutation(b));
  if (cycles.size() != 2) throw NotTwoComponents(static_cast<int>(cycles.size()));
  std::vector<int> component(static_cast<std::size_t>(n), 0);
  for (int s : cycles[1]) component[static_cast<std::size_t>(s)] = 1;

  std::vector<int> at(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) at[static_cast<std::size_t>(i)] = i;
  int total = 0;
  for (const auto& l : b.letters()) {
    auto& lo = at[static_cast<std::size_t>(l.gen - 1)];
    auto& hi = at[static_cast<std::size_t>(l.gen)];
    if (component[static_cast<std::size_t>(lo)] != component[static_cast<std::size_t>(hi)])
      total += l.sign;
    std::swap(lo, hi);
  }
  // Inter-component crossings come in pairs on a closed diagram.
  return total / 2;
}

BraidWord markov_conjugate(const BraidWord& b, const BraidWord& xi) {
  if (b.strands() != xi.strands())
    throw SizeMismatch("conjugating braid has a different strand count");
  return xi.inverse() * b * xi;
}

BraidWord markov_stabilize(const BraidWord& b, int sign) {
  if (sign != 1 && sign != -1) throw SizeMismatch("stabilization sign must be +1 or -1");
  const int n = b.strands();
  std::vector<Letter> letters;
  letters.reserve(b.length() + 1);
  letters.push_back({n, sign});
  letters.insert(letters.end(), b.letters().begin(), b.letters().end());
  return BraidWord(n + 1, std::move(letters));
}

}  // namespace braidrep
