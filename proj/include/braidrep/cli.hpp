#pragma once

// JSON documents, the verification corpus, and the command-line entry point.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "braidrep/braid.hpp"
#include "braidrep/solver.hpp"

namespace braidrep {

nlohmann::json to_json(const HResult& r);
// Compact, single line, trailing newline.
std::string dump(const nlohmann::json& j);

enum class Family { Torus, Conjugate, Stabilized, Random };
const char* to_string(Family f);

struct CorpusCase {
  int id = 0;
  Family family = Family::Random;
  BraidWord braid;
};

struct CorpusSpec {
  std::uint64_t seed = 7;
  int cases = 40;
  int max_strands = 5;
  int max_length = 12;
  SolverConfig solver;
};

// Cases 0..4 are sigma_1^{2k}, k = 1..5; the rest cycle through conjugated
// stabilizations, stabilizations and random words. Every braid has a
// two-component closure, at most max_strands strands and at most max_length letters.
std::vector<CorpusCase> build_corpus(const CorpusSpec& spec);

enum class CaseStatus { Ok, Indeterminate, Mismatch };
const char* to_string(CaseStatus s);

struct CaseReport {
  CorpusCase input;
  std::optional<int> h;
  int lk = 0;
  std::optional<int> sign_ratio;  // h / lk when both are defined and lk != 0
  CaseStatus status = CaseStatus::Ok;
  int classes = 0;
  double seconds = 0.0;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::vector<CaseReport> cases;  // sorted by id
  std::optional<int> global_sign;
  std::vector<int> failures;  // ids with status Mismatch
  int indeterminate = 0;
  double seconds = 0.0;

  double indeterminate_rate() const {
    return cases.empty() ? 0.0 : static_cast<double>(indeterminate) / static_cast<double>(cases.size());
  }
};

// The global sign is the majority value of h / lk when it is unique; a case
// is a mismatch if |h| != |lk| or its ratio differs from the global sign.
VerificationReport run_verification(const CorpusSpec& spec);
nlohmann::json to_json(const VerificationReport& r);

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kNotTwoComponents = 2;
inline constexpr int kIndeterminate = 3;
inline constexpr int kMismatch = 4;
}  // namespace exit_code

// Parses argv and runs a subcommand, writing to out and err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace braidrep
