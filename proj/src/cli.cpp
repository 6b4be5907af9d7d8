#include "braidrep/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "braidrep/errors.hpp"
#include "braidrep/fox_burau.hpp"
#include "braidrep/pillowcase.hpp"

namespace braidrep {

using nlohmann::json;

namespace {

json config_json(const SolverConfig& c, int starts) {
  return {{"starts", starts},
          {"residual_tol", c.residual_tol},
          {"cluster_tol", c.cluster_tol},
          {"degenerate_tol", c.degenerate_tol},
          {"max_iters", c.max_iters}};
}

json sphere_json(const RepTuple& X) {
  json out = json::array();
  for (const auto& p : X) out.push_back({p.x(), p.y(), p.z()});
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Letter random_letter(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> gen(1, n - 1);
  const int g = gen(rng);
  return Letter{g, std::bernoulli_distribution(0.5)(rng) ? 1 : -1};
}

BraidWord random_word(int n, int length, std::mt19937_64& rng) {
  std::vector<Letter> letters;
  for (int i = 0; i < length; ++i) letters.push_back(random_letter(n, rng));
  return BraidWord(n, std::move(letters));
}

BraidWord torus(int k) { return BraidWord(2, std::vector<Letter>(static_cast<std::size_t>(2 * k), Letter{1, 1})); }

BraidWord random_stabilization(BraidWord b, int times, std::mt19937_64& rng) {
  for (int i = 0; i < times; ++i) b = markov_stabilize(b, std::bernoulli_distribution(0.5)(rng) ? 1 : -1);
  return b;
}

CorpusCase generate_case(int id, Family family, const CorpusSpec& spec, std::mt19937_64& rng) {
  const int n_max = spec.max_strands;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (;;) {
    BraidWord b;
    switch (family) {
      case Family::Torus:
        b = torus(id + 1);
        break;
      case Family::Stabilized: {
        const int k = pick(1, 3);
        b = random_stabilization(torus(k), pick(1, std::max(1, n_max - 2)), rng);
        break;
      }
      case Family::Conjugate: {
        const int k = pick(1, 2);
        const BraidWord base = random_stabilization(torus(k), pick(0, std::max(0, n_max - 2)), rng);
        b = markov_conjugate(base, random_word(base.strands(), pick(1, 3), rng));
        break;
      }
      case Family::Random:
        b = random_word(pick(2, n_max), pick(1, spec.max_length), rng);
        break;
    }
    if (b.strands() <= n_max && static_cast<int>(b.length()) <= spec.max_length && component_count(b) == 2)
      return CorpusCase{id, family, std::move(b)};
  }
}

json burau_json(const BurauMatrix& m, const std::optional<double>& t) {
  json out = json::array();
  if (!t) {
    for (const auto& row : m) {
      json r = json::array();
      for (const auto& e : row) r.push_back(e.to_string());
      out.push_back(r);
    }
    return out;
  }
  const bool unit = *t == 1.0 || *t == -1.0;
  if (unit) {
    const IntMatrix v = evaluate_unit(m, static_cast<int>(*t));
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      json r = json::array();
      for (Eigen::Index j = 0; j < v.cols(); ++j) r.push_back(v(i, j));
      out.push_back(r);
    }
    return out;
  }
  const Eigen::MatrixXd v = evaluate(m, *t);
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < v.cols(); ++j) r.push_back(v(i, j));
    out.push_back(r);
  }
  return out;
}

json gf2_json(const GF2Matrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    out.push_back(r);
  }
  return out;
}

SignVector parse_signs(const std::string& text) {
  std::istringstream is(text);
  std::vector<int> v;
  std::string tok;
  while (is >> tok) {
    if (tok == "+" || tok == "+1" || tok == "1")
      v.push_back(1);
    else if (tok == "-" || tok == "-1")
      v.push_back(-1);
    else
      throw ParseError("bad sign '" + tok + "' in epsilon");
  }
  return SignVector(std::move(v));
}

struct SolverFlags {
  std::uint64_t seed = 1;
  int starts = 0;
  double tol = SolverConfig{}.residual_tol;
  int threads = 0;

  void add_to(CLI::App* app) {
    app->add_option("--seed", seed, "RNG seed")->envname("BRAIDREP_SEED");
    app->add_option("--starts", starts, "multistart count (0 = 400 n)")->check(CLI::NonNegativeNumber);
    app->add_option("--tol", tol, "residual tolerance")->check(CLI::PositiveNumber);
    app->add_option("--threads", threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  }
  SolverConfig config() const {
    SolverConfig c;
    c.seed = seed;
    c.starts = starts;
    c.residual_tol = tol;
    c.threads = threads;
    return c;
  }
};

}  // namespace

json to_json(const HResult& r) {
  json classes = json::array();
  for (const auto& c : r.classes)
    classes.push_back({{"fingerprint", c.fingerprint},
                       {"sign", to_int(c.sign)},
                       {"residual", c.residual_norm},
                       {"commutator_margin", c.min_commutator},
                       {"det_ratio", c.det_ratio},
                       {"hits", c.hits},
                       {"representative", sphere_json(c.representative)}});
  json cycles = json::array();
  for (const auto& cyc : r.cycles) cycles.push_back(cyc);
  return {{"braid", r.braid.to_string()},
          {"n", r.strands()},
          {"epsilon", r.epsilon.entries()},
          {"cycles", cycles},
          {"h", r.h ? json(*r.h) : json(nullptr)},
          {"status", r.h ? "ok" : "indeterminate"},
          {"lk", r.lk},
          {"classes", classes},
          {"converged", r.converged},
          {"rejected_reducible", r.rejected_reducible},
          {"seed", r.config.seed},
          {"config", config_json(r.config, r.starts)}};
}

std::string dump(const json& j) { return j.dump() + "\n"; }

const char* to_string(Family f) {
  switch (f) {
    case Family::Torus:
      return "torus";
    case Family::Conjugate:
      return "conjugate";
    case Family::Stabilized:
      return "stabilized";
    case Family::Random:
      return "random";
  }
  return "random";
}

const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Ok:
      return "ok";
    case CaseStatus::Indeterminate:
      return "indeterminate";
    case CaseStatus::Mismatch:
      return "mismatch";
  }
  return "mismatch";
}

std::vector<CorpusCase> build_corpus(const CorpusSpec& spec) {
  if (spec.cases < 0) throw std::invalid_argument("negative case count");
  if (spec.max_strands < 3 || spec.max_length < 10)
    throw std::invalid_argument("corpus needs max_strands >= 3 and max_length >= 10");
  std::mt19937_64 rng(spec.seed);
  static constexpr Family kCycle[] = {Family::Conjugate, Family::Stabilized, Family::Random, Family::Random};
  std::vector<CorpusCase> out;
  for (int id = 0; id < spec.cases; ++id) {
    const Family f = id < 5 ? Family::Torus : kCycle[(id - 5) % 4];
    out.push_back(generate_case(id, f, spec, rng));
  }
  return out;
}

VerificationReport run_verification(const CorpusSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.seed = spec.seed;
  for (const auto& c : build_corpus(spec)) {
    const auto t1 = std::chrono::steady_clock::now();
    const HResult r = compute_h(c.braid, std::nullopt, spec.solver);
    CaseReport cr;
    cr.input = c;
    cr.h = r.h;
    cr.lk = r.lk;
    cr.classes = static_cast<int>(r.classes.size());
    if (r.h && r.lk != 0 && std::abs(*r.h) == std::abs(r.lk)) cr.sign_ratio = *r.h / r.lk;
    cr.seconds = seconds_since(t1);
    rep.cases.push_back(std::move(cr));
  }

  std::map<int, int> votes;
  for (const auto& c : rep.cases)
    if (c.sign_ratio) ++votes[*c.sign_ratio];
  if (votes.size() == 1 || (votes.size() == 2 && votes[1] != votes[-1]))
    rep.global_sign = votes.size() == 1 ? votes.begin()->first : (votes[1] > votes[-1] ? 1 : -1);

  for (auto& c : rep.cases) {
    if (!c.h) {
      c.status = CaseStatus::Indeterminate;
      ++rep.indeterminate;
    } else if (std::abs(*c.h) != std::abs(c.lk) || (c.lk != 0 && c.sign_ratio != rep.global_sign)) {
      c.status = CaseStatus::Mismatch;
      rep.failures.push_back(c.input.id);
    } else {
      c.status = CaseStatus::Ok;
    }
  }
  rep.seconds = seconds_since(t0);
  return rep;
}

json to_json(const VerificationReport& r) {
  json cases = json::array();
  for (const auto& c : r.cases)
    cases.push_back({{"id", c.input.id},
                     {"family", to_string(c.input.family)},
                     {"braid", c.input.braid.to_string()},
                     {"n", c.input.braid.strands()},
                     {"h", c.h ? json(*c.h) : json(nullptr)},
                     {"lk", c.lk},
                     {"sign_ratio", c.sign_ratio ? json(*c.sign_ratio) : json(nullptr)},
                     {"classes", c.classes},
                     {"status", to_string(c.status)}});
  return {{"seed", r.seed},
          {"cases", cases},
          {"global_sign", r.global_sign ? json(*r.global_sign) : json(nullptr)},
          {"failures", r.failures},
          {"indeterminate", r.indeterminate},
          {"indeterminate_rate", r.indeterminate_rate()}};
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Signed fixed-point counts of twisted braid actions on trace-free SU(2) tuples", "braidrep"};
  app.require_subcommand(1);

  std::string braid_text;
  std::optional<int> strands;
  bool as_json = false;
  auto add_braid = [&](CLI::App* sub) {
    sub->add_option("braid", braid_text, "braid word, e.g. \"1 1 -2\"")->required();
    sub->add_option("--strands", strands, "strand count")->check(CLI::PositiveNumber);
  };

  SolverFlags sflags;
  std::string eps_text;
  auto* h_cmd = app.add_subcommand("h", "compute h(L) and print the JSON result");
  add_braid(h_cmd);
  sflags.add_to(h_cmd);
  h_cmd->add_option("--epsilon", eps_text, "sign vector, e.g. \"-1 1 -1\"");
  h_cmd->add_flag("--json", as_json, "accepted for uniformity; output is always JSON");

  auto* lk_cmd = app.add_subcommand("lk", "linking number of the closure");
  add_braid(lk_cmd);
  lk_cmd->add_flag("--json", as_json, "JSON output");

  std::optional<double> t;
  bool mod2 = false;
  auto* burau_cmd = app.add_subcommand("burau", "Burau matrix from Fox calculus");
  add_braid(burau_cmd);
  burau_cmd->add_option("--t", t, "evaluate at t");
  burau_cmd->add_flag("--mod2", mod2, "reduce at t = -1 modulo 2");
  burau_cmd->add_flag("--json", as_json, "JSON output");

  int k = 1;
  std::string svg_path;
  auto* pillow_cmd = app.add_subcommand("pillowcase", "graph of sigma_1^{2k} in the pillowcase");
  pillow_cmd->add_option("--k", k, "exponent k of sigma_1^{2k}")->check(CLI::PositiveNumber);
  pillow_cmd->add_option("--svg", svg_path, "write the figure to this path");
  pillow_cmd->add_flag("--json", as_json, "JSON output");

  CorpusSpec corpus;
  SolverFlags vflags;
  vflags.seed = corpus.seed;
  auto* verify_cmd = app.add_subcommand("verify", "check |h| = |lk| with one global sign on a seeded corpus");
  vflags.add_to(verify_cmd);
  verify_cmd->add_option("--cases", corpus.cases, "number of corpus braids")->check(CLI::NonNegativeNumber);
  verify_cmd->add_flag("--json", as_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  try {
    if (*h_cmd) {
      const BraidWord b = parse_braid(braid_text, strands);
      std::optional<SignVector> eps;
      if (!eps_text.empty()) eps = parse_signs(eps_text);
      const HResult r = compute_h(b, eps, sflags.config());
      out << dump(to_json(r));
      return r.h ? exit_code::kOk : exit_code::kIndeterminate;
    }
    if (*lk_cmd) {
      const BraidWord b = parse_braid(braid_text, strands);
      const int components = component_count(b);
      if (components != 2) throw NotTwoComponents(components);
      const int lk = linking_number(b);
      if (as_json)
        out << dump({{"braid", b.to_string()}, {"n", b.strands()}, {"lk", lk}});
      else
        out << lk << "\n";
      return exit_code::kOk;
    }
    if (*burau_cmd) {
      const BraidWord b = parse_braid(braid_text, strands);
      const json m = mod2 ? gf2_json(burau_mod2(b)) : burau_json(burau(b), t);
      if (as_json) {
        json doc = {{"braid", b.to_string()}, {"n", b.strands()}, {"matrix", m}};
        doc["t"] = mod2 ? json("mod2") : (t ? json(*t) : json("t"));
        out << dump(doc);
      } else {
        out << dump(m);
      }
      return exit_code::kOk;
    }
    if (*pillow_cmd) {
      const PillowLine line = graph_line(k);
      const Intersections hits = signed_intersections(line);
      if (!svg_path.empty()) render_svg({line}, hits.points, svg_path);
      if (as_json) {
        json pts = json::array();
        for (const auto& p : hits.points)
          pts.push_back({{"theta", p.theta.to_string()}, {"psi", p.psi.to_string()}});
        out << dump({{"k", k},
                     {"slope", line.slope},
                     {"intercept", line.intercept.to_string()},
                     {"count", hits.count},
                     {"common_sign", hits.common_sign},
                     {"points", pts}});
      } else {
        const std::string c = line.intercept.to_string();
        out << "psi = " << line.slope << " theta " << (c.front() == '-' ? "- " + c.substr(1) : "+ " + c) << "\n";
        for (const auto& p : hits.points) out << "theta = psi = " << p.theta.to_string() << "\n";
        out << "count " << hits.count << ", sign " << (hits.common_sign > 0 ? "+1" : "-1") << "\n";
      }
      return exit_code::kOk;
    }
    if (*verify_cmd) {
      corpus.seed = vflags.seed;
      corpus.solver = vflags.config();
      const VerificationReport rep = run_verification(corpus);
      if (as_json) {
        out << dump(to_json(rep));
      } else {
        for (const auto& c : rep.cases)
          out << std::setw(3) << c.input.id << "  " << std::left << std::setw(11) << to_string(c.input.family)
              << std::setw(30) << c.input.braid.to_string() << std::right << " h=" << std::setw(3)
              << (c.h ? std::to_string(*c.h) : "?") << " lk=" << std::setw(3) << c.lk << "  "
              << to_string(c.status) << "\n";
        out << "cases " << rep.cases.size() << ", mismatches " << rep.failures.size() << ", indeterminate "
            << rep.indeterminate << " (" << std::fixed << std::setprecision(1)
            << 100.0 * rep.indeterminate_rate() << "%), global sign "
            << (rep.global_sign ? (*rep.global_sign > 0 ? "+1" : "-1") : "undefined") << ", seed " << rep.seed
            << ", " << std::setprecision(1) << rep.seconds << " s\n";
        out.unsetf(std::ios::fixed);
      }
      return rep.failures.empty() ? exit_code::kOk : exit_code::kMismatch;
    }
  } catch (const NotTwoComponents& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kNotTwoComponents;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("braidrep");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace braidrep
