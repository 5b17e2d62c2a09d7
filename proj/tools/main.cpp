#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "currents_lab/dynamics.hpp"
#include "currents_lab/errors.hpp"
#include "currents_lab/parse.hpp"
#include "currents_lab/report.hpp"
#include "currents_lab/selftest.hpp"

using namespace currents_lab;

namespace {

// 1 is reserved for "ran, but an assertion failed"; CLI11 usage errors keep
// their own codes (105 and up).
int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
      return 2;
    case ErrorCode::kInvalidArgument:
      return 3;
    case ErrorCode::kBasisMismatch:
      return 4;
    case ErrorCode::kIdentityElement:
      return 5;
    case ErrorCode::kZeroCurrent:
      return 6;
    case ErrorCode::kRankTooSmall:
      return 7;
    case ErrorCode::kValidationFailure:
      return 8;
    case ErrorCode::kNotStabilized:
      return 9;
    case ErrorCode::kAllElliptic:
      return 10;
    case ErrorCode::kParityPrecondition:
      return 11;
    case ErrorCode::kUnknownExperiment:
      return 12;
  }
  return 3;
}

// A literal that failed to parse, reported with a caret under the offset.
struct LiteralError {
  std::string flag;
  std::string text;
  ParseError error;
};

struct Literal {
  std::string flag;
  LiteralKind kind;
  std::string text;
  bool given() const { return !text.empty(); }
};

template <typename F>
auto parse_literal(const Literal& literal, F&& parse) {
  try {
    return parse(literal.text);
  } catch (const ParseError& e) {
    throw LiteralError{literal.flag, literal.text, e};
  }
}

// --rank when given, else the smallest rank every literal fits in.
Basis resolve_basis(std::optional<int> rank, const std::vector<Literal>& literals) {
  if (rank) return Basis{*rank};
  int needed = 2;
  for (const auto& literal : literals) {
    if (!literal.given()) continue;
    needed = std::max(needed, parse_literal(literal, [&](const std::string& text) {
                        return literal_rank(literal.kind, text);
                      }));
  }
  return Basis{needed};
}

std::string word_text(const Word& w) { return w.empty() ? "1" : w.to_string(); }

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  out << contents;
}

// JSON to --out (or stdout), CSV to --csv; exit 0 iff every assertion passed.
int emit(const ConvergenceReport& report, const std::string& out_path, const std::string& csv_path) {
  const std::string json = report_json(report);
  if (out_path.empty()) {
    std::cout << json;
  } else {
    write_file(out_path, json);
    std::cout << report.experiment << ": " << (report.passed() ? "passed" : "FAILED") << '\n';
  }
  if (!csv_path.empty()) write_file(csv_path, report_csv(report));
  if (!report.passed()) {
    for (const auto& a : report.assertions) {
      if (!a.passed) std::cerr << "failed: " << a.name << '\n';
    }
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with free group words, automorphisms, rational currents and tree lengths"};
  app.require_subcommand(1);

  std::optional<int> rank;
  int level = 2;
  int iterations = 50;
  std::size_t cap = 64;
  std::uint64_t seed = 1;
  int power = 1;
  int trials = 100;
  bool cyclic = false;
  std::string method = "auto";
  std::string out_path;
  std::string csv_path;
  std::string experiment_id;
  Literal word{"-w", LiteralKind::kWord, ""};
  Literal probe{"-v", LiteralKind::kWord, ""};
  Literal element{"-g", LiteralKind::kWord, ""};
  Literal current{"-c", LiteralKind::kCurrent, ""};
  Literal target{"--target", LiteralKind::kCurrent, ""};
  Literal aut{"--aut", LiteralKind::kAutomorphism, ""};
  Literal tree{"--tree", LiteralKind::kTree, ""};
  std::string experiment_word;
  std::string experiment_perturbation;

  auto add_rank = [&](CLI::App* cmd) {
    cmd->add_option("--rank", rank, "Basis rank (default: inferred from the literals)")->check(CLI::Range(2, 26));
  };
  auto add_report = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    cmd->add_option("--csv", csv_path, "Also write the report tables as long-format CSV");
  };

  auto* reduce = app.add_subcommand("reduce", "Free reduction of a word");
  add_rank(reduce);
  reduce->add_option("-w,--word", word.text, "Word, e.g. abBA")->required();
  reduce->add_flag("--cyclic", cyclic, "Print the cyclic class and a conjugator instead");

  auto* apply_cmd = app.add_subcommand("apply", "Image of a word under an automorphism power");
  add_rank(apply_cmd);
  apply_cmd->add_option("--aut", aut.text, "Automorphism literal")->required();
  apply_cmd->add_option("-w,--word", word.text, "Word")->required();
  apply_cmd->add_option("-n", power, "Exponent, may be negative");

  auto* coord = app.add_subcommand("coord", "Coordinate (v; nu)");
  add_rank(coord);
  coord->add_option("-v", probe.text, "Reduced word v")->required();
  coord->add_option("-c,--current", current.text, "Current literal")->required();

  auto* length_cmd = app.add_subcommand("length", "Translation length ||g||_T, or ||nu|| with -c");
  add_rank(length_cmd);
  length_cmd->add_option("--tree", tree.text, "Tree literal");
  auto* g_opt = length_cmd->add_option("-g", element.text, "Group element");
  auto* c_opt = length_cmd->add_option("-c,--current", current.text, "Current literal");
  length_cmd->add_option("--method", method, "auto, britton or limit")
      ->check(CLI::IsMember({"auto", "britton", "limit"}));
  length_cmd->add_option("--cap", cap, "Iteration cap for the limit evaluator");
  g_opt->excludes(c_opt);

  auto* intersect = app.add_subcommand("intersect", "Intersection form I(T, nu)");
  add_rank(intersect);
  intersect->add_option("--tree", tree.text, "Tree literal")->required();
  intersect->add_option("-c,--current", current.text, "Current literal")->required();

  auto* iterate = app.add_subcommand("iterate", "Orbit n -> phi^n nu and its distance to a target");
  add_rank(iterate);
  iterate->add_option("--aut", aut.text, "Automorphism literal")->required();
  iterate->add_option("-c,--current", current.text, "Seed current")->required();
  iterate->add_option("--target", target.text, "Target current")->required();
  iterate->add_option("--iters", iterations, "Number of iterations")->check(CLI::NonNegativeNumber);
  iterate->add_option("--level", level, "Level L of the projective vectors")->check(CLI::PositiveNumber);
  add_report(iterate);

  auto* experiment = app.add_subcommand("experiment", "Run a named experiment");
  experiment->add_option("id", experiment_id, "Experiment id")->required();
  experiment->add_option("--rank", rank, "Basis rank (default 5)")->check(CLI::Range(2, 26));
  experiment->add_option("--level", level, "Level L")->check(CLI::PositiveNumber);
  experiment->add_option("--iters", iterations, "Iterations N")->check(CLI::NonNegativeNumber);
  experiment->add_option("--cap", cap, "Stabilization cap for tree limits");
  experiment->add_option("--seed", seed, "Seed for randomized experiments");
  experiment->add_option("--word", experiment_word, "Word argument (primitive-limit: u, off-critical: g)");
  experiment->add_option("--perturbation", experiment_perturbation, "off-critical: the perturbing word f");
  add_report(experiment);

  auto* selftest = app.add_subcommand("selftest", "Randomized invariant suites over ranks 2, 3 and 5");
  selftest->add_option("--seed", seed, "Seed");
  selftest->add_option("--trials", trials, "Cases per suite and rank")->check(CLI::PositiveNumber);
  add_report(selftest);

  CLI11_PARSE(app, argc, argv);

  try {
    if (reduce->parsed()) {
      const Basis basis = resolve_basis(rank, {word});
      const Word w = parse_literal(word, [&](const std::string& t) { return parse_word(basis, t); });
      if (!cyclic) {
        std::cout << word_text(w) << '\n';
      } else {
        const auto r = cyclic_reduce(w);
        std::cout << "cyclic " << r.cyclic.to_string() << "\nconjugator " << word_text(r.conjugator) << '\n';
      }
      return 0;
    }
    if (apply_cmd->parsed()) {
      const Basis basis = resolve_basis(rank, {aut, word});
      const auto phi = parse_literal(aut, [&](const std::string& t) { return parse_automorphism(basis, t); });
      const Word w = parse_literal(word, [&](const std::string& t) { return parse_word(basis, t); });
      std::cout << word_text(apply(currents_lab::power(phi, power), w)) << '\n';
      return 0;
    }
    if (coord->parsed()) {
      const Basis basis = resolve_basis(rank, {probe, current});
      const Word v = parse_literal(probe, [&](const std::string& t) { return parse_word(basis, t); });
      const auto nu = parse_literal(current, [&](const std::string& t) { return parse_current(basis, t); });
      std::cout << to_string(coordinate(v, nu)) << '\n';
      return 0;
    }
    if (length_cmd->parsed()) {
      if (current.given()) {
        if (!tree.text.empty()) throw Error(ErrorCode::kInvalidArgument, "--tree does not apply to -c");
        const Basis basis = resolve_basis(rank, {current});
        const auto nu = parse_literal(current, [&](const std::string& t) { return parse_current(basis, t); });
        std::cout << to_string(length(nu)) << '\n';
        return 0;
      }
      if (!element.given()) throw Error(ErrorCode::kInvalidArgument, "length needs -g (with --tree) or -c");
      if (!tree.given()) throw Error(ErrorCode::kInvalidArgument, "length -g needs --tree");
      const Basis basis = resolve_basis(rank, {tree, element});
      const auto t = parse_literal(tree, [&](const std::string& s) { return parse_tree(basis, s); });
      const Word g = parse_literal(element, [&](const std::string& s) { return parse_word(basis, s); });
      Rational value;
      if (method == "britton") {
        value = length_britton(t, g);
      } else if (method == "limit") {
        value = length_limit(t, g, cap);
      } else {
        value = length(t, g);
      }
      std::cout << to_string(value) << '\n';
      return 0;
    }
    if (intersect->parsed()) {
      const Basis basis = resolve_basis(rank, {tree, current});
      const auto t = parse_literal(tree, [&](const std::string& s) { return parse_tree(basis, s); });
      const auto nu = parse_literal(current, [&](const std::string& s) { return parse_current(basis, s); });
      std::cout << to_string(intersection_form(t, nu)) << '\n';
      return 0;
    }
    if (iterate->parsed()) {
      const Basis basis = resolve_basis(rank, {aut, current, target});
      const auto phi = parse_literal(aut, [&](const std::string& t) { return parse_automorphism(basis, t); });
      const auto nu = parse_literal(current, [&](const std::string& t) { return parse_current(basis, t); });
      const auto goal = parse_literal(target, [&](const std::string& t) { return parse_current(basis, t); });
      return emit(iterate_current(phi, nu, iterations, level, goal), out_path, csv_path);
    }
    if (experiment->parsed()) {
      ExperimentConfig config;
      if (rank) config.rank = *rank;
      config.level = level;
      config.iterations = iterations;
      config.cap = cap;
      config.seed = seed;
      config.word = experiment_word;
      config.perturbation = experiment_perturbation;
      return emit(run_experiment(experiment_id, config), out_path, csv_path);
    }
    if (selftest->parsed()) return emit(run_selftest(seed, trials), out_path, csv_path);
  } catch (const LiteralError& e) {
    std::cerr << "error: " << error_code_name(e.error.code()) << " in " << e.flag << ": " << e.error.what() << '\n'
              << "  " << e.text << '\n'
              << "  " << std::string(std::min(e.error.position(), e.text.size()), ' ') << "^\n";
    return exit_code(e.error.code());
  } catch (const Error& e) {
    std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 0;
}
