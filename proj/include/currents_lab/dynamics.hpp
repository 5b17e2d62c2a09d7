#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "currents_lab/automorphism.hpp"
#include "currents_lab/current.hpp"
#include "currents_lab/rational.hpp"
#include "currents_lab/tree_length.hpp"
#include "currents_lab/word.hpp"

namespace currents_lab {

// Ordered name/value pairs. Values are plain strings; rationals use "p/q".
using Fields = std::vector<std::pair<std::string, std::string>>;

struct Assertion {
  std::string name;
  bool passed = false;
  Fields witness;
};

struct ReportTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct ConvergenceReport {
  std::string experiment;
  // The formula the run certifies, in plain ASCII.
  std::string claim;
  Fields params;
  std::vector<ReportTable> tables;
  std::vector<Assertion> assertions;
  std::vector<std::string> notes;

  bool passed() const;
  void check(std::string name, bool passed, Fields witness);
};

// n -> phi^n nu_0 for n = 0..N: lengths, projective vectors at level L and
// distances to the projective class of `target`.
struct CurrentOrbit {
  std::vector<Rational> lengths;
  std::vector<ProjectiveCurrentVector> vectors;
  std::vector<Rational> distances;
};

// Throws kZeroCurrent for a zero seed or target.
CurrentOrbit current_orbit(const FreeAutomorphism& phi, const RationalCurrent& nu0, int iterations,
                           int level, const RationalCurrent& target);
ReportTable orbit_table(const std::string& name, const CurrentOrbit& orbit);
// Long-format table (n, word, value) of the nonzero vector entries.
ReportTable orbit_vector_table(const std::string& name, const CurrentOrbit& orbit);

// Report wrapper around current_orbit. When `twist_growth` is set, phi is
// taken to be a simple twist and the linear growth lower bound
// ||phi^n nu|| >= ||nu|| + n (||phi nu|| - ||nu||) is asserted whenever
// ||phi nu|| > ||nu||.
ConvergenceReport iterate_current(const FreeAutomorphism& phi, const RationalCurrent& nu0,
                                  int iterations, int level, const RationalCurrent& target,
                                  bool twist_growth = false);

struct TreeOrbitLimit {
  ProjectiveTreeVector limit;
  std::vector<CyclicWord> classes;
  // Per class: growth of n -> ||phi^-n g||_{T0}.
  std::vector<StabilizedGrowth> growth;
  // True when every slope was 0 and the stabilized values were used.
  bool used_constants = false;
};

// Projective limit of phi^n T0 on the test classes of length <= level, from
// the eventual slopes of n -> ||phi^-n g||_{T0}. Each sequence is only
// searched for a stable window from n = |g| on. Throws kNotStabilized naming
// the class.
TreeOrbitLimit tree_orbit_limit_trace(const FreeAutomorphism& phi, const TreeLengthFunction& t0,
                                      int level, std::size_t cap = 64);
inline ProjectiveTreeVector tree_orbit_limit(const FreeAutomorphism& phi,
                                             const TreeLengthFunction& t0, int level,
                                             std::size_t cap = 64) {
  return tree_orbit_limit_trace(phi, t0, level, cap).limit;
}

// A simple twist x -> x y and the direction in which its iterates pull nu
// projectively towards mu_y.
struct Escape {
  FreeAutomorphism twist;
  int direction;
  Letter twisted;
  Letter target;
  // Coordinates that decided the branch: (x), (x y), (x y^-1).
  Rational twisted_coordinate;
  Rational with_target;
  Rational with_inverse_target;
  // ||twist^direction nu|| - ||nu||, always > 0.
  Rational increment;
  // Whether nu lies on the critical set of x0 -> x0 y0, x0 the heaviest
  // letter (lowest index on ties) and y0 the lowest-index other letter.
  bool in_critical_set;
};

// Picks the simple twist x -> xy and direction with the largest first length
// increment (x) - 2 (x y^-+1); ties go to lower x, then lower y, then the
// forward direction. Off the critical set of x0 -> x0 y0 that twist can be
// x0 -> x0 y0 itself; on it, (x0 z0) = (x0 z0^-1) = 0 for the next letter z0
// and x0 -> x0 z0 grows. Throws kRankTooSmall below rank 3, kZeroCurrent for
// nu = 0 and kValidationFailure if the vanishing fails.
Escape escape_from_critical(const RationalCurrent& nu);

struct ExperimentConfig {
  int rank = 5;
  int level = 2;
  int iterations = 50;
  std::size_t cap = 64;
  std::uint64_t seed = 1;
  // Experiment-specific word arguments; empty selects the default.
  std::string word;
  std::string perturbation;
};

ConvergenceReport run_theorem_main(int rank, int iterations, int level, std::size_t cap = 64);
ConvergenceReport run_theorem_back(int rank);
ConvergenceReport run_product_minimal(int rank, int iterations, int level, std::size_t cap = 64);
// u must be a nontrivial word in a, b.
ConvergenceReport run_primitive_limit(int rank, const Word& u, int iterations, int level);
// (a; mu_f) must be odd and (a; mu_g) even.
ConvergenceReport run_off_critical_perturbation(int rank, const Word& g, const Word& f,
                                                int iterations, int level);
ConvergenceReport run_outlook_identity(int rank, int iterations, std::uint64_t seed = 1);
// `trials` seeded random currents, each driven by escape_from_critical for
// `steps` iterations; asserts L=1 distance <= 1/10 to the target letter.
ConvergenceReport run_minimality_walk(int rank, int trials, int steps, std::uint64_t seed);

// Known ids: theorem-main, theorem-back, product-minimal, primitive-limit,
// off-critical, outlook-identity, minimality-walk.
const std::vector<std::string>& experiment_ids();
// Throws kUnknownExperiment.
ConvergenceReport run_experiment(const std::string& id, const ExperimentConfig& config);

// Distance bound for d_L(mu_{c u^n}, mu_u) used by run_primitive_limit:
// (2s + L - 1) / (n |u'| + s) with u = h u' h^-1 cyclically reduced and
// s = 2|h| + 1.
Rational primitive_limit_bound(const Word& u, int n, int level);

}  // namespace currents_lab
