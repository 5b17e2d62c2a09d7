#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "currents_lab/automorphism.hpp"
#include "currents_lab/current.hpp"
#include "currents_lab/rational.hpp"
#include "currents_lab/word.hpp"

namespace currents_lab {

// The Cayley tree of the basis with per-letter edge lengths.
struct WeightedCayleyCore {
  Basis basis;
  std::vector<Rational> letter_lengths;

  // All edges of length 1.
  static WeightedCayleyCore uniform(Basis basis);
};

// One loop edge of a twist splitting: stable letter t conjugates the twistor
// z to the fresh vertex-group element t z t^-1.
struct SplittingTwist {
  Letter stable;
  Letter twistor;
  Rational edge_length;
};

// The Bass-Serre tree of the splitting of F with stable letters t_i whose
// vertex group is generated by the remaining letters and the t_i z_i t_i^-1.
class TwistSplittingCore {
 public:
  // Throws kInvalidArgument unless stable letters and twistors are pairwise
  // distinct positive generators, no twistor is stable, and lengths are > 0.
  TwistSplittingCore(Basis basis, std::vector<SplittingTwist> twists);

  // The tree of the simple twist t -> t z with unit edge.
  static TwistSplittingCore simple(Basis basis, Letter stable, Letter twistor);
  // Stable letters a (twistor b, edge length a_length) and e (twistor d,
  // edge length e_length). Rank >= 5.
  static TwistSplittingCore double_twist(Basis basis, const Rational& a_length,
                                         const Rational& e_length);

  Basis basis() const noexcept { return basis_; }
  const std::vector<SplittingTwist>& twists() const noexcept { return twists_; }

  // The multi-twist t_i -> t_i z_i.
  FreeAutomorphism twist_automorphism() const;

 private:
  Basis basis_;
  std::vector<SplittingTwist> twists_;
};

using TreeCore = std::variant<WeightedCayleyCore, TwistSplittingCore>;

// A translation length function g -> scale * ||marking^-1(g)||_core, i.e.
// the core tree acted on by the marking and rescaled.
class TreeLengthFunction {
 public:
  explicit TreeLengthFunction(TreeCore core);
  TreeLengthFunction(TreeCore core, FreeAutomorphism marking, Rational scale);

  // The Cayley tree with unit edges.
  static TreeLengthFunction cayley(Basis basis);

  Basis basis() const noexcept { return marking_.basis(); }
  const TreeCore& core() const noexcept { return core_; }
  const FreeAutomorphism& marking() const noexcept { return marking_; }
  const Rational& scale() const noexcept { return scale_; }
  bool has_twist_core() const noexcept {
    return std::holds_alternative<TwistSplittingCore>(core_);
  }

  // phi T, with ||w||_{phi T} = ||phi^-1(w)||_T.
  TreeLengthFunction acted_on_by(const FreeAutomorphism& phi) const;
  // r T for r > 0.
  TreeLengthFunction scaled(const Rational& r) const;

 private:
  TreeCore core_;
  FreeAutomorphism marking_;
  Rational scale_;
};

// Translation length via cyclic Britton reduction. Requires a twist core.
Rational length_britton(const TreeLengthFunction& tree, const Word& g);

// Options for extracting the eventual slope of an eventually linear sequence
// s_0, s_1, ...: the first index n >= start with `window` equal consecutive
// differences d_n, ..., d_{n+window-1} wins. Indices past `cap` are an error.
struct GrowthOptions {
  std::size_t window = 3;
  std::size_t cap = 64;
  std::size_t start = 0;
};

struct StabilizedGrowth {
  Rational slope;
  // s_n at the index where the window starts.
  Rational value_at_start;
  std::size_t stabilized_at;
  std::vector<Rational> sequence;
};

// `next` yields s_0, s_1, ... on successive calls. Throws kNotStabilized,
// listing the sequence, when no window fits below the cap.
StabilizedGrowth extract_growth(const std::function<Rational()>& next, GrowthOptions options,
                                const std::string& label);

// Translation length as lim |Phi^n(marking^-1 g)|_w / n with Phi the
// multi-twist of the core and w the twistor weights. Requires a twist core
// and cap >= 8. Transients are skipped up to the cyclic length of the word.
Rational length_limit(const TreeLengthFunction& tree, const Word& g, std::size_t cap = 64);
StabilizedGrowth length_limit_trace(const TreeLengthFunction& tree, const Word& g,
                                    std::size_t cap = 64);

// Dispatches on the core; Britton reduction for twist cores.
Rational length(const TreeLengthFunction& tree, const Word& g);
Rational length(const TreeLengthFunction& tree, const CyclicWord& g);

// I(T, nu) = sum of weight * ||root||_T.
Rational intersection_form(const TreeLengthFunction& tree, const RationalCurrent& nu);

// Power-free conjugacy classes of cyclic length <= level, one per inverse
// pair, ordered by length then letters.
std::vector<CyclicWord> test_classes(Basis basis, int level);

class ProjectiveTreeVector {
 public:
  ProjectiveTreeVector(int level, std::vector<std::pair<CyclicWord, Rational>> entries)
      : level_(level), entries_(std::move(entries)) {}

  int level() const noexcept { return level_; }
  const std::vector<std::pair<CyclicWord, Rational>>& entries() const noexcept {
    return entries_;
  }
  Rational entry(const CyclicWord& g) const;

  friend bool operator==(const ProjectiveTreeVector&, const ProjectiveTreeVector&) = default;

 private:
  int level_;
  std::vector<std::pair<CyclicWord, Rational>> entries_;
};

// Normalizes raw per-class values to sum 1. Throws kAllElliptic when they
// sum to zero.
ProjectiveTreeVector normalize_tree_values(int level, const std::vector<CyclicWord>& classes,
                                           const std::vector<Rational>& values);
ProjectiveTreeVector projective_tree_vector(const TreeLengthFunction& tree, int level);
inline bool tree_projective_eq(const ProjectiveTreeVector& p, const ProjectiveTreeVector& q) {
  return p == q;
}

}  // namespace currents_lab
