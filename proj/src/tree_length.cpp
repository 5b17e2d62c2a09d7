#include "currents_lab/tree_length.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>

#include "currents_lab/errors.hpp"
#include "currents_lab/parallel.hpp"

namespace currents_lab {

WeightedCayleyCore WeightedCayleyCore::uniform(Basis basis) {
  return WeightedCayleyCore{basis, std::vector<Rational>(static_cast<std::size_t>(basis.rank()), 1)};
}

TwistSplittingCore::TwistSplittingCore(Basis basis, std::vector<SplittingTwist> twists)
    : basis_(basis), twists_(std::move(twists)) {
  if (twists_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "twist splitting needs at least one stable letter");
  }
  std::set<int> stable;
  std::set<int> twistors;
  for (const auto& tw : twists_) {
    if (tw.stable.inverted() || tw.twistor.inverted()) {
      throw Error(ErrorCode::kInvalidArgument, "stable letters and twistors must be positive");
    }
    if (tw.stable.index() > basis.rank() || tw.twistor.index() > basis.rank()) {
      throw Error(ErrorCode::kBasisMismatch, "twist letter outside basis");
    }
    if (tw.stable == tw.twistor) {
      throw Error(ErrorCode::kInvalidArgument, "stable letter equals its twistor");
    }
    if (sgn(tw.edge_length) <= 0) {
      throw Error(ErrorCode::kInvalidArgument, "edge lengths must be positive");
    }
    if (!stable.insert(tw.stable.index()).second || !twistors.insert(tw.twistor.index()).second) {
      throw Error(ErrorCode::kInvalidArgument, "stable letters and twistors must be distinct");
    }
  }
  for (int t : stable) {
    if (twistors.count(t) != 0) {
      throw Error(ErrorCode::kInvalidArgument, "a twistor may not be a stable letter");
    }
  }
}

TwistSplittingCore TwistSplittingCore::simple(Basis basis, Letter stable, Letter twistor) {
  return TwistSplittingCore(basis, {SplittingTwist{stable, twistor, Rational(1)}});
}

TwistSplittingCore TwistSplittingCore::double_twist(Basis basis, const Rational& a_length,
                                                    const Rational& e_length) {
  if (basis.rank() < 5) throw Error(ErrorCode::kRankTooSmall, "double twist splitting requires rank >= 5");
  return TwistSplittingCore(
      basis, {SplittingTwist{Letter::from_symbol('a'), Letter::from_symbol('b'), a_length},
              SplittingTwist{Letter::from_symbol('e'), Letter::from_symbol('d'), e_length}});
}

FreeAutomorphism TwistSplittingCore::twist_automorphism() const {
  FreeAutomorphism result = FreeAutomorphism::identity(basis_);
  for (const auto& tw : twists_) result = compose(make_simple_twist(basis_, tw.stable, tw.twistor), result);
  return result;
}

TreeLengthFunction::TreeLengthFunction(TreeCore core)
    : TreeLengthFunction(core, FreeAutomorphism::identity(std::visit(
                                   [](const auto& c) -> Basis {
                                     if constexpr (std::is_same_v<std::decay_t<decltype(c)>,
                                                                  WeightedCayleyCore>) {
                                       return c.basis;
                                     } else {
                                       return c.basis();
                                     }
                                   },
                                   core)),
                         Rational(1)) {}

TreeLengthFunction::TreeLengthFunction(TreeCore core, FreeAutomorphism marking, Rational scale)
    : core_(std::move(core)), marking_(std::move(marking)), scale_(std::move(scale)) {
  if (sgn(scale_) <= 0) throw Error(ErrorCode::kInvalidArgument, "tree scale must be positive");
  if (const auto* cayley = std::get_if<WeightedCayleyCore>(&core_)) {
    if (cayley->basis != marking_.basis() ||
        cayley->letter_lengths.size() != static_cast<std::size_t>(cayley->basis.rank())) {
      throw Error(ErrorCode::kBasisMismatch, "Cayley core does not match marking basis");
    }
    for (const auto& len : cayley->letter_lengths) {
      if (sgn(len) <= 0) throw Error(ErrorCode::kInvalidArgument, "Cayley edge lengths must be positive");
    }
  } else if (std::get<TwistSplittingCore>(core_).basis() != marking_.basis()) {
    throw Error(ErrorCode::kBasisMismatch, "twist core does not match marking basis");
  }
}

TreeLengthFunction TreeLengthFunction::cayley(Basis basis) {
  return TreeLengthFunction(WeightedCayleyCore::uniform(basis));
}

TreeLengthFunction TreeLengthFunction::acted_on_by(const FreeAutomorphism& phi) const {
  return TreeLengthFunction(core_, compose(phi, marking_), scale_);
}

TreeLengthFunction TreeLengthFunction::scaled(const Rational& r) const {
  if (sgn(r) <= 0) throw Error(ErrorCode::kInvalidArgument, "tree scale must be positive");
  return TreeLengthFunction(core_, marking_, scale_ * r);
}

namespace {

// Cyclic Britton reduction over the basis letters extended by one fresh
// letter zbar_i = t_i z_i t_i^-1 per twist. Codes 0..2k-1 are basis letters;
// 2k + 2i (+1 for the inverse) is zbar_i.
class BrittonReducer {
 public:
  explicit BrittonReducer(const TwistSplittingCore& core) : core_(core) {
    const int alphabet = core.basis().alphabet_size();
    stable_of_.assign(static_cast<std::size_t>(alphabet + 2 * core.twists().size()), -1);
    for (std::size_t i = 0; i < core.twists().size(); ++i) {
      const auto code = core.twists()[i].stable.code();
      stable_of_[code] = static_cast<int>(i);
      stable_of_[code + 1U] = static_cast<int>(i);
    }
    base_alphabet_ = static_cast<std::uint8_t>(alphabet);
  }

  Rational translation_length(const Word& g) const {
    std::vector<std::uint8_t> w;
    w.reserve(g.size());
    for (auto x : g) w.push_back(x.code());
    for (;;) {
      w = reduce_linear(w);
      if (w.size() >= 2 && w.front() == (w.back() ^ 1U)) {
        w = std::vector<std::uint8_t>(w.begin() + 1, w.end() - 1);
        continue;
      }
      std::vector<std::size_t> stable_positions;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (stable_index(w[i]) >= 0) stable_positions.push_back(i);
      }
      if (stable_positions.empty()) return Rational(0);
      const std::size_t last = stable_positions.back();
      const std::size_t first = stable_positions.front();
      if (stable_positions.size() >= 2 && wrap_pinch(w, last, first)) {
        std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(last), w.end());
        continue;
      }
      Rational total(0);
      for (auto pos : stable_positions) {
        total += core_.twists()[static_cast<std::size_t>(stable_index(w[pos]))].edge_length;
      }
      return total;
    }
  }

 private:
  int stable_index(std::uint8_t code) const {
    return code < stable_of_.size() ? stable_of_[code] : -1;
  }
  std::uint8_t twistor_code(int i) const {
    return core_.twists()[static_cast<std::size_t>(i)].twistor.code();
  }
  std::uint8_t bar_code(int i) const {
    return static_cast<std::uint8_t>(base_alphabet_ + 2 * i);
  }
  std::uint8_t stable_code(int i) const {
    return core_.twists()[static_cast<std::size_t>(i)].stable.code();
  }

  // Does the cyclic segment between the stable letters at `last` and `first`
  // (wrapping through the end of w) form a pinch?
  bool wrap_pinch(const std::vector<std::uint8_t>& w, std::size_t last, std::size_t first) const {
    const int i = stable_index(w[last]);
    if (stable_index(w[first]) != i || w[first] != (w[last] ^ 1U)) return false;
    const bool opens_positive = (w[last] & 1U) == 0;
    const std::uint8_t inner = opens_positive ? twistor_code(i) : bar_code(i);
    std::optional<std::uint8_t> run;
    auto check = [&](std::uint8_t code) {
      if ((code | 1U) != (inner | 1U)) return false;
      if (run && *run != code) return false;
      run = code;
      return true;
    };
    for (std::size_t p = last + 1; p < w.size(); ++p) {
      if (!check(w[p])) return false;
    }
    for (std::size_t p = 0; p < first; ++p) {
      if (!check(w[p])) return false;
    }
    return run.has_value();
  }

  void push(std::vector<std::uint8_t>& stack, std::uint8_t x) const {
    if (!stack.empty() && stack.back() == (x ^ 1U)) {
      stack.pop_back();
      return;
    }
    const int i = stable_index(x);
    if (i >= 0 && !stack.empty()) {
      // x closes t z^m t^-1 (x = t^-1) or t^-1 zbar^m t (x = t).
      const bool closes_positive = (x & 1U) != 0;
      const std::uint8_t inner = closes_positive ? twistor_code(i) : bar_code(i);
      const std::uint8_t opener = closes_positive ? stable_code(i) : static_cast<std::uint8_t>(stable_code(i) + 1U);
      const std::uint8_t top = stack.back();
      if ((top | 1U) == (inner | 1U)) {
        std::size_t j = stack.size();
        while (j > 0 && stack[j - 1] == top) --j;
        if (j > 0 && stack[j - 1] == opener) {
          const std::size_t m = stack.size() - j;
          const bool negative = (top & 1U) != 0;
          const std::uint8_t replacement =
              static_cast<std::uint8_t>((closes_positive ? bar_code(i) : twistor_code(i)) + (negative ? 1U : 0U));
          stack.resize(j - 1);
          for (std::size_t k = 0; k < m; ++k) push(stack, replacement);
          return;
        }
      }
    }
    stack.push_back(x);
  }

  std::vector<std::uint8_t> reduce_linear(const std::vector<std::uint8_t>& w) const {
    std::vector<std::uint8_t> stack;
    stack.reserve(w.size());
    for (auto x : w) push(stack, x);
    return stack;
  }

  const TwistSplittingCore& core_;
  std::vector<int> stable_of_;
  std::uint8_t base_alphabet_ = 0;
};

Rational weighted_cyclic_length(const WeightedCayleyCore& core, const Word& g) {
  Rational total(0);
  const CyclicWord c = cyclic_word(g);
  for (auto x : c.letters()) {
    total += core.letter_lengths[static_cast<std::size_t>(x.index() - 1)];
  }
  return total;
}

void require_nontrivial(const Word& g) {
  if (g.empty()) throw Error(ErrorCode::kIdentityElement, "translation length of the identity");
}

const TwistSplittingCore& twist_core(const TreeLengthFunction& tree) {
  const auto* core = std::get_if<TwistSplittingCore>(&tree.core());
  if (core == nullptr) throw Error(ErrorCode::kInvalidArgument, "tree has no twist splitting core");
  return *core;
}

}  // namespace

Rational length_britton(const TreeLengthFunction& tree, const Word& g) {
  require_nontrivial(g);
  const auto& core = twist_core(tree);
  return tree.scale() * BrittonReducer(core).translation_length(apply_inverse(tree.marking(), g));
}

StabilizedGrowth extract_growth(const std::function<Rational()>& next, GrowthOptions options,
                                const std::string& label) {
  StabilizedGrowth out;
  const std::size_t window = std::max<std::size_t>(options.window, 1);
  // Need s_0 .. s_{n+window} for a window starting at n.
  while (true) {
    const std::size_t n = out.sequence.size() >= window + 1 ? out.sequence.size() - window - 1 : 0;
    if (out.sequence.size() >= window + 1 && n >= options.start) {
      const auto& s = out.sequence;
      const Rational d = s[n + 1] - s[n];
      bool constant = true;
      for (std::size_t k = 1; k < window; ++k) {
        if (s[n + k + 1] - s[n + k] != d) {
          constant = false;
          break;
        }
      }
      if (constant) {
        out.slope = d;
        out.value_at_start = s[n];
        out.stabilized_at = n;
        return out;
      }
    }
    if (out.sequence.size() > options.cap) {
      std::string seq;
      for (const auto& v : out.sequence) seq += (seq.empty() ? "" : ", ") + to_string(v);
      throw Error(ErrorCode::kNotStabilized,
                  label + ": no " + std::to_string(window) + " equal differences within cap " +
                      std::to_string(options.cap) + "; sequence [" + seq + "]");
    }
    out.sequence.push_back(next());
  }
}

StabilizedGrowth length_limit_trace(const TreeLengthFunction& tree, const Word& g,
                                    std::size_t cap) {
  require_nontrivial(g);
  if (cap < 8) throw Error(ErrorCode::kInvalidArgument, "length_limit cap must be >= 8");
  const auto& core = twist_core(tree);
  const Basis basis = core.basis();
  std::vector<Rational> weights(static_cast<std::size_t>(basis.rank()), 0);
  for (const auto& tw : core.twists()) {
    weights[static_cast<std::size_t>(tw.twistor.index() - 1)] = tw.edge_length;
  }
  const FreeAutomorphism twist = core.twist_automorphism();
  CyclicWord current = cyclic_word(apply_inverse(tree.marking(), g));
  bool first = true;
  auto next = [&]() {
    if (!first) current = apply_cyclic(twist, current);
    first = false;
    Rational total(0);
    for (auto x : current.letters()) total += weights[static_cast<std::size_t>(x.index() - 1)];
    return total;
  };
  GrowthOptions options;
  options.cap = cap;
  options.start = current.size();
  auto growth = extract_growth(next, options, "length_limit(" + g.to_string() + ")");
  growth.slope *= tree.scale();
  return growth;
}

Rational length_limit(const TreeLengthFunction& tree, const Word& g, std::size_t cap) {
  return length_limit_trace(tree, g, cap).slope;
}

Rational length(const TreeLengthFunction& tree, const Word& g) {
  require_nontrivial(g);
  if (const auto* cayley = std::get_if<WeightedCayleyCore>(&tree.core())) {
    return tree.scale() * weighted_cyclic_length(*cayley, apply_inverse(tree.marking(), g));
  }
  return length_britton(tree, g);
}

Rational length(const TreeLengthFunction& tree, const CyclicWord& g) {
  return length(tree, g.linear());
}

Rational intersection_form(const TreeLengthFunction& tree, const RationalCurrent& nu) {
  if (tree.basis() != nu.basis()) throw Error(ErrorCode::kBasisMismatch, "tree and current over different bases");
  Rational total(0);
  for (const auto& [root, weight] : nu.terms()) total += weight * length(tree, root);
  return total;
}

std::vector<CyclicWord> test_classes(Basis basis, int level) {
  if (level < 1) throw Error(ErrorCode::kInvalidArgument, "test-set level must be >= 1");
  std::vector<CyclicWord> out;
  for (int len = 1; len <= level; ++len) {
    for (const Word& w : reduced_words_of_length(basis, static_cast<std::size_t>(len))) {
      if (w.size() > 1 && w[0] == w[w.size() - 1].inverse()) continue;
      const CyclicWord c = cyclic_word(w);
      if (c.linear() != w) continue;
      if (root_decomposition(c).exponent != 1) continue;
      if (invert(c) < c) continue;
      out.push_back(c);
    }
  }
  return out;
}

Rational ProjectiveTreeVector::entry(const CyclicWord& g) const {
  const CyclicWord key = std::min(g, invert(g));
  for (const auto& [c, value] : entries_) {
    if (c == key) return value;
  }
  throw Error(ErrorCode::kInvalidArgument, "class " + g.to_string() + " not in the test set");
}

ProjectiveTreeVector normalize_tree_values(int level, const std::vector<CyclicWord>& classes,
                                           const std::vector<Rational>& values) {
  Rational total(0);
  for (const auto& v : values) total += v;
  if (sgn(total) == 0) {
    throw Error(ErrorCode::kAllElliptic, "every test class has translation length 0");
  }
  std::vector<std::pair<CyclicWord, Rational>> entries;
  entries.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) entries.emplace_back(classes[i], values[i] / total);
  return ProjectiveTreeVector(level, std::move(entries));
}

ProjectiveTreeVector projective_tree_vector(const TreeLengthFunction& tree, int level) {
  const auto classes = test_classes(tree.basis(), level);
  std::vector<Rational> values(classes.size());
  parallel_for(classes.size(), [&](std::size_t i) { values[i] = length(tree, classes[i]); });
  return normalize_tree_values(level, classes, values);
}

}  // namespace currents_lab
