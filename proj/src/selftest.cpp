#include "currents_lab/selftest.hpp"

#include <exception>
#include <string>

#include "currents_lab/automorphism.hpp"
#include "currents_lab/current.hpp"
#include "currents_lab/random.hpp"
#include "currents_lab/tree_length.hpp"

namespace currents_lab {

namespace {

struct Suite {
  std::string name;
  int rank;
  int checked = 0;
  int failed = 0;
  Fields witness;

  void expect(bool ok, Fields w) {
    ++checked;
    if (ok) return;
    if (failed++ == 0) witness = std::move(w);
  }
};

std::string str(const Rational& r) { return r.get_str(); }

FreeAutomorphism random_automorphism(Basis basis, int steps, Rng& rng) {
  std::uniform_int_distribution<int> letter(1, basis.rank());
  std::uniform_int_distribution<int> direction(0, 1);
  FreeAutomorphism phi = FreeAutomorphism::identity(basis);
  for (int s = 0; s < steps; ++s) {
    const int t = letter(rng);
    int z = letter(rng);
    while (z == t) z = letter(rng);
    FreeAutomorphism twist = make_simple_twist(basis, Letter::generator(t), Letter::generator(z));
    phi = compose(direction(rng) == 0 ? twist : invert(twist), phi);
  }
  return phi;
}

void word_suite(Suite& suite, Basis basis, int trials, Rng& rng) {
  std::uniform_int_distribution<std::size_t> len(0, 4);
  std::uniform_int_distribution<int> exponent(2, 4);
  for (int i = 0; i < trials; ++i) {
    const Word u = random_cyclic_word(basis, 10, rng);
    const Word h = random_word(basis, len(rng), rng);
    const Word conj = concat(concat(h, u), invert(h));
    const CyclicWord c = cyclic_word(u);
    const auto reduced = cyclic_reduce(conj);
    const Word rebuilt = concat(concat(reduced.conjugator, reduced.cyclic.linear()), invert(reduced.conjugator));
    suite.expect(cyclic_word(conj) == c && rebuilt == conj,
                 {{"check", "conjugacy"}, {"u", u.to_string()}, {"h", h.to_string()}});
    const Word v = random_word(basis, 1 + len(rng), rng);
    const int m = exponent(rng);
    const CyclicWord cm = cyclic_word(power(u, m));
    suite.expect(occurrences(v, c) == occurrences(invert(v), c) &&
                     occurrences(v, cm) == static_cast<std::size_t>(m) * occurrences(v, c),
                 {{"check", "occurrences"}, {"u", u.to_string()}, {"v", v.to_string()}, {"m", std::to_string(m)}});
  }
}

void automorphism_suite(Suite& suite, Basis basis, int trials, Rng& rng) {
  for (int i = 0; i < trials; ++i) {
    const auto f = random_automorphism(basis, 4, rng);
    const auto g = random_automorphism(basis, 3, rng);
    const Word u = random_word(basis, 12, rng);
    const Fields w{{"f", f.to_string()}, {"g", g.to_string()}, {"u", u.to_string()}};
    suite.expect(f.verify() && compose(f, invert(f)).is_identity(), w);
    suite.expect(apply(f, apply_inverse(f, u)) == u, w);
    suite.expect(apply(compose(f, g), u) == apply(f, apply(g, u)), w);
  }
}

void current_suite(Suite& suite, Basis basis, int trials, Rng& rng) {
  const int level = basis.rank() <= 3 ? 3 : 2;
  std::vector<Word> probes;
  for (int n = 1; n <= level; ++n) {
    for (auto& v : reduced_words_of_length(basis, static_cast<std::size_t>(n))) probes.push_back(v);
  }
  for (int i = 0; i < trials; ++i) {
    const auto nu = random_current(basis, 3, 10, rng);
    const CoordinateTable table(nu, level + 1);
    for (const auto& v : probes) {
      Rational right = 0;
      Rational left = 0;
      for (int code = 0; code < basis.alphabet_size(); ++code) {
        const Letter x = Letter::from_code(static_cast<std::uint8_t>(code));
        if (x != v[v.size() - 1].inverse()) right += table(concat(v, Word::letter(basis, x)));
        if (x != v[0].inverse()) left += table(concat(Word::letter(basis, x), v));
      }
      const Rational value = table(v);
      suite.expect(value >= 0 && value == right && value == left,
                   {{"check", "extension"}, {"nu", nu.to_string()}, {"v", v.to_string()}, {"value", str(value)},
                    {"right", str(right)}, {"left", str(left)}});
    }
    for (int m = 1; m <= level; ++m) {
      Rational sum = 0;
      for (const auto& u : reduced_words_of_length(basis, static_cast<std::size_t>(m))) sum += table(u);
      suite.expect(2 * length(nu) == sum, {{"check", "level"}, {"nu", nu.to_string()}, {"m", std::to_string(m)},
                                           {"length", str(length(nu))}, {"sum", str(sum)}});
    }
    const auto f = random_automorphism(basis, 3, rng);
    const auto g = random_automorphism(basis, 2, rng);
    suite.expect(act(compose(f, g), nu) == act(f, act(g, nu)),
                 {{"check", "equivariance"}, {"nu", nu.to_string()}, {"f", f.to_string()}, {"g", g.to_string()}});
  }
}

void twist_suite(Suite& suite, Basis basis, int trials, Rng& rng) {
  const Letter a = Letter::generator(1);
  const Letter b = Letter::generator(2);
  const auto D = make_simple_twist(basis, a, b);
  for (int i = 0; i < trials; ++i) {
    const auto nu = random_current(basis, 3, 12, rng);
    const auto Dnu = act(D, nu);
    const auto c = [&](const char* v, const RationalCurrent& m) { return coordinate(Word::parse(basis, v), m); };
    auto identity = [&](const char* name, const Rational& lhs, const Rational& rhs) {
      suite.expect(lhs == rhs, {{"identity", name}, {"nu", nu.to_string()}, {"lhs", str(lhs)}, {"rhs", str(rhs)}});
    };
    for (int k = 1; k <= basis.rank(); ++k) {
      if (k == 2) continue;
      const Word x = Word::letter(basis, Letter::generator(k));
      identity(("(x; D nu) = (x; nu), x = " + x.to_string()).c_str(), coordinate(x, Dnu), coordinate(x, nu));
    }
    identity("(b; D nu) = (b; nu) + (a; nu) - 2 (aB; nu)", c("b", Dnu), c("b", nu) + c("a", nu) - 2 * c("aB", nu));
    identity("(aB; D nu) = (aBB; nu) + (aBA; nu)", c("aB", Dnu), c("aBB", nu) + c("aBA", nu));
    identity("||D nu|| - ||nu|| = (a; nu) - 2 (aB; nu)", length(Dnu) - length(nu), c("a", nu) - 2 * c("aB", nu));
    if (length(Dnu) > length(nu)) {
      const auto D2nu = act(D, Dnu);
      const Rational first = length(Dnu) - length(nu);
      const Rational second = length(D2nu) - length(Dnu);
      suite.expect(second >= first, {{"identity", "increments nondecreasing"}, {"nu", nu.to_string()},
                                     {"first", str(first)}, {"second", str(second)}});
    }
  }
}

void tree_suite(Suite& suite, Basis basis, int trials, Rng& rng) {
  std::vector<std::pair<std::string, TreeLengthFunction>> trees;
  trees.emplace_back("T_D", TreeLengthFunction(TwistSplittingCore::simple(basis, Letter::generator(1), Letter::generator(2))));
  if (basis.rank() >= 5) {
    trees.emplace_back("Delta(1,1)", TreeLengthFunction(TwistSplittingCore::double_twist(basis, 1, 1)));
    trees.emplace_back("Delta(1/2,3)", TreeLengthFunction(TwistSplittingCore::double_twist(basis, Rational(1, 2), 3)));
  }
  const auto cayley = TreeLengthFunction::cayley(basis);
  std::uniform_int_distribution<std::size_t> len(1, 20);
  for (int i = 0; i < trials; ++i) {
    const Word g = random_word(basis, len(rng), rng);
    const Word h = random_word(basis, len(rng) % 5, rng);
    const Word conj = concat(concat(h, g), invert(h));
    for (const auto& [name, tree] : trees) {
      const Rational britton = length_britton(tree, g);
      const Rational limit = length_limit(tree, g);
      suite.expect(britton == limit && britton >= 0, {{"tree", name}, {"check", "britton = limit"}, {"g", g.to_string()},
                                                      {"britton", str(britton)}, {"limit", str(limit)}});
      suite.expect(length(tree, conj) == britton && length(tree, invert(g)) == britton,
                   {{"tree", name}, {"check", "conjugacy and inversion"}, {"g", g.to_string()}, {"h", h.to_string()}});
    }
    if (!g.empty()) {
      const auto nu = RationalCurrent::counting(g);
      suite.expect(intersection_form(cayley, nu) == length(nu) && length(nu) == length(cayley, g),
                   {{"tree", "Cayley"}, {"check", "I(T_A, mu_g) = ||g||"}, {"g", g.to_string()}});
    }
  }
}

}  // namespace

ConvergenceReport run_selftest(std::uint64_t seed, int trials) {
  ConvergenceReport report;
  report.experiment = "selftest";
  report.claim = "invariant suites: words, automorphisms, currents, twist identities, tree lengths";
  report.params = {{"seed", std::to_string(seed)}, {"trials", std::to_string(trials)}, {"ranks", "2,3,5"}};
  ReportTable summary{"suites", {"suite", "rank", "checked", "failed"}, {}};
  using Runner = void (*)(Suite&, Basis, int, Rng&);
  const std::pair<const char*, Runner> suites[] = {
      {"words", word_suite},         {"automorphisms", automorphism_suite}, {"currents", current_suite},
      {"twist identities", twist_suite}, {"tree lengths", tree_suite},
  };
  for (int rank : {2, 3, 5}) {
    for (std::size_t s = 0; s < std::size(suites); ++s) {
      // Each cell has its own stream so suites stay comparable across edits.
      Rng rng(seed * 1000003u + static_cast<std::uint64_t>(rank) * 101u + s);
      Suite suite{suites[s].first, rank, 0, 0, {}};
      try {
        suites[s].second(suite, Basis{rank}, trials, rng);
      } catch (const std::exception& e) {
        suite.expect(false, {{"exception", e.what()}});
      }
      summary.rows.push_back({suite.name, std::to_string(rank), std::to_string(suite.checked),
                              std::to_string(suite.failed)});
      Fields witness = suite.witness;
      witness.insert(witness.begin(), {"checked", std::to_string(suite.checked)});
      report.check(suite.name + " rank " + std::to_string(rank), suite.failed == 0, std::move(witness));
    }
  }
  report.tables.push_back(std::move(summary));
  return report;
}

}  // namespace currents_lab
