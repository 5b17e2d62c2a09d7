#include <random>
#include <set>

#include "currents_lab/errors.hpp"
#include "currents_lab/word.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace currents_lab;
using currents_lab::testing::C;
using currents_lab::testing::W;

namespace {

const Basis kRank2{2};
const Basis kRank3{3};

// Conjugacy oracle independent of least_rotation: strip inverse end pairs,
// then look for one core inside the doubled other.
std::string strip_core(std::string s) {
  while (s.size() >= 2 && testing::string_inverse(s.substr(0, 1)) == s.substr(s.size() - 1)) {
    s = s.substr(1, s.size() - 2);
  }
  return s;
}

bool oracle_conjugate(const Word& u, const Word& v) {
  const std::string cu = strip_core(u.to_string());
  const std::string cv = strip_core(v.to_string());
  if (cu.size() != cv.size()) return false;
  return (cu + cu).find(cv) != std::string::npos;
}

}  // namespace

TEST_CASE("free_reduce cancels adjacent inverse pairs") {
  const Basis b{3};
  CHECK(W(b, "abB a").to_string() == "aa");
  CHECK(W(b, "aA").empty());
  CHECK(W(b, "aBbA").empty());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> pick(0, b.alphabet_size() - 1);
    std::vector<Letter> raw(static_cast<std::size_t>(trial % 17));
    for (auto& x : raw) x = Letter::from_code(static_cast<std::uint8_t>(pick(rng)));
    const Word once = free_reduce(b, raw);
    CHECK(free_reduce(b, once.letters()) == once);
    for (std::size_t i = 1; i < once.size(); ++i) CHECK(once[i] != once[i - 1].inverse());
  }
}

TEST_CASE("word parsing rejects bad input with positions") {
  CHECK_THROWS_AS(Word::parse(kRank2, "abc"), ParseError);
  try {
    (void)Word::parse(kRank3, "ab1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK(W(kRank2, "").empty());
}

TEST_CASE("concat and invert") {
  const Basis b{3};
  CHECK(concat(W(b, "ab"), W(b, "Bc")).to_string() == "ac");
  CHECK(invert(W(b, "abC")).to_string() == "cBA");
  CHECK_THROWS_AS(concat(W(b, "a"), W(Basis{4}, "a")), Error);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const Word u = testing::random_reduced_word(b, static_cast<std::size_t>(trial % 12), rng);
    const Word v = testing::random_reduced_word(b, static_cast<std::size_t>(trial % 9), rng);
    CHECK(concat(u, invert(u)).empty());
    CHECK(invert(invert(u)) == u);
    CHECK(concat(u, v).size() <= u.size() + v.size());
  }
  CHECK(power(W(b, "ab"), 3).to_string() == "ababab");
  CHECK(power(W(b, "ab"), -2).to_string() == "BABA");
  CHECK(power(W(b, "ab"), 0).empty());
}

TEST_CASE("cyclic_reduce returns the class and a conjugator") {
  const Basis b{3};
  {
    const auto r = cyclic_reduce(W(b, "abA"));
    CHECK(r.cyclic.to_string() == "b");
    CHECK(r.conjugator.to_string() == "a");
  }
  {
    const auto r = cyclic_reduce(W(b, "abcBA"));
    CHECK(r.cyclic.to_string() == "c");
    CHECK(r.conjugator.to_string() == "ab");
  }
  {
    // Already cyclically reduced; stored in its least rotation.
    const auto r = cyclic_reduce(W(b, "aBcba"));
    CHECK(r.cyclic.size() == 5);
    CHECK(r.cyclic.to_string() == "aaBcb");
  }
  CHECK_THROWS_AS(cyclic_reduce(W(b, "abBA")), Error);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    const Word u = testing::random_nontrivial_word(b, 14, rng);
    const auto r = cyclic_reduce(u);
    const Word rebuilt = concat(concat(r.conjugator, r.cyclic.linear()), invert(r.conjugator));
    CHECK(rebuilt == u);
    const auto s = r.cyclic.letters();
    if (s.size() > 1) CHECK(s.front() != s.back().inverse());
  }
}

TEST_CASE("canonical rotation decides conjugacy") {
  // Exhaustive over all nontrivial words of length <= 5 in rank 2.
  std::vector<Word> words;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (auto& w : reduced_words_of_length(kRank2, n)) words.push_back(w);
  }
  std::size_t agreements = 0;
  for (const auto& u : words) {
    const CyclicWord cu = cyclic_word(u);
    for (const auto& v : words) {
      const bool ours = cu == cyclic_word(v);
      REQUIRE(ours == oracle_conjugate(u, v));
      ++agreements;
    }
  }
  CHECK(agreements == words.size() * words.size());

  // Random conjugates of length up to 8.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Word u = testing::random_nontrivial_word(kRank3, 8, rng);
    const Word h = testing::random_reduced_word(kRank3, static_cast<std::size_t>(trial % 5), rng);
    const Word conj = concat(concat(h, u), invert(h));
    CHECK(cyclic_word(conj) == cyclic_word(u));
    const Word other = testing::random_nontrivial_word(kRank3, 8, rng);
    CHECK((cyclic_word(other) == cyclic_word(u)) == oracle_conjugate(other, u));
  }
}

TEST_CASE("occurrences counts reads of v and v^-1 with wrapping") {
  const Basis b{2};
  CHECK(occurrences(W(b, "a"), C(b, "ab")) == 1);
  CHECK(occurrences(W(b, "aa"), C(b, "aaaa")) == 4);
  CHECK(occurrences(W(b, "aa"), C(b, "a")) == 1);
  CHECK(occurrences(W(b, "A"), C(b, "aab")) == 2);
  CHECK_THROWS_AS(occurrences(W(b, ""), C(b, "a")), Error);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 500; ++trial) {
    const CyclicWord w = cyclic_word(testing::random_nontrivial_word(kRank3, 10, rng));
    const Word v = testing::random_nontrivial_word(kRank3, 6, rng);
    const auto count = occurrences(v, w);
    CHECK(count == testing::oracle_occurrences(v.to_string(), w.to_string()));
    CHECK(count == occurrences(invert(v), w));
  }
}

TEST_CASE("counting on f^m is m times counting on f") {
  // |f| <= 6, m <= 4, |v| <= 5, exhaustive over v in rank 2.
  std::vector<Word> probes;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (auto& v : reduced_words_of_length(kRank2, n)) probes.push_back(v);
  }
  std::set<CyclicWord> roots;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (auto& f : reduced_words_of_length(kRank2, n)) {
      if (n > 1 && f[0] == f[n - 1].inverse()) continue;
      const CyclicWord c = cyclic_word(f);
      if (root_decomposition(c).exponent == 1) roots.insert(c);
    }
  }
  REQUIRE(roots.size() > 50);
  for (const auto& f : roots) {
    for (int m = 2; m <= 4; ++m) {
      const CyclicWord fm = cyclic_word(power(f.linear(), m));
      const auto decomposition = root_decomposition(fm);
      REQUIRE(decomposition.exponent == m);
      REQUIRE(decomposition.root == f);
      for (const auto& v : probes) {
        REQUIRE(occurrences(v, fm) == static_cast<std::size_t>(m) * occurrences(v, f));
      }
    }
  }
}

TEST_CASE("root decomposition") {
  const Basis b{2};
  CHECK(root_decomposition(C(b, "abab")).exponent == 2);
  CHECK(root_decomposition(C(b, "abab")).root == C(b, "ab"));
  CHECK(root_decomposition(C(b, "aaa")).exponent == 3);
  CHECK(root_decomposition(C(b, "aab")).exponent == 1);
  CHECK(root_decomposition(C(b, "abaB")).exponent == 1);
}

TEST_CASE("least rotation and cyclic word ordering") {
  const Basis b{3};
  CHECK(C(b, "ba").to_string() == "ab");
  CHECK(C(b, "Aa b").to_string() == "b");
  CHECK(invert(C(b, "ab")).to_string() == "AB");
  CHECK(CyclicWord::from_letters(b, {Letter::from_symbol('c'), Letter::from_symbol('a')}).to_string() == "ac");
  CHECK_THROWS_AS(CyclicWord::from_letters(b, {Letter::from_symbol('a'), Letter::from_symbol('A')}), Error);
}

TEST_CASE("reduced word enumeration counts") {
  CHECK(reduced_words_of_length(kRank2, 1).size() == 4);
  CHECK(reduced_words_of_length(kRank2, 3).size() == 36);
  CHECK(reduced_words_of_length(Basis{5}, 2).size() == 90);
  CHECK_THROWS_AS(Basis{1}, Error);
  CHECK_THROWS_AS(Basis{27}, Error);
}
