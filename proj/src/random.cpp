#include "currents_lab/random.hpp"

namespace currents_lab {

Word random_word(Basis basis, std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> first(0, basis.alphabet_size() - 1);
  std::uniform_int_distribution<int> rest(0, basis.alphabet_size() - 2);
  std::vector<Letter> letters;
  letters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (letters.empty()) {
      letters.push_back(Letter::from_code(static_cast<std::uint8_t>(first(rng))));
      continue;
    }
    // Skip the code that would cancel the previous letter.
    const int forbidden = letters.back().inverse().code();
    int code = rest(rng);
    if (code >= forbidden) ++code;
    letters.push_back(Letter::from_code(static_cast<std::uint8_t>(code)));
  }
  return free_reduce(basis, letters);
}

Word random_cyclic_word(Basis basis, std::size_t max_len, Rng& rng) {
  std::uniform_int_distribution<std::size_t> length(1, std::max<std::size_t>(max_len, 1));
  const std::size_t n = length(rng);
  for (;;) {
    Word w = random_word(basis, n, rng);
    if (n == 1 || w[0] != w[n - 1].inverse()) return w;
  }
}

RationalCurrent random_current(Basis basis, std::size_t max_terms, std::size_t max_len, Rng& rng) {
  std::uniform_int_distribution<std::size_t> terms(1, std::max<std::size_t>(max_terms, 1));
  std::uniform_int_distribution<int> numerator(1, 7);
  std::uniform_int_distribution<int> denominator(1, 4);
  RationalCurrent nu(basis);
  const std::size_t count = terms(rng);
  for (std::size_t i = 0; i < count; ++i) {
    Rational weight(numerator(rng), denominator(rng));
    weight.canonicalize();
    nu = add(nu, scale(weight, RationalCurrent::counting(random_cyclic_word(basis, max_len, rng))));
  }
  return nu;
}

}  // namespace currents_lab
