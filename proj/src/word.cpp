#include "currents_lab/word.hpp"

#include <algorithm>
#include <cctype>

#include "currents_lab/errors.hpp"

namespace currents_lab {

Basis::Basis(int rank) : rank_(rank) {
  if (rank < 2 || rank > kMaxRank) {
    throw Error(ErrorCode::kInvalidArgument,
                "basis rank must lie in [2, 26], got " + std::to_string(rank));
  }
}

Word Word::parse(Basis basis, std::string_view text) {
  std::vector<Letter> raw;
  raw.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (!std::isalpha(static_cast<unsigned char>(ch))) {
      throw ParseError(i, std::string("unexpected character '") + ch + "' in word");
    }
    const Letter x = Letter::from_symbol(ch);
    if (x.index() > basis.rank()) {
      throw ParseError(i, std::string("letter '") + ch + "' exceeds basis rank " +
                              std::to_string(basis.rank()));
    }
    raw.push_back(x);
  }
  return free_reduce(basis, raw);
}

Word Word::letter(Basis basis, Letter x) {
  const Letter raw[] = {x};
  return free_reduce(basis, raw);
}

std::string Word::to_string() const {
  std::string out;
  out.reserve(letters_.size());
  for (auto x : letters_) out.push_back(x.symbol());
  return out;
}

std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
  if (auto c = lhs.basis().rank() <=> rhs.basis().rank(); c != 0) return c;
  return std::lexicographical_compare_three_way(lhs.begin(), lhs.end(),
                                                rhs.begin(), rhs.end());
}

Word free_reduce(Basis basis, std::span<const Letter> raw) {
  std::vector<Letter> stack;
  stack.reserve(raw.size());
  for (auto x : raw) {
    if (x.index() > basis.rank()) {
      throw Error(ErrorCode::kBasisMismatch,
                  std::string("letter '") + x.symbol() + "' outside basis of rank " +
                      std::to_string(basis.rank()));
    }
    if (!stack.empty() && stack.back() == x.inverse()) {
      stack.pop_back();
    } else {
      stack.push_back(x);
    }
  }
  return Word(basis, std::move(stack));
}

namespace {

void require_same_basis(const Word& u, const Word& v) {
  if (u.basis() != v.basis()) {
    throw Error(ErrorCode::kBasisMismatch, "words over different bases");
  }
}

}  // namespace

Word concat(const Word& u, const Word& v) {
  require_same_basis(u, v);
  std::vector<Letter> raw(u.begin(), u.end());
  raw.insert(raw.end(), v.begin(), v.end());
  return free_reduce(u.basis(), raw);
}

Word invert(const Word& u) {
  std::vector<Letter> raw;
  raw.reserve(u.size());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) {
    raw.push_back(it->inverse());
  }
  return free_reduce(u.basis(), raw);
}

Word power(const Word& u, int n) {
  const Word base = n < 0 ? invert(u) : u;
  std::vector<Letter> raw;
  const int count = n < 0 ? -n : n;
  raw.reserve(base.size() * static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) raw.insert(raw.end(), base.begin(), base.end());
  return free_reduce(u.basis(), raw);
}

std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n <= 1) return 0;
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t k = 0;
  while (i < n && j < n && k < n) {
    const Letter a = s[(i + k) % n];
    const Letter b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

CyclicWord CyclicWord::from_letters(Basis basis, std::vector<Letter> letters) {
  if (letters.empty()) {
    throw Error(ErrorCode::kIdentityElement, "cyclic word must be nonempty");
  }
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const Letter x = letters[i];
    if (x.index() > basis.rank()) {
      throw Error(ErrorCode::kBasisMismatch, "letter outside basis in cyclic word");
    }
    const Letter next = letters[(i + 1) % letters.size()];
    if (letters.size() > 1 && next == x.inverse()) {
      throw Error(ErrorCode::kInvalidArgument, "letters are not cyclically reduced");
    }
  }
  std::rotate(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(least_rotation(letters)),
              letters.end());
  return CyclicWord(basis, std::move(letters));
}

Word CyclicWord::linear() const { return free_reduce(basis_, letters_); }

std::string CyclicWord::to_string() const { return linear().to_string(); }

std::strong_ordering operator<=>(const CyclicWord& lhs, const CyclicWord& rhs) {
  if (auto c = lhs.basis().rank() <=> rhs.basis().rank(); c != 0) return c;
  if (auto c = lhs.size() <=> rhs.size(); c != 0) return c;
  const auto l = lhs.letters();
  const auto r = rhs.letters();
  return std::lexicographical_compare_three_way(l.begin(), l.end(), r.begin(), r.end());
}

CyclicReduction cyclic_reduce(const Word& u) {
  if (u.empty()) {
    throw Error(ErrorCode::kIdentityElement, "identity element has no conjugacy class");
  }
  const auto letters = u.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  Word conjugator = free_reduce(u.basis(), letters.subspan(0, lo));
  std::vector<Letter> core(letters.begin() + static_cast<std::ptrdiff_t>(lo),
                           letters.begin() + static_cast<std::ptrdiff_t>(hi));
  // u = conjugator * core * conjugator^-1; rotating core by r letters turns
  // the conjugator into conjugator * core[0..r).
  const std::size_t r = least_rotation(core);
  std::vector<Letter> extended(conjugator.begin(), conjugator.end());
  extended.insert(extended.end(), core.begin(), core.begin() + static_cast<std::ptrdiff_t>(r));
  std::rotate(core.begin(), core.begin() + static_cast<std::ptrdiff_t>(r), core.end());
  return CyclicReduction{CyclicWord::from_letters(u.basis(), std::move(core)),
                         free_reduce(u.basis(), extended)};
}

RootDecomposition root_decomposition(const CyclicWord& w) {
  const auto s = w.letters();
  const std::size_t n = s.size();
  // Prefix function; n - pi[n-1] is the smallest period of the linear word,
  // and it is a period of the circle iff it divides n.
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && s[i] != s[k]) k = pi[k - 1];
    if (s[i] == s[k]) ++k;
    pi[i] = k;
  }
  std::size_t period = n - pi[n - 1];
  if (n % period != 0) period = n;
  std::vector<Letter> root(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(period));
  return RootDecomposition{CyclicWord::from_letters(w.basis(), std::move(root)),
                           static_cast<int>(n / period)};
}

CyclicWord invert(const CyclicWord& w) {
  std::vector<Letter> letters;
  letters.reserve(w.size());
  const auto s = w.letters();
  for (auto it = s.rbegin(); it != s.rend(); ++it) letters.push_back(it->inverse());
  return CyclicWord::from_letters(w.basis(), std::move(letters));
}

std::size_t count_reads(std::span<const Letter> x, const CyclicWord& w) {
  std::size_t count = 0;
  const std::size_t n = w.size();
  for (std::size_t start = 0; start < n; ++start) {
    bool match = true;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (w.at(start + j) != x[j]) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return count;
}

std::size_t occurrences(const Word& v, const CyclicWord& w) {
  if (v.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "occurrence count of the empty word");
  }
  if (v.basis() != w.basis()) {
    throw Error(ErrorCode::kBasisMismatch, "word and cyclic word over different bases");
  }
  return count_reads(v.letters(), w) + count_reads(invert(v).letters(), w);
}

std::vector<Word> reduced_words_of_length(Basis basis, std::size_t n) {
  std::vector<std::vector<Letter>> layer{{}};
  for (std::size_t len = 0; len < n; ++len) {
    std::vector<std::vector<Letter>> next;
    next.reserve(layer.size() * static_cast<std::size_t>(basis.alphabet_size()));
    for (const auto& prefix : layer) {
      for (int code = 0; code < basis.alphabet_size(); ++code) {
        const Letter x = Letter::from_code(static_cast<std::uint8_t>(code));
        if (!prefix.empty() && prefix.back() == x.inverse()) continue;
        auto word = prefix;
        word.push_back(x);
        next.push_back(std::move(word));
      }
    }
    layer = std::move(next);
  }
  std::vector<Word> out;
  out.reserve(layer.size());
  for (const auto& letters : layer) out.push_back(free_reduce(basis, letters));
  return out;
}

}  // namespace currents_lab
