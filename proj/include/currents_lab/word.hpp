#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace currents_lab {

// A free basis a_1..a_k of rank 2 <= k <= 26, written a, b, c, ...
class Basis {
 public:
  static constexpr int kMaxRank = 26;

  explicit Basis(int rank);

  int rank() const noexcept { return rank_; }
  // Number of signed letters, 2k.
  int alphabet_size() const noexcept { return 2 * rank_; }

  friend bool operator==(Basis, Basis) = default;

 private:
  int rank_;
};

// A signed basis letter. The code is 2*(index-1) + (inverted ? 1 : 0), so the
// natural order on codes is a < A < b < B < ... and inversion flips bit 0.
class Letter {
 public:
  constexpr Letter() = default;

  static constexpr Letter from_code(std::uint8_t code) { return Letter(code); }
  // 1-based generator index; `inverted` selects the inverse letter.
  static constexpr Letter generator(int index, bool inverted = false) {
    return Letter(static_cast<std::uint8_t>(2 * (index - 1) + (inverted ? 1 : 0)));
  }
  // 'a'..'z' are generators, 'A'..'Z' their inverses. No validation.
  static constexpr Letter from_symbol(char symbol) {
    return symbol >= 'a' ? generator(symbol - 'a' + 1, false)
                         : generator(symbol - 'A' + 1, true);
  }

  constexpr std::uint8_t code() const noexcept { return code_; }
  constexpr int index() const noexcept { return code_ / 2 + 1; }
  constexpr bool inverted() const noexcept { return (code_ & 1U) != 0; }
  constexpr Letter inverse() const noexcept { return Letter(code_ ^ 1U); }
  constexpr Letter positive() const noexcept { return Letter(code_ & ~1U); }
  char symbol() const noexcept {
    return static_cast<char>((inverted() ? 'A' : 'a') + index() - 1);
  }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  constexpr explicit Letter(std::uint8_t code) : code_(code) {}
  std::uint8_t code_ = 0;
};

// A freely reduced word over a basis.
class Word {
 public:
  explicit Word(Basis basis) : basis_(basis) {}

  // Parses the literal syntax (lowercase generator, uppercase inverse,
  // whitespace ignored) and freely reduces. Throws ParseError.
  static Word parse(Basis basis, std::string_view text);
  static Word letter(Basis basis, Letter x);

  Basis basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs);

 private:
  friend Word free_reduce(Basis basis, std::span<const Letter> raw);
  Word(Basis basis, std::vector<Letter> letters)
      : basis_(basis), letters_(std::move(letters)) {}

  Basis basis_;
  std::vector<Letter> letters_;
};

// Free reduction of an arbitrary letter sequence. Throws kBasisMismatch if a
// letter is outside the basis.
Word free_reduce(Basis basis, std::span<const Letter> raw);
Word concat(const Word& u, const Word& v);
Word invert(const Word& u);
// u^n for any integer n.
Word power(const Word& u, int n);

// A cyclically reduced word stored in its least rotation, so equality is
// equality of conjugacy classes.
class CyclicWord {
 public:
  // Validates cyclic reduction (throws kInvalidArgument) and canonicalizes
  // the rotation.
  static CyclicWord from_letters(Basis basis, std::vector<Letter> letters);

  Basis basis() const noexcept { return basis_; }
  std::size_t size() const noexcept { return letters_.size(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  // Letter at position i read cyclically.
  Letter at(std::size_t i) const { return letters_[i % letters_.size()]; }

  // The stored rotation as a linear word.
  Word linear() const;
  std::string to_string() const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend std::strong_ordering operator<=>(const CyclicWord& lhs,
                                          const CyclicWord& rhs);

 private:
  CyclicWord(Basis basis, std::vector<Letter> letters)
      : basis_(basis), letters_(std::move(letters)) {}

  Basis basis_;
  std::vector<Letter> letters_;
};

struct CyclicReduction {
  CyclicWord cyclic;
  // u == conjugator * cyclic.linear() * conjugator^-1
  Word conjugator;
};

// Throws kIdentityElement when u is trivial.
CyclicReduction cyclic_reduce(const Word& u);
inline CyclicWord cyclic_word(const Word& u) { return cyclic_reduce(u).cyclic; }

// w == root^exponent with root not a proper power.
struct RootDecomposition {
  CyclicWord root;
  int exponent;
};
RootDecomposition root_decomposition(const CyclicWord& w);

// The inverse conjugacy class.
CyclicWord invert(const CyclicWord& w);

// Number of vertices of w from which x can be read clockwise; reads may wrap
// around the circle any number of times.
std::size_t count_reads(std::span<const Letter> x, const CyclicWord& w);

// (v; w): occurrences of v plus occurrences of v^-1. v must be nonempty.
std::size_t occurrences(const Word& v, const CyclicWord& w);

// Index of the least rotation of a sequence of letters.
std::size_t least_rotation(std::span<const Letter> letters);

// All freely reduced words of length exactly n, in lexicographic order.
std::vector<Word> reduced_words_of_length(Basis basis, std::size_t n);

}  // namespace currents_lab

template <>
struct std::hash<currents_lab::Word> {
  std::size_t operator()(const currents_lab::Word& w) const noexcept {
    std::size_t h = static_cast<std::size_t>(w.basis().rank());
    for (auto x : w) h = h * 131 + x.code() + 1;
    return h;
  }
};
