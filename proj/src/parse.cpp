#include "currents_lab/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>

#include "currents_lab/errors.hpp"

namespace currents_lab {

namespace {

bool is_letter(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) != 0; }
bool is_digit(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }

class Parser {
 public:
  Parser(Basis basis, std::string_view text) : basis_(basis), text_(text) {}

  int needed_rank() const { return needed_; }

  Word word_literal() {
    const Word w = letters_until("");
    finish();
    return w;
  }

  FreeAutomorphism automorphism_literal() {
    FreeAutomorphism phi = automorphism();
    finish();
    return phi;
  }

  RationalCurrent current_literal() {
    skip_ws();
    RationalCurrent nu(basis_);
    if (consume("0")) {
      finish();
      return nu;
    }
    do {
      skip_ws();
      Rational weight(1);
      if (peek() != '[') {
        const std::size_t at = pos_;
        weight = rational();
        if (sgn(weight) <= 0) throw ParseError(at, "current weights must be positive");
        expect("*");
      }
      expect("[");
      const std::size_t at = pos_;
      const Word w = letters_until("]");
      if (w.empty()) throw ParseError(at, "class literal reduces to the identity");
      expect("]");
      nu = add(nu, scale(weight, RationalCurrent::counting(w)));
      skip_ws();
    } while (consume("+"));
    finish();
    return nu;
  }

  TreeLengthFunction tree_literal() {
    skip_ws();
    const std::size_t at = pos_;
    const std::string kind = identifier();
    std::optional<TreeCore> core;
    if (kind == "cayley") {
      WeightedCayleyCore cayley = WeightedCayleyCore::uniform(basis_);
      while (consume("w(")) {
        const Letter x = positive_letter();
        expect(")");
        expect("=");
        const std::size_t value_at = pos_;
        const Rational len = rational();
        if (sgn(len) <= 0) throw ParseError(value_at, "edge lengths must be positive");
        if (x.index() <= basis_.rank()) cayley.letter_lengths[static_cast<std::size_t>(x.index() - 1)] = len;
      }
      core = cayley;
    } else if (kind == "twist") {
      std::vector<SplittingTwist> twists;
      while (consume("(")) {
        const Letter t = positive_letter();
        expect(":");
        const Letter z = positive_letter();
        expect(",");
        const Rational len = rational();
        expect(")");
        twists.push_back(SplittingTwist{t, z, len});
      }
      if (twists.empty()) throw ParseError(pos_, "twist tree needs at least one (t:z,length) edge");
      try {
        core = TwistSplittingCore(basis_, std::move(twists));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(at, e.what());
      }
    } else {
      throw ParseError(at, "expected 'cayley' or 'twist'");
    }
    Rational tree_scale(1);
    FreeAutomorphism marking = FreeAutomorphism::identity(basis_);
    for (;;) {
      if (consume("scale=")) {
        const std::size_t value_at = pos_;
        tree_scale = rational();
        if (sgn(tree_scale) <= 0) throw ParseError(value_at, "scale must be positive");
      } else if (consume("marking=")) {
        marking = automorphism();
      } else {
        break;
      }
    }
    finish();
    return TreeLengthFunction(std::move(*core), std::move(marking), tree_scale);
  }

 private:
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool consume(std::string_view token) {
    skip_ws();
    // Tokens may contain no spaces but the input may: match ignoring spaces.
    std::size_t p = pos_;
    for (char ch : token) {
      while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p])) != 0) ++p;
      if (p >= text_.size() || text_[p] != ch) return false;
      ++p;
    }
    pos_ = p;
    return true;
  }

  void expect(std::string_view token) {
    if (!consume(token)) throw ParseError(pos_, "expected '" + std::string(token) + "'");
  }

  void finish() {
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
  }

  Letter letter() {
    skip_ws();
    if (pos_ >= text_.size() || !is_letter(text_[pos_])) throw ParseError(pos_, "expected a letter");
    const char ch = text_[pos_];
    const Letter x = Letter::from_symbol(ch);
    if (x.index() > basis_.rank()) {
      throw ParseError(pos_, std::string("letter '") + ch + "' exceeds basis rank " + std::to_string(basis_.rank()));
    }
    needed_ = std::max(needed_, x.index());
    ++pos_;
    return x;
  }

  Letter positive_letter() {
    const std::size_t at = pos_;
    const Letter x = letter();
    if (x.inverted()) throw ParseError(at, "expected a lowercase generator");
    return x;
  }

  // Letters up to the end or the first non-letter; `stops` lists the
  // characters that may legitimately follow.
  Word letters_until(std::string_view stops) {
    std::vector<Letter> letters;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      const char ch = text_[pos_];
      if (!is_letter(ch)) {
        if (stops.find(ch) != std::string_view::npos) break;
        throw ParseError(pos_, std::string("unexpected character '") + ch + "' in word");
      }
      letters.push_back(letter());
    }
    return free_reduce(basis_, letters);
  }

  std::string identifier() {
    skip_ws();
    std::string id;
    while (pos_ < text_.size() && is_letter(text_[pos_])) id += text_[pos_++];
    return id;
  }

  Rational rational() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
    while (p < text_.size() && (is_digit(text_[p]) || text_[p] == '/')) ++p;
    if (p == start) throw ParseError(start, "expected a rational number");
    try {
      const Rational value = parse_rational(text_.substr(start, p - start));
      pos_ = p;
      return value;
    } catch (const ParseError& e) {
      throw ParseError(start + e.position(), "malformed rational '" + std::string(text_.substr(start, p - start)) + "'");
    }
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
    const std::size_t digits = p;
    while (p < text_.size() && is_digit(text_[p])) ++p;
    if (p == digits || p - digits > 6) throw ParseError(start, "expected an exponent");
    pos_ = p;
    return std::stoi(std::string(text_.substr(start, p - start)));
  }

  FreeAutomorphism builtin(const std::string& name, std::size_t at) {
    auto need = [&](int rank) {
      needed_ = std::max(needed_, rank);
      if (basis_.rank() < rank) {
        throw ParseError(at, "'" + name + "' requires rank ≥ " + std::to_string(rank));
      }
    };
    if (name == "id") return FreeAutomorphism::identity(basis_);
    if (name == "D") return make_simple_twist(basis_, Letter::from_symbol('a'), Letter::from_symbol('b'));
    if (name == "phi") {
      need(5);
      return make_double_twist(basis_);
    }
    if (name == "aprime") {
      need(5);
      return make_basis_change_prime(basis_);
    }
    if (name == "adoubleprime") {
      need(5);
      return make_basis_change_double_prime(basis_);
    }
    if (name == "ca") {
      need(3);
      return make_basis_change_ca(basis_);
    }
    if (name == "twist") {
      expect("(");
      const Letter t = positive_letter();
      expect(",");
      const Letter z = positive_letter();
      expect(")");
      if (t == z) throw ParseError(at, "twist needs two distinct letters");
      return make_simple_twist(basis_, t, z);
    }
    throw ParseError(at, "unknown automorphism '" + name + "'");
  }

  // letter -> word (; letter -> word)*
  std::vector<Word> table() {
    std::vector<Word> images;
    for (int i = 1; i <= basis_.rank(); ++i) images.push_back(Word::letter(basis_, Letter::generator(i)));
    std::vector<bool> seen(static_cast<std::size_t>(basis_.rank()), false);
    do {
      const std::size_t at = pos_;
      const Letter x = positive_letter();
      if (seen[static_cast<std::size_t>(x.index() - 1)]) throw ParseError(at, "letter listed twice");
      seen[static_cast<std::size_t>(x.index() - 1)] = true;
      expect("->");
      const std::size_t image_at = pos_;
      Word image = letters_until(";|^");
      if (image.empty()) throw ParseError(image_at, "image reduces to the identity");
      images[static_cast<std::size_t>(x.index() - 1)] = std::move(image);
    } while (consume(";"));
    return images;
  }

  FreeAutomorphism automorphism() {
    skip_ws();
    const std::size_t at = pos_;
    const std::size_t save = pos_;
    const std::string name = identifier();
    const bool is_table = name.size() == 1 && consume("->");
    pos_ = save;
    std::optional<FreeAutomorphism> phi;
    if (is_table) {
      std::vector<Word> images = table();
      if (!consume("|")) {
        throw ParseError(pos_, "automorphism table needs its inverse after '|'");
      }
      std::vector<Word> inverse_images = table();
      try {
        phi = FreeAutomorphism(basis_, std::move(images), std::move(inverse_images));
      } catch (const Error& e) {
        throw ParseError(at, e.what());
      }
    } else {
      if (name.empty()) throw ParseError(at, "expected an automorphism");
      pos_ = save + name.size();
      phi = builtin(name, at);
    }
    if (consume("^")) phi = power(*phi, integer());
    return *phi;
  }

  Basis basis_;
  std::string_view text_;
  std::size_t pos_ = 0;
  int needed_ = 2;
};

}  // namespace

Word parse_word(Basis basis, std::string_view text) { return Parser(basis, text).word_literal(); }

FreeAutomorphism parse_automorphism(Basis basis, std::string_view text) {
  return Parser(basis, text).automorphism_literal();
}

RationalCurrent parse_current(Basis basis, std::string_view text) {
  return Parser(basis, text).current_literal();
}

TreeLengthFunction parse_tree(Basis basis, std::string_view text) {
  return Parser(basis, text).tree_literal();
}

int literal_rank(LiteralKind kind, std::string_view text) {
  Parser parser(Basis{Basis::kMaxRank}, text);
  switch (kind) {
    case LiteralKind::kWord:
      (void)parser.word_literal();
      break;
    case LiteralKind::kAutomorphism:
      (void)parser.automorphism_literal();
      break;
    case LiteralKind::kCurrent:
      (void)parser.current_literal();
      break;
    case LiteralKind::kTree:
      (void)parser.tree_literal();
      break;
  }
  return parser.needed_rank();
}

}  // namespace currents_lab
