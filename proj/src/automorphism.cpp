#include "currents_lab/automorphism.hpp"

#include <initializer_list>
#include <utility>

#include "currents_lab/errors.hpp"

namespace currents_lab {

namespace {

Word substitute(Basis basis, const std::vector<Word>& table, const Word& u) {
  if (u.basis() != basis) {
    throw Error(ErrorCode::kBasisMismatch, "word and automorphism over different bases");
  }
  std::vector<Letter> raw;
  raw.reserve(u.size() * 2);
  for (auto x : u) {
    const Word& img = table[static_cast<std::size_t>(x.index() - 1)];
    if (x.inverted()) {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        raw.push_back(it->inverse());
      }
    } else {
      raw.insert(raw.end(), img.begin(), img.end());
    }
  }
  return free_reduce(basis, raw);
}

bool tables_inverse(Basis basis, const std::vector<Word>& forward,
                    const std::vector<Word>& backward) {
  for (int i = 1; i <= basis.rank(); ++i) {
    const Word x = Word::letter(basis, Letter::generator(i));
    const auto idx = static_cast<std::size_t>(i - 1);
    if (substitute(basis, forward, backward[idx]) != x) return false;
    if (substitute(basis, backward, forward[idx]) != x) return false;
  }
  return true;
}

void require_rank(Basis basis, int minimum, const char* what) {
  if (basis.rank() < minimum) {
    throw Error(ErrorCode::kRankTooSmall, std::string(what) + " requires rank >= " +
                                              std::to_string(minimum));
  }
}

// Builds a table that fixes every generator except the listed overrides.
std::vector<Word> table_with(Basis basis,
                             std::initializer_list<std::pair<int, const char*>> overrides) {
  std::vector<Word> table;
  table.reserve(static_cast<std::size_t>(basis.rank()));
  for (int i = 1; i <= basis.rank(); ++i) table.push_back(Word::letter(basis, Letter::generator(i)));
  for (const auto& [index, literal] : overrides) {
    table[static_cast<std::size_t>(index - 1)] = Word::parse(basis, literal);
  }
  return table;
}

}  // namespace

FreeAutomorphism::FreeAutomorphism(Basis basis, std::vector<Word> images,
                                   std::vector<Word> inverse_images)
    : basis_(basis), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {
  const auto rank = static_cast<std::size_t>(basis.rank());
  if (images_.size() != rank || inverse_images_.size() != rank) {
    throw Error(ErrorCode::kBasisMismatch, "image table size differs from basis rank");
  }
  for (const auto& w : images_) {
    if (w.basis() != basis) throw Error(ErrorCode::kBasisMismatch, "image over wrong basis");
  }
  for (const auto& w : inverse_images_) {
    if (w.basis() != basis) throw Error(ErrorCode::kBasisMismatch, "image over wrong basis");
  }
  if (!tables_inverse(basis_, images_, inverse_images_)) {
    throw Error(ErrorCode::kValidationFailure,
                "inverse table does not invert the image table: " + to_string());
  }
}

FreeAutomorphism FreeAutomorphism::identity(Basis basis) {
  auto table = table_with(basis, {});
  return FreeAutomorphism(Unchecked{}, basis, table, table);
}

bool FreeAutomorphism::verify() const {
  return tables_inverse(basis_, images_, inverse_images_);
}

bool FreeAutomorphism::is_identity() const {
  for (int i = 1; i <= basis_.rank(); ++i) {
    if (image(i) != Word::letter(basis_, Letter::generator(i))) return false;
  }
  return true;
}

std::string FreeAutomorphism::to_string() const {
  auto render = [&](const std::vector<Word>& table) {
    std::string out;
    for (int i = 1; i <= basis_.rank(); ++i) {
      const Word& w = table[static_cast<std::size_t>(i - 1)];
      if (w == Word::letter(basis_, Letter::generator(i))) continue;
      if (!out.empty()) out += "; ";
      out += Letter::generator(i).symbol();
      out += "->";
      out += w.to_string();
    }
    return out.empty() ? std::string("id") : out;
  };
  return render(images_) + " | " + render(inverse_images_);
}

Word apply(const FreeAutomorphism& phi, const Word& u) {
  return substitute(phi.basis(), phi.images(), u);
}

Word apply_inverse(const FreeAutomorphism& phi, const Word& u) {
  return substitute(phi.basis(), phi.inverse_images(), u);
}

CyclicWord apply_cyclic(const FreeAutomorphism& phi, const CyclicWord& w) {
  return cyclic_word(apply(phi, w.linear()));
}

FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi) {
  if (phi.basis() != psi.basis()) {
    throw Error(ErrorCode::kBasisMismatch, "composing automorphisms over different bases");
  }
  std::vector<Word> images;
  std::vector<Word> inverse_images;
  for (int i = 1; i <= phi.basis().rank(); ++i) {
    images.push_back(apply(phi, psi.image(i)));
    inverse_images.push_back(apply_inverse(psi, phi.inverse_image(i)));
  }
  return FreeAutomorphism(FreeAutomorphism::Unchecked{}, phi.basis(), std::move(images),
                          std::move(inverse_images));
}

FreeAutomorphism invert(const FreeAutomorphism& phi) {
  return FreeAutomorphism(FreeAutomorphism::Unchecked{}, phi.basis(), phi.inverse_images(),
                          phi.images());
}

FreeAutomorphism power(const FreeAutomorphism& phi, int n) {
  const FreeAutomorphism step = n < 0 ? invert(phi) : phi;
  FreeAutomorphism result = FreeAutomorphism::identity(phi.basis());
  for (int i = 0; i < (n < 0 ? -n : n); ++i) result = compose(step, result);
  return result;
}

FreeAutomorphism make_simple_twist(Basis basis, Letter twisted, Letter twistor) {
  if (twisted.inverted() || twistor.inverted()) {
    throw Error(ErrorCode::kInvalidArgument, "twist letters must be positive generators");
  }
  if (twisted.index() > basis.rank() || twistor.index() > basis.rank()) {
    throw Error(ErrorCode::kBasisMismatch, "twist letter outside basis");
  }
  if (twisted == twistor) {
    throw Error(ErrorCode::kInvalidArgument, "twisted letter and twistor must differ");
  }
  auto images = table_with(basis, {});
  auto inverse_images = images;
  const auto t = static_cast<std::size_t>(twisted.index() - 1);
  const Letter forward[] = {twisted, twistor};
  const Letter backward[] = {twisted, twistor.inverse()};
  images[t] = free_reduce(basis, forward);
  inverse_images[t] = free_reduce(basis, backward);
  return FreeAutomorphism(basis, std::move(images), std::move(inverse_images));
}

FreeAutomorphism make_double_twist(Basis basis) {
  require_rank(basis, 5, "double twist");
  return compose(make_simple_twist(basis, Letter::from_symbol('a'), Letter::from_symbol('b')),
                 make_simple_twist(basis, Letter::from_symbol('e'), Letter::from_symbol('d')));
}

FreeAutomorphism make_basis_change_prime(Basis basis) {
  require_rank(basis, 5, "primed basis change");
  // New letters a' = a, b' = a^-1 c, c' = a^-1 c^-1 a b, d' = c^-1 d, e' = e;
  // the inverse table is a = a', b = b'a'c', c = a'b', d = a'b'd', e = e'.
  return FreeAutomorphism(basis,
                          table_with(basis, {{2, "Ac"}, {3, "ACab"}, {4, "Cd"}}),
                          table_with(basis, {{2, "bac"}, {3, "ab"}, {4, "abd"}}));
}

FreeAutomorphism make_basis_change_double_prime(Basis basis) {
  require_rank(basis, 5, "double-primed basis change");
  // a'' = a, b'' = e^-1 c, c'' = a^-1 c^-1 e b, d'' = c^-1 e a^-1 d, e'' = e;
  // inverse: b = b''a''c'', c = e''b'', d = a''b''d''.
  return FreeAutomorphism(basis,
                          table_with(basis, {{2, "Ec"}, {3, "ACeb"}, {4, "CeAd"}}),
                          table_with(basis, {{2, "bac"}, {3, "eb"}, {4, "abd"}}));
}

FreeAutomorphism make_basis_change_ca(Basis basis) {
  require_rank(basis, 3, "basis change c -> ca");
  return FreeAutomorphism(basis, table_with(basis, {{3, "ca"}}), table_with(basis, {{3, "cA"}}));
}

}  // namespace currents_lab
