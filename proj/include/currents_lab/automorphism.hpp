#pragma once

#include <string>
#include <vector>

#include "currents_lab/word.hpp"

namespace currents_lab {

// An automorphism of the free group given by generator images together with
// the images of its inverse. Construction checks that the two tables are
// mutually inverse on every generator.
class FreeAutomorphism {
 public:
  // Throws kValidationFailure if the tables are not mutually inverse and
  // kBasisMismatch if a table has the wrong shape.
  FreeAutomorphism(Basis basis, std::vector<Word> images,
                   std::vector<Word> inverse_images);

  static FreeAutomorphism identity(Basis basis);

  Basis basis() const noexcept { return basis_; }
  // Image of the generator with 1-based index i.
  const Word& image(int i) const { return images_.at(static_cast<std::size_t>(i - 1)); }
  const Word& inverse_image(int i) const {
    return inverse_images_.at(static_cast<std::size_t>(i - 1));
  }
  const std::vector<Word>& images() const noexcept { return images_; }
  const std::vector<Word>& inverse_images() const noexcept { return inverse_images_; }

  // Re-runs both composition checks.
  bool verify() const;
  bool is_identity() const;

  // "a->ab; b->b | a->aB; b->b"; generators fixed in both tables are omitted.
  std::string to_string() const;

  friend bool operator==(const FreeAutomorphism& lhs, const FreeAutomorphism& rhs) {
    return lhs.basis_ == rhs.basis_ && lhs.images_ == rhs.images_;
  }

 private:
  struct Unchecked {};
  FreeAutomorphism(Unchecked, Basis basis, std::vector<Word> images,
                   std::vector<Word> inverse_images)
      : basis_(basis), images_(std::move(images)), inverse_images_(std::move(inverse_images)) {}

  friend FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi);
  friend FreeAutomorphism invert(const FreeAutomorphism& phi);

  Basis basis_;
  std::vector<Word> images_;
  std::vector<Word> inverse_images_;
};

Word apply(const FreeAutomorphism& phi, const Word& u);
CyclicWord apply_cyclic(const FreeAutomorphism& phi, const CyclicWord& w);
// Substitutes the inverse table; equals apply(invert(phi), u).
Word apply_inverse(const FreeAutomorphism& phi, const Word& u);

// compose(phi, psi)(x) == phi(psi(x)).
FreeAutomorphism compose(const FreeAutomorphism& phi, const FreeAutomorphism& psi);
FreeAutomorphism invert(const FreeAutomorphism& phi);
FreeAutomorphism power(const FreeAutomorphism& phi, int n);

// t -> t z, every other generator fixed. t and z must be distinct positive
// generators.
FreeAutomorphism make_simple_twist(Basis basis, Letter twisted, Letter twistor);

// a -> ab, e -> ed, all other generators fixed. Rank >= 5.
FreeAutomorphism make_double_twist(Basis basis);

// Basis changes sending the i-th generator to the i-th letter of a new free
// basis, written over the old one. Rank >= 5.
//   prime:        a, a^-1 c, a^-1 c^-1 a b, c^-1 d, e
//   double prime: a, e^-1 c, a^-1 c^-1 e b, c^-1 e a^-1 d, e
FreeAutomorphism make_basis_change_prime(Basis basis);
FreeAutomorphism make_basis_change_double_prime(Basis basis);

// c -> c a, all other generators fixed. Rank >= 3.
FreeAutomorphism make_basis_change_ca(Basis basis);

}  // namespace currents_lab
