#pragma once

#include <map>
#include <string>
#include <unordered_map>

#include "currents_lab/automorphism.hpp"
#include "currents_lab/rational.hpp"
#include "currents_lab/word.hpp"

namespace currents_lab {

// A finite positive rational combination of counting currents. Keys are
// power-free conjugacy classes; a proper power f^m enters as weight m on f.
class RationalCurrent {
 public:
  // The zero current.
  explicit RationalCurrent(Basis basis) : basis_(basis) {}

  // mu_g. Throws kIdentityElement for trivial g.
  static RationalCurrent counting(const Word& g);
  static RationalCurrent counting(const CyclicWord& w);

  Basis basis() const noexcept { return basis_; }
  const std::map<CyclicWord, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  // "3/2*[ab] + 1*[c]"; "0" for the zero current.
  std::string to_string() const;

  friend bool operator==(const RationalCurrent&, const RationalCurrent&) = default;

 private:
  friend RationalCurrent add(const RationalCurrent& lhs, const RationalCurrent& rhs);
  friend RationalCurrent scale(const Rational& r, const RationalCurrent& nu);
  friend RationalCurrent act(const FreeAutomorphism& phi, const RationalCurrent& nu);
  // Adds weight * mu_w, splitting off the power of w.
  void accumulate(const CyclicWord& w, const Rational& weight);

  Basis basis_;
  std::map<CyclicWord, Rational> terms_;
};

inline RationalCurrent rational_current(const Word& g) { return RationalCurrent::counting(g); }

RationalCurrent add(const RationalCurrent& lhs, const RationalCurrent& rhs);
// Throws kInvalidArgument unless r > 0.
RationalCurrent scale(const Rational& r, const RationalCurrent& nu);
RationalCurrent act(const FreeAutomorphism& phi, const RationalCurrent& nu);

// (v; nu). v must be nonempty.
Rational coordinate(const Word& v, const RationalCurrent& nu);
// Sum of the single-letter coordinates.
Rational length(const RationalCurrent& nu);

// All nonzero coordinates (v; nu) with |v| <= level, computed in one pass over
// the terms. Lookups accept either of v, v^-1.
class CoordinateTable {
 public:
  CoordinateTable(const RationalCurrent& nu, int level);

  int level() const noexcept { return level_; }
  Rational operator()(const Word& v) const;
  // Nonzero entries keyed by the lesser of v and v^-1.
  std::map<Word, Rational> entries() const;

 private:
  Basis basis_;
  int level_;
  std::unordered_map<std::string, Rational> values_;
};

// The normalized current nu / ||nu|| truncated to words of length <= level,
// one representative (the lesser of v, v^-1) per pair. Zero entries are
// omitted from the map.
class ProjectiveCurrentVector {
 public:
  ProjectiveCurrentVector(Basis basis, int level, std::map<Word, Rational> entries)
      : basis_(basis), level_(level), entries_(std::move(entries)) {}

  Basis basis() const noexcept { return basis_; }
  int level() const noexcept { return level_; }
  const std::map<Word, Rational>& entries() const noexcept { return entries_; }
  Rational entry(const Word& v) const;

  friend bool operator==(const ProjectiveCurrentVector&, const ProjectiveCurrentVector&) = default;

 private:
  Basis basis_;
  int level_;
  std::map<Word, Rational> entries_;
};

// Throws kZeroCurrent for nu == 0 and kInvalidArgument for level < 1.
ProjectiveCurrentVector projective_vector(const RationalCurrent& nu, int level);
// Max absolute entry difference. Throws kInvalidArgument on level mismatch.
Rational projective_distance(const ProjectiveCurrentVector& p, const ProjectiveCurrentVector& q);
Rational projective_distance(const RationalCurrent& lhs, const RationalCurrent& rhs, int level);

// The triple (1/2 (t; nu), (t z; nu), (t z^-1; nu)) for the twist t -> t z.
struct CriticalSetWitness {
  Rational half_twisted;
  Rational with_twistor;
  Rational with_inverse_twistor;
  bool in_set;
};

// Membership in the critical set of the simple twist t -> t z. Throws
// kZeroCurrent.
CriticalSetWitness critical_set_witness(const RationalCurrent& nu, Letter twisted,
                                        Letter twistor);
inline bool in_critical_set(const RationalCurrent& nu, Letter twisted, Letter twistor) {
  return critical_set_witness(nu, twisted, twistor).in_set;
}

}  // namespace currents_lab
