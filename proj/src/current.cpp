#include "currents_lab/current.hpp"

#include <algorithm>

#include "currents_lab/errors.hpp"

namespace currents_lab {

namespace {

void require_same_basis(Basis lhs, Basis rhs) {
  if (lhs != rhs) throw Error(ErrorCode::kBasisMismatch, "currents over different bases");
}

// Byte string of letter codes; the table key is the lesser of a read and its
// inverse so both orientations land on the same entry.
std::string inverse_key(const std::string& key) {
  std::string out(key.rbegin(), key.rend());
  for (auto& ch : out) ch = static_cast<char>(ch ^ 1);
  return out;
}

std::string canonical_key(std::string key) {
  std::string inv = inverse_key(key);
  return std::min(key, inv);
}

std::string key_of(const Word& v) {
  std::string key;
  key.reserve(v.size());
  for (auto x : v) key.push_back(static_cast<char>(x.code()));
  return key;
}

Word word_of(Basis basis, const std::string& key) {
  std::vector<Letter> letters;
  letters.reserve(key.size());
  for (char ch : key) letters.push_back(Letter::from_code(static_cast<std::uint8_t>(ch)));
  return free_reduce(basis, letters);
}

}  // namespace

RationalCurrent RationalCurrent::counting(const Word& g) {
  return counting(cyclic_word(g));
}

RationalCurrent RationalCurrent::counting(const CyclicWord& w) {
  RationalCurrent nu(w.basis());
  nu.accumulate(w, Rational(1));
  return nu;
}

void RationalCurrent::accumulate(const CyclicWord& w, const Rational& weight) {
  if (w.basis() != basis_) throw Error(ErrorCode::kBasisMismatch, "class over wrong basis");
  auto [root, exponent] = root_decomposition(w);
  const Rational total = weight * exponent;
  auto [it, inserted] = terms_.try_emplace(std::move(root), total);
  if (!inserted) it->second += total;
}

std::string RationalCurrent::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [root, weight] : terms_) {
    if (!out.empty()) out += " + ";
    out += currents_lab::to_string(weight) + "*[" + root.to_string() + "]";
  }
  return out;
}

RationalCurrent add(const RationalCurrent& lhs, const RationalCurrent& rhs) {
  require_same_basis(lhs.basis(), rhs.basis());
  RationalCurrent out = lhs;
  for (const auto& [root, weight] : rhs.terms()) out.accumulate(root, weight);
  return out;
}

RationalCurrent scale(const Rational& r, const RationalCurrent& nu) {
  if (sgn(r) <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "scale factor must be positive, got " + to_string(r));
  }
  RationalCurrent out = nu;
  for (auto& [root, weight] : out.terms_) weight *= r;
  return out;
}

RationalCurrent act(const FreeAutomorphism& phi, const RationalCurrent& nu) {
  require_same_basis(phi.basis(), nu.basis());
  RationalCurrent out(nu.basis());
  for (const auto& [root, weight] : nu.terms()) out.accumulate(apply_cyclic(phi, root), weight);
  return out;
}

Rational coordinate(const Word& v, const RationalCurrent& nu) {
  require_same_basis(v.basis(), nu.basis());
  Rational total(0);
  for (const auto& [root, weight] : nu.terms()) {
    const auto count = occurrences(v, root);
    if (count != 0) total += weight * static_cast<unsigned long>(count);
  }
  return total;
}

Rational length(const RationalCurrent& nu) {
  Rational total(0);
  for (const auto& [root, weight] : nu.terms()) {
    total += weight * static_cast<unsigned long>(root.size());
  }
  return total;
}

CoordinateTable::CoordinateTable(const RationalCurrent& nu, int level)
    : basis_(nu.basis()), level_(level) {
  if (level < 1) throw Error(ErrorCode::kInvalidArgument, "coordinate level must be >= 1");
  std::string read;
  for (const auto& [root, weight] : nu.terms()) {
    for (std::size_t start = 0; start < root.size(); ++start) {
      read.clear();
      for (int len = 1; len <= level; ++len) {
        read.push_back(static_cast<char>(root.at(start + static_cast<std::size_t>(len) - 1).code()));
        auto [it, inserted] = values_.try_emplace(canonical_key(read), weight);
        if (!inserted) it->second += weight;
      }
    }
  }
}

Rational CoordinateTable::operator()(const Word& v) const {
  if (v.basis() != basis_) throw Error(ErrorCode::kBasisMismatch, "word over wrong basis");
  if (v.empty() || static_cast<int>(v.size()) > level_) {
    throw Error(ErrorCode::kInvalidArgument, "word length outside coordinate table level");
  }
  const auto it = values_.find(canonical_key(key_of(v)));
  return it == values_.end() ? Rational(0) : it->second;
}

std::map<Word, Rational> CoordinateTable::entries() const {
  std::map<Word, Rational> out;
  for (const auto& [key, value] : values_) out.emplace(word_of(basis_, key), value);
  return out;
}

Rational ProjectiveCurrentVector::entry(const Word& v) const {
  const Word inv = invert(v);
  const auto it = entries_.find(std::min(v, inv));
  return it == entries_.end() ? Rational(0) : it->second;
}

ProjectiveCurrentVector projective_vector(const RationalCurrent& nu, int level) {
  if (nu.is_zero()) throw Error(ErrorCode::kZeroCurrent, "projective class of the zero current");
  const Rational total = length(nu);
  auto entries = CoordinateTable(nu, level).entries();
  for (auto& [v, value] : entries) value /= total;
  return ProjectiveCurrentVector(nu.basis(), level, std::move(entries));
}

Rational projective_distance(const ProjectiveCurrentVector& p, const ProjectiveCurrentVector& q) {
  if (p.level() != q.level() || p.basis() != q.basis()) {
    throw Error(ErrorCode::kInvalidArgument, "projective vectors at different levels or bases");
  }
  Rational best(0);
  for (const auto& [v, value] : p.entries()) best = std::max(best, Rational(abs(value - q.entry(v))));
  for (const auto& [v, value] : q.entries()) {
    if (p.entries().count(v) == 0) best = std::max(best, value);
  }
  return best;
}

Rational projective_distance(const RationalCurrent& lhs, const RationalCurrent& rhs, int level) {
  return projective_distance(projective_vector(lhs, level), projective_vector(rhs, level));
}

CriticalSetWitness critical_set_witness(const RationalCurrent& nu, Letter twisted,
                                        Letter twistor) {
  if (nu.is_zero()) throw Error(ErrorCode::kZeroCurrent, "critical set test on zero current");
  const Basis basis = nu.basis();
  const Letter with[] = {twisted, twistor};
  const Letter with_inverse[] = {twisted, twistor.inverse()};
  CriticalSetWitness w{coordinate(Word::letter(basis, twisted), nu) / 2,
                       coordinate(free_reduce(basis, with), nu),
                       coordinate(free_reduce(basis, with_inverse), nu), false};
  w.in_set = w.half_twisted == w.with_twistor && w.with_twistor == w.with_inverse_twistor;
  return w;
}

}  // namespace currents_lab
