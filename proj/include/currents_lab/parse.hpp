#pragma once

#include <string_view>

#include "currents_lab/automorphism.hpp"
#include "currents_lab/current.hpp"
#include "currents_lab/tree_length.hpp"
#include "currents_lab/word.hpp"

namespace currents_lab {

// Literal syntax, all whitespace-insensitive:
//
//   word          abAc
//   automorphism  id | D | phi | aprime | adoubleprime | ca | twist(a,c)
//                 | a->ab; c->ca | a->aB; c->cA     (unlisted letters fixed)
//                 any of these may end in ^n, n a signed integer
//   current       0 | 3/2*[ab] + [c]
//   tree          cayley [w(a)=2 ...] | twist (a:b,1) (e:d,3/2)
//                 followed by optional scale=r and marking=<automorphism>
//
// D is a -> ab, phi the double twist a -> ab, e -> ed, aprime and
// adoubleprime the basis changes b -> Ac, c -> ACab, d -> Cd and
// b -> Ec, c -> ACeb, d -> CeAd, ca the basis change c -> ca.
// Parsers throw ParseError with the offset into the full literal.

enum class LiteralKind { kWord, kAutomorphism, kCurrent, kTree };

Word parse_word(Basis basis, std::string_view text);
FreeAutomorphism parse_automorphism(Basis basis, std::string_view text);
RationalCurrent parse_current(Basis basis, std::string_view text);
TreeLengthFunction parse_tree(Basis basis, std::string_view text);

// Smallest rank (at least 2) over which the literal makes sense: the largest
// letter it mentions, or the rank a built-in needs.
int literal_rank(LiteralKind kind, std::string_view text);

}  // namespace currents_lab
