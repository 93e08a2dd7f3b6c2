//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLSEEK_ELEMENTS_HPP_
#define MOLSEEK_ELEMENTS_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace molseek {

// Periodic-table lookups and the valence model.
//
// Valence table: B=3, C=4, N=3, O=2, P={3,5}, S={2,4,6}, halogens=1,
// H=1, Si=4, Se={2,4,6}, As={3,5}. Charge shifts the allowed valences
// by the usual SMILES convention (group 15/16 gain a bond per positive
// charge and lose one per negative; group 13/14 lose bonding capacity
// in either direction). Elements outside the table are accepted in
// bracket atoms and left unchecked.

// 0 when the symbol is not a known element.
int atomic_number(std::string_view symbol);

const std::string &element_symbol(int atomic_number);

bool is_organic_subset(std::string_view symbol);

// Elements allowed to carry the aromatic flag.
bool aromatic_capable(std::string_view symbol);

// Allowed total valences (bond order sum + implicit H) for the
// element/charge pair, ascending. Empty when unconstrained.
std::vector<int> allowed_valences(std::string_view symbol, int charge);

// Smallest allowed valence >= bond_sum, or -1 when every allowed
// valence is exceeded (ValenceError at the caller) or the element is
// unconstrained (implicit H defaults to zero).
int default_valence(std::string_view symbol, int charge, int bond_sum);

}  // namespace molseek

#endif  // MOLSEEK_ELEMENTS_HPP_
