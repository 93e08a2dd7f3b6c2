//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLSEEK_SMILES_HPP_
#define MOLSEEK_SMILES_HPP_

#include <string>
#include <string_view>

#include "molseek/molgraph.hpp"
#include "molseek/rng.hpp"

namespace molseek {

// SMILES front end. Supported grammar: organic-subset atoms
// (B,C,N,O,P,S,F,Cl,Br,I and aromatic b,c,n,o,p,s), bracket atoms
// [isotope? symbol chiral? Hcount? charge? :class?], bond symbols
// - = # : / \, branches, ring closures (digits and %nn), and dot
// fragments. Atom-class labels are parsed and discarded.

// Parses and normalizes. Throws SyntaxError / UnclosedRingError /
// UnclosedBranchError / ValenceError / AromaticityError.
Molecule parse_smiles(std::string_view text);

// Serialization that round-trips: parse_smiles(write_smiles(m)) is
// isomorphic to m, stereo included. Traversal follows atom order, so
// the output resembles the input layout rather than a canonical form.
std::string write_smiles(const Molecule &m);

// Same contract as write_smiles with traversal order drawn from rng;
// used to exercise permutation invariance and to de-canonicalize
// generated pools.
std::string write_smiles_randomized(const Molecule &m, Rng &rng);

// Canonical form: equal strings <=> isomorphic molecules within the
// supported feature set. Ranking is Morgan-style iterated refinement
// with lowest-index tie-breaking; emission starts at the best-ranked
// atom of each fragment and fragments are emitted in sorted order.
std::string canonical_smiles(const Molecule &normalized);
std::string canonical_smiles(std::string_view smiles);

// Canonical form of the stereo-stripped molecule.
std::string canonical_smiles_achiral(const Molecule &normalized);
std::string canonical_smiles_achiral(std::string_view smiles);

}  // namespace molseek

#endif  // MOLSEEK_SMILES_HPP_
