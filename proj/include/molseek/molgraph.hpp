//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLSEEK_MOLGRAPH_HPP_
#define MOLSEEK_MOLGRAPH_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace molseek {

enum class Chirality : std::uint8_t { None, Clockwise, CounterClockwise };
enum class BondOrder : std::uint8_t { Single, Double, Triple, Aromatic };

// Direction mark for cis/trans single bonds: Up means the bond rises
// when traversed from endpoint a to endpoint b ('/' written a-to-b).
enum class BondGeometry : std::uint8_t { None, Up, Down };

struct Atom {
  std::string element;   // periodic-table symbol
  int charge = 0;        // elementary charges
  int isotope = 0;       // mass number, 0 = unspecified
  int implicit_h = 0;
  bool aromatic = false;
  Chirality chiral = Chirality::None;
  // Bracket atoms carry their H count as input data; normalize() must
  // not recompute it for them.
  bool h_explicit = false;
};

struct Bond {
  int a = -1;
  int b = -1;
  BondOrder order = BondOrder::Single;
  BondGeometry geometry = BondGeometry::None;

  int other(int atom) const { return atom == a ? b : a; }
};

// Attributed undirected molecular graph. Mutable while being built
// (parser, generators, tests); every operation below is a pure function
// returning a fresh value, so shared instances are safe to read
// concurrently.
//
// Tetrahedral convention: an atom's chiral tag is interpreted over its
// neighbor list in bond-insertion order, with the implicit hydrogen (if
// any) appended at the end. CounterClockwise means: looking from the
// first neighbor toward the atom, the remaining neighbors appear
// counterclockwise. Parity under any reordering is recovered by
// counting transpositions.
class Molecule {
public:
  Molecule() = default;

  int add_atom(Atom atom);
  // Throws SyntaxError on self-bonds, duplicate pairs, or bad indices.
  int add_bond(int a, int b, BondOrder order,
               BondGeometry geometry = BondGeometry::None);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }

  const Atom &atom(int i) const { return atoms_[static_cast<std::size_t>(i)]; }
  Atom &atom(int i) { return atoms_[static_cast<std::size_t>(i)]; }
  const Bond &bond(int i) const { return bonds_[static_cast<std::size_t>(i)]; }
  Bond &bond(int i) { return bonds_[static_cast<std::size_t>(i)]; }

  // Incident bond indices in insertion order (the chirality reference
  // order).
  const std::vector<int> &bonds_of(int atom) const {
    return adjacency_[static_cast<std::size_t>(atom)];
  }
  int degree(int atom) const {
    return static_cast<int>(adjacency_[static_cast<std::size_t>(atom)].size());
  }
  // Neighbor atom indices in insertion order.
  std::vector<int> neighbors(int atom) const;
  // Bond index between a and b, -1 if absent.
  int bond_between(int a, int b) const;

  // Connected components as atom-index lists, each sorted ascending;
  // components ordered by smallest member.
  std::vector<std::vector<int>> fragments() const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> adjacency_;
};

// Signed direction of a marked single bond read from `from` toward its
// other endpoint: +1 for up, -1 for down, 0 for unmarked.
int bond_direction(const Bond &bond, int from);

// Placeholder for the implicit hydrogen inside tetrahedral neighbor
// sequences.
inline constexpr int kVirtualHydrogen = -1;

// Neighbor atoms in bond-insertion order, with the implicit hydrogen
// appended: the sequence a chiral tag refers to.
std::vector<int> chiral_reference_sequence(const Molecule &m, int atom);

// Parity (0 even, 1 odd) of the permutation carrying `from` onto `to`;
// -1 when they are not rearrangements of each other.
int permutation_parity(const std::vector<int> &from, const std::vector<int> &to);

// Induced submolecule over `atoms` (ascending indices). Bond insertion
// order is preserved, so chiral reference sequences keep their meaning.
Molecule extract_fragment(const Molecule &m, const std::vector<int> &atoms);

// One cis/trans stereo unit: a double bond both of whose ends carry at
// least one direction-marked single bond.
struct StereoUnit {
  int double_bond = -1;
  // Marked substituent single bonds per end, with their sign read
  // toward the double-bond atom they serve.
  std::vector<std::pair<int, int>> ends[2];  // (bond index, sign into end)
};

// Defined cis/trans units of a molecule (aromatic double bonds and
// one-sided marks excluded).
std::vector<StereoUnit> stereo_units(const Molecule &m);

// Smallest rings through every bond (the label-invariant relevant-ring
// set; a superset of any one SSSR choice). Rings are atom-index cycles.
// max_size caps the search per bond.
std::vector<std::vector<int>> relevant_rings(const Molecule &m, int max_size = 9);

// Aromatic bond orders resolved to alternating Single/Double by perfect
// matching over the pi-requiring aromatic atoms. Throws AromaticityError
// when no assignment exists. Atom aromatic flags are left untouched.
Molecule kekulized(const Molecule &m);

// Aromaticity perception, implicit-H assignment from the valence table,
// valence checking, and stereo sanitization. Idempotent. Throws
// ValenceError or AromaticityError.
Molecule normalize(const Molecule &m);

// All chiral tags and direction marks cleared; everything else intact.
Molecule strip_stereo(const Molecule &m);

// True when any tetrahedral tag or defined cis/trans unit survives.
bool has_stereo(const Molecule &m);

// Morgan-style equivalence classes from iterated neighborhood
// refinement, without artificial tie-breaking: equal class = identical
// refined environment. Stereo fields do not participate.
std::vector<int> symmetry_classes(const Molecule &m);

// Discrete canonical ranks (a permutation of 0..n-1): refinement plus
// lowest-index tie-breaking with rank doubling, re-refined to stability.
std::vector<int> canonical_ranks(const Molecule &m);

// Brute-force isomorphism oracle: backtracking with element/degree
// pruning; preserves element, charge, isotope, implicit H, aromatic
// flag, bond orders, tetrahedral parity, and cis/trans configuration.
// Both inputs must be normalized. Multi-fragment molecules are compared
// fragment-multiset-wise. Throws SizeLimitError above atom_cap.
bool isomorphic(const Molecule &a, const Molecule &b, int atom_cap = 64);

}  // namespace molseek

#endif  // MOLSEEK_MOLGRAPH_HPP_
