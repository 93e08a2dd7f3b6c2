//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "molseek/errors.hpp"
#include "molseek/molgraph.hpp"
#include "molseek/rng.hpp"
#include "molseek/smiles.hpp"

using namespace molseek;

namespace {

Atom carbon() {
  Atom a;
  a.element = "C";
  return a;
}

Molecule kekulized_benzene() {
  Molecule m;
  for (int i = 0; i < 6; ++i)
    m.add_atom(carbon());
  for (int i = 0; i < 6; ++i)
    m.add_bond(i, (i + 1) % 6, i % 2 == 0 ? BondOrder::Double : BondOrder::Single);
  return m;
}

Molecule cyclohexane() {
  Molecule m;
  for (int i = 0; i < 6; ++i)
    m.add_atom(carbon());
  for (int i = 0; i < 6; ++i)
    m.add_bond(i, (i + 1) % 6, BondOrder::Single);
  return m;
}

bool atoms_equal(const Atom &a, const Atom &b) {
  return a.element == b.element && a.charge == b.charge && a.isotope == b.isotope &&
         a.implicit_h == b.implicit_h && a.aromatic == b.aromatic &&
         a.chiral == b.chiral;
}

bool molecules_equal(const Molecule &a, const Molecule &b) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  for (int v = 0; v < a.num_atoms(); ++v)
    if (!atoms_equal(a.atom(v), b.atom(v)))
      return false;
  for (int e = 0; e < a.num_bonds(); ++e) {
    if (a.bond(e).a != b.bond(e).a || a.bond(e).b != b.bond(e).b ||
        a.bond(e).order != b.bond(e).order ||
        a.bond(e).geometry != b.bond(e).geometry)
      return false;
  }
  return true;
}

// Relabeled copy with atoms in shuffled order; extract_fragment keeps
// bond insertion order, so stereo semantics carry over.
Molecule permuted(const Molecule &m, Rng &rng) {
  std::vector<int> order(static_cast<std::size_t>(m.num_atoms()));
  for (int i = 0; i < m.num_atoms(); ++i)
    order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  return extract_fragment(m, order);
}

}  // namespace

TEST_CASE("normalize perceives benzene from the kekule form") {
  // Hueckel count: three ring double bonds give 6 pi electrons = 4*1+2.
  const Molecule m = normalize(kekulized_benzene());
  for (int v = 0; v < 6; ++v) {
    CHECK(m.atom(v).aromatic);
    CHECK(m.atom(v).implicit_h == 1);
  }
  for (int e = 0; e < 6; ++e)
    CHECK(m.bond(e).order == BondOrder::Aromatic);
}

TEST_CASE("normalize leaves methane alone and fills hydrogens") {
  Molecule m;
  m.add_atom(carbon());
  const Molecule n = normalize(m);
  CHECK(n.num_atoms() == 1);
  CHECK(n.num_bonds() == 0);
  CHECK(n.atom(0).implicit_h == 4);
  CHECK_FALSE(n.atom(0).aromatic);
}

TEST_CASE("normalize does not aromatize cyclohexane") {
  const Molecule n = normalize(cyclohexane());
  for (int v = 0; v < 6; ++v) {
    CHECK_FALSE(n.atom(v).aromatic);
    CHECK(n.atom(v).implicit_h == 2);
  }
  for (int e = 0; e < 6; ++e)
    CHECK(n.bond(e).order == BondOrder::Single);
}

TEST_CASE("normalize is idempotent") {
  const Molecule cases[] = {kekulized_benzene(), cyclohexane()};
  for (const Molecule &m: cases) {
    const Molecule once = normalize(m);
    const Molecule twice = normalize(once);
    CHECK(molecules_equal(once, twice));
  }
  for (const char *s:
       {"c1ccccc1", "C[C@H](N)O", "F/C=C/F", "O=C(O)c1ccccc1", "C1CC1.[Na+]"}) {
    const Molecule once = parse_smiles(s);
    CHECK(molecules_equal(once, normalize(once)));
  }
}

TEST_CASE("normalize rejects valence violations") {
  Molecule m;
  for (int i = 0; i < 6; ++i)
    m.add_atom(carbon());
  for (int i = 1; i < 6; ++i)
    m.add_bond(0, i, BondOrder::Single);  // pentavalent carbon
  CHECK_THROWS_AS(normalize(m), ValenceError);
}

TEST_CASE("strip_stereo clears tags and is a fixed point") {
  const Molecule chiral = parse_smiles("C[C@H](N)O");
  const Molecule plain = parse_smiles("CC(N)O");
  CHECK(has_stereo(chiral));
  const Molecule stripped = strip_stereo(chiral);
  CHECK_FALSE(has_stereo(stripped));
  CHECK(isomorphic(stripped, plain));
  CHECK(molecules_equal(stripped, strip_stereo(stripped)));

  const Molecule trans = parse_smiles("F/C=C/F");
  CHECK(has_stereo(trans));
  CHECK(isomorphic(strip_stereo(trans), parse_smiles("FC=CF")));

  const Molecule achiral = parse_smiles("CCO");
  CHECK(molecules_equal(achiral, strip_stereo(achiral)));
}

TEST_CASE("isomorphic accepts rotated benzene and rejects CCO vs CCN") {
  const Molecule benzene = normalize(kekulized_benzene());
  Molecule rotated;
  for (int i = 0; i < 6; ++i)
    rotated.add_atom(carbon());
  for (int i = 0; i < 6; ++i) {
    const int a = (i + 2) % 6;
    const int b = (i + 3) % 6;
    rotated.add_bond(a, b, i % 2 == 0 ? BondOrder::Double : BondOrder::Single);
  }
  CHECK(isomorphic(benzene, normalize(rotated)));
  CHECK_FALSE(isomorphic(parse_smiles("CCO"), parse_smiles("CCN")));
}

TEST_CASE("isomorphic separates enantiomers") {
  const Molecule left = parse_smiles("C[C@H](N)O");
  const Molecule right = parse_smiles("C[C@@H](N)O");
  CHECK_FALSE(isomorphic(left, right));
  CHECK(isomorphic(left, left));
  CHECK(isomorphic(strip_stereo(left), strip_stereo(right)));
}

TEST_CASE("isomorphic separates cis from trans") {
  const Molecule trans = parse_smiles("F/C=C/F");
  const Molecule cis = parse_smiles("F/C=C\\F");
  CHECK_FALSE(isomorphic(trans, cis));
  CHECK(isomorphic(trans, parse_smiles("F/C=C/F")));
  CHECK(isomorphic(cis, parse_smiles("F\\C=C/F")));
}

TEST_CASE("isomorphic is invariant under atom relabeling") {
  Rng rng(20260810);
  const char *samples[] = {
      "CCO",           "c1ccccc1",        "C[C@H](N)O",  "F/C=C/F",
      "CC(C)C(=O)O",   "c1ccc2ccccc2c1",  "[O-]C(=O)C",  "CC1=CC(=O)CC(C)(C)C1",
      "N[C@@H](C)C(=O)O.[Cl-]",           "COc1cc(/C=C/C#N)ccc1O"};
  for (const char *s: samples) {
    const Molecule m = parse_smiles(s);
    for (int trial = 0; trial < 10; ++trial) {
      const Molecule p = permuted(m, rng);
      CHECK(isomorphic(m, p));
      CHECK(isomorphic(p, m));
    }
  }
}

TEST_CASE("isomorphic enforces the atom cap") {
  Molecule chain;
  int prev = chain.add_atom(carbon());
  for (int i = 1; i < 70; ++i) {
    const int v = chain.add_atom(carbon());
    chain.add_bond(prev, v, BondOrder::Single);
    prev = v;
  }
  const Molecule n = normalize(chain);
  CHECK_THROWS_AS(isomorphic(n, n), SizeLimitError);
  CHECK(isomorphic(n, n, 128));
}

TEST_CASE("fragment comparison is multiset-wise") {
  const Molecule a = parse_smiles("CCO.[Na+]");
  const Molecule b = parse_smiles("[Na+].OCC");
  CHECK(isomorphic(a, b));
  CHECK_FALSE(isomorphic(a, parse_smiles("CCO.[K+]")));
  CHECK_FALSE(isomorphic(parse_smiles("CC.CC"), parse_smiles("CCCC")));
}

TEST_CASE("relevant rings find the hexagons of naphthalene") {
  const Molecule m = parse_smiles("c1ccc2ccccc2c1");
  const auto rings = relevant_rings(m);
  CHECK(rings.size() == 2);
  for (const auto &ring: rings)
    CHECK(ring.size() == 6);
  for (int v = 0; v < m.num_atoms(); ++v)
    CHECK(m.atom(v).aromatic);
}

TEST_CASE("symmetry classes merge equivalent atoms only") {
  const Molecule propane = parse_smiles("CCC");
  const auto classes = symmetry_classes(propane);
  CHECK(classes[0] == classes[2]);
  CHECK(classes[0] != classes[1]);

  const auto ranks = canonical_ranks(propane);
  CHECK(ranks.size() == 3);
  std::vector<int> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<int>{0, 1, 2});
}
