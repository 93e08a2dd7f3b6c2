//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "molseek/errors.hpp"
#include "molseek/molgraph.hpp"
#include "molseek/rng.hpp"
#include "molseek/smiles.hpp"

using namespace molseek;

namespace {

const std::vector<std::string> &sample_smiles() {
  static const std::vector<std::string> samples = {
      "C",
      "CCO",
      "OCC",
      "c1ccccc1",
      "C1=CC=CC=C1",
      "c1ccc2ccccc2c1",
      "CC(=O)Oc1ccccc1C(=O)O",
      "C[C@H](N)O",
      "C[C@@H](N)O",
      "N[C@@H](C)C(=O)O",
      "F/C=C/F",
      "F/C=C\\F",
      "C/C=C/C=C/C",
      "CC(C)(C)c1ccc(O)cc1",
      "[13CH4]",
      "[NH4+].[Cl-]",
      "[O-]C(=O)c1ccccc1",
      "C#N",
      "O=C=O",
      "c1cc[nH]c1",
      "c1ccncc1",
      "c1ccoc1",
      "c1ccsc1",
      "CN1C=NC2=C1C(=O)N(C)C(=O)N2C",
      "CC12CCC(C1)C(C)(C)C2O",
      "COc1cc(/C=C/C(=O)O)ccc1O",
      "C1CC1.C1CC1",
      "[Na+].[O-]S(=O)(=O)O",
      "O[C@H]1CC[C@@H](N)CC1",
      "S=C=S",
  };
  return samples;
}

}  // namespace

TEST_CASE("parse handles the smallest molecule") {
  const Molecule m = parse_smiles("C");
  CHECK(m.num_atoms() == 1);
  CHECK(m.num_bonds() == 0);
  CHECK(m.atom(0).implicit_h == 4);
}

TEST_CASE("parse error classes are distinct and deterministic") {
  CHECK_THROWS_AS(parse_smiles("C1CC"), UnclosedRingError);
  CHECK_THROWS_AS(parse_smiles("C(C"), UnclosedBranchError);
  CHECK_THROWS_AS(parse_smiles("CC)C"), UnclosedBranchError);
  CHECK_THROWS_AS(parse_smiles("CC$"), SyntaxError);
  CHECK_THROWS_AS(parse_smiles(""), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("C="), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("=C"), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("C..C"), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("[Xq]"), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("C(C)(C)(C)(C)C"), ValenceError);
  CHECK_THROWS_AS(parse_smiles("c1ccnc1"), AromaticityError);
  CHECK_THROWS_AS(parse_smiles("c1cc1"), AromaticityError);
  CHECK_THROWS_AS(parse_smiles("C/C(/F)=CC"), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("*"), SyntaxError);
  CHECK_THROWS_AS(parse_smiles("C%1CC%1"), SyntaxError);
}

TEST_CASE("parse perceives the aromatic subset ring") {
  const Molecule m = parse_smiles("c1ccccc1");
  REQUIRE(m.num_atoms() == 6);
  REQUIRE(m.num_bonds() == 6);
  for (int v = 0; v < 6; ++v) {
    CHECK(m.atom(v).aromatic);
    CHECK(m.atom(v).implicit_h == 1);
  }
  for (int e = 0; e < 6; ++e)
    CHECK(m.bond(e).order == BondOrder::Aromatic);
}

TEST_CASE("parse resolves ring-closure bond symbols") {
  CHECK(isomorphic(parse_smiles("C=1CCCCC=1"), parse_smiles("C1CCCCC=1")));
  CHECK_THROWS_AS(parse_smiles("C=1CCCCC#1"), SyntaxError);
  CHECK(isomorphic(parse_smiles("C%12CCCCC%12"), parse_smiles("C1CCCCC1")));
}

TEST_CASE("parse discards atom classes") {
  CHECK(isomorphic(parse_smiles("[CH3:1][CH2:2]O"), parse_smiles("CCO")));
}

TEST_CASE("pyrrole needs its bracket hydrogen") {
  const Molecule m = parse_smiles("c1cc[nH]c1");
  int n_index = -1;
  for (int v = 0; v < m.num_atoms(); ++v)
    if (m.atom(v).element == "N")
      n_index = v;
  REQUIRE(n_index >= 0);
  CHECK(m.atom(n_index).implicit_h == 1);
  CHECK(m.atom(n_index).aromatic);
}

TEST_CASE("write emits methane and round-trips benzene") {
  Molecule methane;
  Atom c;
  c.element = "C";
  methane.add_atom(c);
  CHECK(write_smiles(normalize(methane)) == "C");

  const Molecule benzene = parse_smiles("c1ccccc1");
  const Molecule again = parse_smiles(write_smiles(benzene));
  CHECK(isomorphic(benzene, again));
}

TEST_CASE("write round-trips alanine with its stereo center") {
  const Molecule m = parse_smiles("N[C@@H](C)C(=O)O");
  const Molecule again = parse_smiles(write_smiles(m));
  CHECK(isomorphic(m, again));
  CHECK_FALSE(isomorphic(parse_smiles("N[C@H](C)C(=O)O"), again));
}

TEST_CASE("round trip preserves every sample, stereo included") {
  for (const std::string &s: sample_smiles()) {
    CAPTURE(s);
    const Molecule m = parse_smiles(s);
    const std::string out = write_smiles(m);
    CAPTURE(out);
    CHECK(isomorphic(m, parse_smiles(out)));
  }
}

TEST_CASE("canonical forms identify equal graphs") {
  CHECK(canonical_smiles("OCC") == canonical_smiles("CCO"));
  CHECK(canonical_smiles("C") == canonical_smiles("C"));
  CHECK(canonical_smiles("c1ccccc1") == canonical_smiles("C1=CC=CC=C1"));
  CHECK(canonical_smiles("CCO") != canonical_smiles("CCN"));
  CHECK(canonical_smiles("C[C@H](N)O") != canonical_smiles("C[C@@H](N)O"));
  CHECK(canonical_smiles("F/C=C/F") != canonical_smiles("F/C=C\\F"));
  CHECK(canonical_smiles("F/C=C/F") == canonical_smiles("F/C=C/F"));
  CHECK(canonical_smiles("C1CC1.[Na+]") == canonical_smiles("[Na+].C1CC1"));
}

TEST_CASE("canonical form is stable under re-canonicalization") {
  for (const std::string &s: sample_smiles()) {
    CAPTURE(s);
    const std::string once = canonical_smiles(s);
    CHECK(canonical_smiles(once) == once);
  }
}

TEST_CASE("achiral canonical form merges stereo variants") {
  CHECK(canonical_smiles_achiral("C[C@H](N)O") ==
        canonical_smiles_achiral("C[C@@H](N)O"));
  CHECK(canonical_smiles_achiral("F/C=C\\F") ==
        canonical_smiles_achiral("F/C=C/F"));
  CHECK(canonical_smiles_achiral("CCO") == canonical_smiles("CCO"));
  CHECK(canonical_smiles_achiral("CC(C)C") == canonical_smiles("CC(C)C"));
}

TEST_CASE("canonical form is invariant under random re-serialization") {
  Rng rng(7);
  for (const std::string &s: sample_smiles()) {
    CAPTURE(s);
    const Molecule m = parse_smiles(s);
    const std::string expect = canonical_smiles(m);
    for (int trial = 0; trial < 8; ++trial) {
      const std::string variant = write_smiles_randomized(m, rng);
      CAPTURE(variant);
      CHECK(canonical_smiles(variant) == expect);
    }
  }
}

TEST_CASE("canonical equality agrees with the oracle on sample pairs") {
  const auto &samples = sample_smiles();
  std::vector<Molecule> mols;
  std::vector<std::string> canon;
  for (const std::string &s: samples) {
    mols.push_back(parse_smiles(s));
    canon.push_back(canonical_smiles(mols.back()));
  }
  for (std::size_t i = 0; i < mols.size(); ++i)
    for (std::size_t j = i; j < mols.size(); ++j) {
      CAPTURE(samples[i]);
      CAPTURE(samples[j]);
      CHECK((canon[i] == canon[j]) == isomorphic(mols[i], mols[j]));
    }
}

TEST_CASE("degenerate stereo marks are dropped consistently") {
  // Two methyls on the tagged atom: no stereocenter.
  CHECK(canonical_smiles("C[C@](C)(N)O") == canonical_smiles("C[C@@](C)(N)O"));
  CHECK(canonical_smiles("C[C@](C)(N)O") == canonical_smiles("CC(C)(N)O"));
  CHECK(isomorphic(parse_smiles("C[C@](C)(N)O"), parse_smiles("CC(C)(N)O")));
  // Identical substituents across the double bond: no cis/trans.
  CHECK(canonical_smiles("C/C(C)=C/F") == canonical_smiles("CC(C)=CF"));
}

TEST_CASE("charged and isotopic atoms survive the round trip") {
  for (const char *s: {"[NH4+]", "[O-]C(=O)C", "[13CH4]", "[2H]O[2H]", "[Fe+2]"}) {
    CAPTURE(s);
    const Molecule m = parse_smiles(s);
    CHECK(isomorphic(m, parse_smiles(write_smiles(m))));
  }
  CHECK(canonical_smiles("[13CH4]") != canonical_smiles("C"));
  CHECK(canonical_smiles("[NH4+]") != canonical_smiles("N"));
}
