//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molseek/elements.hpp"

#include <array>
#include <unordered_map>

namespace molseek {

namespace {

constexpr int kNumElements = 118;

const std::array<const char *, kNumElements + 1> kSymbols = {
    "?",  "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
    "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

const std::unordered_map<std::string_view, int> &symbol_index() {
  static const std::unordered_map<std::string_view, int> index = [] {
    std::unordered_map<std::string_view, int> m;
    for (int z = 1; z <= kNumElements; ++z)
      m.emplace(kSymbols[static_cast<std::size_t>(z)], z);
    return m;
  }();
  return index;
}

}  // namespace

int atomic_number(std::string_view symbol) {
  const auto &index = symbol_index();
  const auto it = index.find(symbol);
  return it == index.end() ? 0 : it->second;
}

const std::string &element_symbol(int z) {
  static const std::vector<std::string> symbols(kSymbols.begin(), kSymbols.end());
  if (z < 1 || z > kNumElements)
    return symbols[0];
  return symbols[static_cast<std::size_t>(z)];
}

bool is_organic_subset(std::string_view symbol) {
  return symbol == "B" || symbol == "C" || symbol == "N" || symbol == "O" ||
         symbol == "P" || symbol == "S" || symbol == "F" || symbol == "Cl" ||
         symbol == "Br" || symbol == "I";
}

bool aromatic_capable(std::string_view symbol) {
  return symbol == "B" || symbol == "C" || symbol == "N" || symbol == "O" ||
         symbol == "P" || symbol == "S" || symbol == "Se" || symbol == "As";
}

std::vector<int> allowed_valences(std::string_view symbol, int charge) {
  auto clamp0 = [](int v) { return v < 0 ? 0 : v; };
  std::vector<int> base;
  int group = 0;
  if (symbol == "H") {
    return {clamp0(1 - (charge < 0 ? -charge : charge))};
  } else if (symbol == "B") {
    base = {3};
    group = 13;
  } else if (symbol == "C" || symbol == "Si") {
    base = {4};
    group = 14;
  } else if (symbol == "N") {
    base = {3};
    group = 15;
  } else if (symbol == "P" || symbol == "As") {
    base = {3, 5};
    group = 15;
  } else if (symbol == "O") {
    base = {2};
    group = 16;
  } else if (symbol == "S" || symbol == "Se") {
    base = {2, 4, 6};
    group = 16;
  } else if (symbol == "F" || symbol == "Cl" || symbol == "Br" || symbol == "I") {
    base = {1};
    group = 17;
  } else {
    return {};  // unconstrained
  }

  std::vector<int> out;
  out.reserve(base.size());
  for (const int v: base) {
    int adj = v;
    switch (group) {
    case 13:
      adj = v - charge;  // B(-) borate gains a bond, B(+) loses one
      break;
    case 14:
      adj = v - (charge < 0 ? -charge : charge);  // cation and anion both trivalent
      break;
    case 15:
    case 16:
      adj = v + charge;  // N(+)=4, O(+)=3, N(-)=2, O(-)=1
      break;
    case 17:
      adj = v + charge;  // halide anion 0, halonium 2
      break;
    default:
      break;
    }
    out.push_back(clamp0(adj));
  }
  return out;
}

int default_valence(std::string_view symbol, int charge, int bond_sum) {
  const std::vector<int> allowed = allowed_valences(symbol, charge);
  if (allowed.empty())
    return -1;
  for (const int v: allowed)
    if (v >= bond_sum)
      return v;
  return -1;
}

}  // namespace molseek
