//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molseek/molgraph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "molseek/elements.hpp"
#include "molseek/errors.hpp"

namespace molseek {

int Molecule::add_atom(Atom atom) {
  atoms_.push_back(std::move(atom));
  adjacency_.emplace_back();
  return num_atoms() - 1;
}

int Molecule::add_bond(int a, int b, BondOrder order, BondGeometry geometry) {
  if (a < 0 || b < 0 || a >= num_atoms() || b >= num_atoms())
    throw SyntaxError("bond endpoint out of range");
  if (a == b)
    throw SyntaxError("self-bond on atom " + std::to_string(a));
  if (bond_between(a, b) >= 0)
    throw SyntaxError("duplicate bond between atoms " + std::to_string(a) +
                      " and " + std::to_string(b));
  bonds_.push_back(Bond{a, b, order, geometry});
  const int idx = num_bonds() - 1;
  adjacency_[static_cast<std::size_t>(a)].push_back(idx);
  adjacency_[static_cast<std::size_t>(b)].push_back(idx);
  return idx;
}

std::vector<int> Molecule::neighbors(int atom) const {
  std::vector<int> out;
  out.reserve(adjacency_[static_cast<std::size_t>(atom)].size());
  for (const int e: adjacency_[static_cast<std::size_t>(atom)])
    out.push_back(bonds_[static_cast<std::size_t>(e)].other(atom));
  return out;
}

int Molecule::bond_between(int a, int b) const {
  for (const int e: adjacency_[static_cast<std::size_t>(a)])
    if (bonds_[static_cast<std::size_t>(e)].other(a) == b)
      return e;
  return -1;
}

std::vector<std::vector<int>> Molecule::fragments() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(static_cast<std::size_t>(num_atoms()), false);
  for (int start = 0; start < num_atoms(); ++start) {
    if (seen[static_cast<std::size_t>(start)])
      continue;
    std::vector<int> comp;
    std::deque<int> queue{start};
    seen[static_cast<std::size_t>(start)] = true;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      comp.push_back(v);
      for (const int e: bonds_of(v)) {
        const int u = bond(e).other(v);
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = true;
          queue.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

int bond_direction(const Bond &bond, int from) {
  if (bond.geometry == BondGeometry::None)
    return 0;
  const int sign = bond.geometry == BondGeometry::Up ? 1 : -1;
  return from == bond.a ? sign : -sign;
}

std::vector<int> chiral_reference_sequence(const Molecule &m, int atom) {
  std::vector<int> seq = m.neighbors(atom);
  if (m.atom(atom).implicit_h == 1)
    seq.push_back(kVirtualHydrogen);
  return seq;
}

int permutation_parity(const std::vector<int> &from, const std::vector<int> &to) {
  if (from.size() != to.size())
    return -1;
  std::vector<int> perm;
  std::vector<bool> taken(to.size(), false);
  for (const int x: from) {
    int j = -1;
    for (std::size_t i = 0; i < to.size(); ++i)
      if (!taken[i] && to[i] == x) {
        j = static_cast<int>(i);
        break;
      }
    if (j < 0)
      return -1;
    taken[static_cast<std::size_t>(j)] = true;
    perm.push_back(j);
  }
  int swaps = 0;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i])
      continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = static_cast<std::size_t>(perm[j]);
      ++len;
    }
    swaps += len - 1;
  }
  return swaps % 2;
}

Molecule extract_fragment(const Molecule &m, const std::vector<int> &atoms) {
  std::vector<int> remap(static_cast<std::size_t>(m.num_atoms()), -1);
  Molecule out;
  for (const int v: atoms)
    remap[static_cast<std::size_t>(v)] = out.add_atom(m.atom(v));
  for (int e = 0; e < m.num_bonds(); ++e) {
    const Bond &b = m.bond(e);
    const int a2 = remap[static_cast<std::size_t>(b.a)];
    const int b2 = remap[static_cast<std::size_t>(b.b)];
    if (a2 >= 0 && b2 >= 0)
      out.add_bond(a2, b2, b.order, b.geometry);
  }
  return out;
}

namespace {

int order_value(BondOrder order) {
  switch (order) {
  case BondOrder::Single:
    return 1;
  case BondOrder::Double:
    return 2;
  case BondOrder::Triple:
    return 3;
  case BondOrder::Aromatic:
    return 1;  // callers kekulize before summing valence
  }
  return 1;
}

// Marked substituent bonds of double bond `db` at end `u`, with signs
// read toward u. Empty when the marks at u contradict each other.
std::vector<std::pair<int, int>> marked_subs(const Molecule &m, int db, int u) {
  std::vector<std::pair<int, int>> subs;
  for (const int e: m.bonds_of(u)) {
    if (e == db || m.bond(e).order != BondOrder::Single)
      continue;
    const int s = m.bond(e).other(u);
    const int d = bond_direction(m.bond(e), s);
    if (d != 0)
      subs.emplace_back(e, d);
  }
  if (subs.size() == 2 && subs[0].second == subs[1].second)
    return {};  // both substituents claim the same side
  return subs;
}

}  // namespace

std::vector<StereoUnit> stereo_units(const Molecule &m) {
  std::vector<StereoUnit> units;
  for (int e = 0; e < m.num_bonds(); ++e) {
    if (m.bond(e).order != BondOrder::Double)
      continue;
    StereoUnit unit;
    unit.double_bond = e;
    unit.ends[0] = marked_subs(m, e, m.bond(e).a);
    unit.ends[1] = marked_subs(m, e, m.bond(e).b);
    if (!unit.ends[0].empty() && !unit.ends[1].empty())
      units.push_back(std::move(unit));
  }
  return units;
}

std::vector<std::vector<int>> relevant_rings(const Molecule &m, int max_size) {
  const int n = m.num_atoms();
  std::vector<std::vector<int>> rings;
  std::set<std::vector<int>> seen;  // sorted bond-index keys

  for (int skip = 0; skip < m.num_bonds(); ++skip) {
    const int u = m.bond(skip).a;
    const int v = m.bond(skip).b;

    // BFS from u in G - skip, keeping every shortest-path predecessor.
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<int>> preds(static_cast<std::size_t>(n));
    std::deque<int> queue{u};
    dist[static_cast<std::size_t>(u)] = 0;
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      if (dist[static_cast<std::size_t>(x)] >= max_size)
        break;
      for (const int e: m.bonds_of(x)) {
        if (e == skip)
          continue;
        const int y = m.bond(e).other(x);
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          preds[static_cast<std::size_t>(y)].push_back(x);
          queue.push_back(y);
        } else if (dist[static_cast<std::size_t>(y)] ==
                   dist[static_cast<std::size_t>(x)] + 1) {
          preds[static_cast<std::size_t>(y)].push_back(x);
        }
      }
    }
    if (dist[static_cast<std::size_t>(v)] < 0 ||
        dist[static_cast<std::size_t>(v)] + 1 > max_size)
      continue;

    // Every shortest v->u path plus the skipped bond is a smallest ring
    // through that bond.
    constexpr int kMaxPathsPerBond = 64;
    std::vector<std::vector<int>> paths;
    std::vector<int> cur{v};
    auto dfs = [&](auto &&self, int x) -> void {
      if (static_cast<int>(paths.size()) >= kMaxPathsPerBond)
        return;
      if (x == u) {
        paths.push_back(cur);
        return;
      }
      for (const int p: preds[static_cast<std::size_t>(x)]) {
        cur.push_back(p);
        self(self, p);
        cur.pop_back();
      }
    };
    dfs(dfs, v);

    for (const auto &path: paths) {
      std::vector<int> key;
      key.push_back(skip);
      bool ok = true;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const int e = m.bond_between(path[i], path[i + 1]);
        if (e < 0) {
          ok = false;
          break;
        }
        key.push_back(e);
      }
      if (!ok)
        continue;
      std::sort(key.begin(), key.end());
      if (seen.insert(key).second)
        rings.push_back(path);  // cycle as atom list, v...u
    }
  }

  std::stable_sort(rings.begin(), rings.end(),
                   [](const std::vector<int> &a, const std::vector<int> &b) {
                     if (a.size() != b.size())
                       return a.size() < b.size();
                     return a < b;
                   });
  return rings;
}

namespace {

// Whether an aromatic-flagged atom must receive one double bond in the
// kekule assignment. sigma counts are taken over current neighbors plus
// known hydrogens; bare aromatic carbons have their H seeded by
// normalize() before this runs.
bool needs_pi_bond(const Molecule &m, int v) {
  const Atom &a = m.atom(v);
  for (const int e: m.bonds_of(v)) {
    const BondOrder o = m.bond(e).order;
    if (o == BondOrder::Double || o == BondOrder::Triple)
      return false;  // pi already spoken for (exocyclic C=O and friends)
  }
  const int sigma = m.degree(v) + a.implicit_h;
  const std::string &el = a.element;
  if (el == "C") {
    return a.charge == 0 && sigma <= 3;
  } else if (el == "N" || el == "P" || el == "As") {
    if (a.charge == 0)
      return sigma == 2;
    if (a.charge == 1)
      return sigma == 3 || sigma == 2;
    return false;
  } else if (el == "O" || el == "S" || el == "Se") {
    return a.charge == 1;
  }
  return false;  // B and anything else donates no pi bond
}

bool match_pi(const std::vector<std::vector<int>> &cand, std::vector<int> &mate,
              std::vector<bool> &used, std::size_t i,
              const std::vector<int> &needers) {
  while (i < needers.size() && used[static_cast<std::size_t>(needers[i])])
    ++i;
  if (i == needers.size())
    return true;
  const int v = needers[i];
  used[static_cast<std::size_t>(v)] = true;
  for (const int w: cand[static_cast<std::size_t>(v)]) {
    if (used[static_cast<std::size_t>(w)])
      continue;
    used[static_cast<std::size_t>(w)] = true;
    mate[static_cast<std::size_t>(v)] = w;
    mate[static_cast<std::size_t>(w)] = v;
    if (match_pi(cand, mate, used, i + 1, needers))
      return true;
    used[static_cast<std::size_t>(w)] = false;
    mate[static_cast<std::size_t>(v)] = mate[static_cast<std::size_t>(w)] = -1;
  }
  used[static_cast<std::size_t>(v)] = false;
  return false;
}

}  // namespace

Molecule kekulized(const Molecule &in) {
  Molecule m = in;
  for (int v = 0; v < m.num_atoms(); ++v) {
    if (m.atom(v).aromatic && !aromatic_capable(m.atom(v).element))
      throw AromaticityError("aromatic flag on element " + m.atom(v).element);
  }
  bool any_aromatic_bond = false;
  for (int e = 0; e < m.num_bonds(); ++e) {
    if (m.bond(e).order != BondOrder::Aromatic)
      continue;
    any_aromatic_bond = true;
    if (!m.atom(m.bond(e).a).aromatic || !m.atom(m.bond(e).b).aromatic)
      throw AromaticityError("aromatic bond between non-aromatic atoms");
  }

  std::vector<int> needers;
  std::vector<std::vector<int>> cand(static_cast<std::size_t>(m.num_atoms()));
  for (int v = 0; v < m.num_atoms(); ++v)
    if (m.atom(v).aromatic && needs_pi_bond(m, v))
      needers.push_back(v);
  if (needers.empty() && !any_aromatic_bond)
    return m;

  std::vector<bool> needs(static_cast<std::size_t>(m.num_atoms()), false);
  for (const int v: needers)
    needs[static_cast<std::size_t>(v)] = true;
  for (const int v: needers)
    for (const int e: m.bonds_of(v)) {
      if (m.bond(e).order != BondOrder::Aromatic)
        continue;
      const int w = m.bond(e).other(v);
      if (needs[static_cast<std::size_t>(w)])
        cand[static_cast<std::size_t>(v)].push_back(w);
    }

  std::vector<int> mate(static_cast<std::size_t>(m.num_atoms()), -1);
  std::vector<bool> used(static_cast<std::size_t>(m.num_atoms()), false);
  if (!match_pi(cand, mate, used, 0, needers))
    throw AromaticityError("aromatic system cannot be kekulized");

  for (int e = 0; e < m.num_bonds(); ++e) {
    Bond &b = m.bond(e);
    if (b.order != BondOrder::Aromatic)
      continue;
    b.order = (mate[static_cast<std::size_t>(b.a)] == b.b) ? BondOrder::Double
                                                           : BondOrder::Single;
  }
  return m;
}

namespace {

// Pi-electron contribution of `v` to ring R, or -1 when the atom makes
// the ring non-aromatic (saturated center, no lone pair to give).
int pi_contribution(const Molecule &m, int v, const std::vector<bool> &in_ring) {
  const Atom &a = m.atom(v);
  bool pi_in_ring = false;
  bool pi_elsewhere = false;
  for (const int e: m.bonds_of(v)) {
    const BondOrder o = m.bond(e).order;
    if (o == BondOrder::Triple)
      return -1;
    if (o != BondOrder::Double && o != BondOrder::Aromatic)
      continue;
    if (in_ring[static_cast<std::size_t>(m.bond(e).other(v))] &&
        in_ring[static_cast<std::size_t>(v)])
      pi_in_ring = true;
    else
      pi_elsewhere = true;
  }
  if (pi_in_ring)
    return 1;
  if (pi_elsewhere)
    return 0;  // exocyclic or other-ring pi: cross-conjugated, contributes none

  const int sigma = m.degree(v) + a.implicit_h;
  const std::string &el = a.element;
  if (el == "C") {
    if (a.charge == 1 && sigma == 3)
      return 0;  // tropylium-style empty orbital
    if (a.charge == -1 && sigma == 3)
      return 2;  // cyclopentadienide lone pair
    return -1;
  } else if (el == "N" || el == "P" || el == "As") {
    if (a.charge == 0 && sigma == 3)
      return 2;  // pyrrole-type
    if (a.charge == -1 && sigma == 2)
      return 2;
    return -1;
  } else if (el == "O" || el == "S" || el == "Se") {
    if (a.charge == 0 && sigma == 2)
      return 2;  // furan/thiophene-type
    return -1;
  } else if (el == "B") {
    if (a.charge == 0 && sigma <= 3)
      return 0;  // empty p orbital
    if (a.charge == -1 && sigma == 3)
      return 2;
    return -1;
  }
  return -1;
}

bool perceive_ring(Molecule &m, const std::vector<int> &ring) {
  std::vector<bool> in_ring(static_cast<std::size_t>(m.num_atoms()), false);
  for (const int v: ring) {
    if (!aromatic_capable(m.atom(v).element))
      return false;
    in_ring[static_cast<std::size_t>(v)] = true;
  }
  std::vector<int> ring_bonds;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const int e = m.bond_between(ring[i], ring[(i + 1) % ring.size()]);
    if (e < 0)
      return false;
    if (m.bond(e).order == BondOrder::Triple)
      return false;
    ring_bonds.push_back(e);
  }
  int pi = 0;
  for (const int v: ring) {
    const int c = pi_contribution(m, v, in_ring);
    if (c < 0)
      return false;
    pi += c;
  }
  if (pi % 4 != 2)
    return false;

  bool changed = false;
  for (const int e: ring_bonds) {
    if (m.bond(e).order != BondOrder::Aromatic) {
      m.bond(e).order = BondOrder::Aromatic;
      changed = true;
    }
  }
  for (const int v: ring) {
    if (!m.atom(v).aromatic) {
      m.atom(v).aromatic = true;
      changed = true;
    }
  }
  return changed;
}

void sanitize_stereo(Molecule &m) {
  const std::vector<int> classes = symmetry_classes(m);

  // Tetrahedral tags: need an sp3 center with 3-4 pairwise
  // distinguishable slots (implicit H counts as one slot).
  for (int v = 0; v < m.num_atoms(); ++v) {
    Atom &a = m.atom(v);
    if (a.chiral == Chirality::None)
      continue;
    bool keep = !a.aromatic && a.implicit_h <= 1;
    const int slots = m.degree(v) + a.implicit_h;
    keep = keep && (slots == 3 || slots == 4) && m.degree(v) >= 3;
    if (keep) {
      for (const int e: m.bonds_of(v))
        if (m.bond(e).order != BondOrder::Single)
          keep = false;
    }
    if (keep) {
      std::vector<int> keys;
      for (const int e: m.bonds_of(v)) {
        const int u = m.bond(e).other(v);
        const Atom &nb = m.atom(u);
        if (a.implicit_h == 1 && nb.element == "H" && nb.isotope == 0 &&
            nb.charge == 0 && m.degree(u) == 1)
          keep = false;  // explicit H degenerate with the implicit one
        keys.push_back(classes[static_cast<std::size_t>(u)]);
      }
      std::sort(keys.begin(), keys.end());
      if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        keep = false;
    }
    if (!keep)
      a.chiral = Chirality::None;
  }

  // Direction marks: meaningful only on single bonds.
  for (int e = 0; e < m.num_bonds(); ++e)
    if (m.bond(e).order != BondOrder::Single)
      m.bond(e).geometry = BondGeometry::None;

  // A cis/trans unit survives when both ends are marked consistently
  // and neither end has interchangeable substituents.
  std::vector<bool> keep_mark(static_cast<std::size_t>(m.num_bonds()), false);
  for (const StereoUnit &unit: stereo_units(m)) {
    const Bond &db = m.bond(unit.double_bond);
    bool ok = true;
    for (const int end: {db.a, db.b}) {
      if (m.degree(end) > 3) {
        ok = false;
        break;
      }
      std::vector<int> subs;
      for (const int e: m.bonds_of(end))
        if (e != unit.double_bond)
          subs.push_back(m.bond(e).other(end));
      if (subs.size() == 2 && classes[static_cast<std::size_t>(subs[0])] ==
                                  classes[static_cast<std::size_t>(subs[1])])
        ok = false;
    }
    if (!ok)
      continue;
    for (const auto &side: unit.ends)
      for (const auto &[e, sign]: side)
        keep_mark[static_cast<std::size_t>(e)] = true;
  }
  for (int e = 0; e < m.num_bonds(); ++e)
    if (!keep_mark[static_cast<std::size_t>(e)])
      m.bond(e).geometry = BondGeometry::None;
}

}  // namespace

Molecule normalize(const Molecule &in) {
  Molecule m = in;

  // Bare aromatic carbons in rings carry one hydrogen; seed it so the
  // kekule step sees the right sigma count.
  for (int v = 0; v < m.num_atoms(); ++v) {
    Atom &a = m.atom(v);
    if (a.aromatic && !a.h_explicit && a.implicit_h == 0 && a.element == "C" &&
        m.degree(v) == 2)
      a.implicit_h = 1;
  }

  m = kekulized(m);

  for (int v = 0; v < m.num_atoms(); ++v) {
    Atom &a = m.atom(v);
    int sum = 0;
    for (const int e: m.bonds_of(v))
      sum += order_value(m.bond(e).order);
    if (!a.h_explicit) {
      const int dv = default_valence(a.element, a.charge, sum);
      if (dv < 0) {
        if (!allowed_valences(a.element, a.charge).empty())
          throw ValenceError("atom " + std::to_string(v) + " (" + a.element +
                             ") bond order sum " + std::to_string(sum) +
                             " exceeds allowed valence");
        a.implicit_h = 0;
      } else {
        a.implicit_h = dv - sum;
      }
    }
    const std::vector<int> allowed = allowed_valences(a.element, a.charge);
    if (!allowed.empty() && sum + a.implicit_h > allowed.back())
      throw ValenceError("atom " + std::to_string(v) + " (" + a.element +
                         ") valence " + std::to_string(sum + a.implicit_h) +
                         " exceeds maximum " + std::to_string(allowed.back()));
  }

  // Aromaticity is re-perceived from scratch on the kekule form; rings
  // are processed to a fixpoint so fused systems light up ring by ring.
  for (int v = 0; v < m.num_atoms(); ++v)
    m.atom(v).aromatic = false;
  const std::vector<std::vector<int>> rings = relevant_rings(m);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto &ring: rings)
      changed = perceive_ring(m, ring) || changed;
  }

  sanitize_stereo(m);
  return m;
}

Molecule strip_stereo(const Molecule &in) {
  Molecule m = in;
  for (int v = 0; v < m.num_atoms(); ++v)
    m.atom(v).chiral = Chirality::None;
  for (int e = 0; e < m.num_bonds(); ++e)
    m.bond(e).geometry = BondGeometry::None;
  return m;
}

bool has_stereo(const Molecule &m) {
  for (int v = 0; v < m.num_atoms(); ++v)
    if (m.atom(v).chiral != Chirality::None)
      return true;
  return !stereo_units(m).empty();
}

namespace {

std::vector<int> dense_rank(std::vector<std::int64_t> keys) {
  std::vector<std::int64_t> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> ranks(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    ranks[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(),
                                                 keys[i]) -
                                sorted.begin());
  return ranks;
}

int count_classes(const std::vector<int> &ranks) {
  return ranks.empty() ? 0 : *std::max_element(ranks.begin(), ranks.end()) + 1;
}

// One refinement sweep: new color = (old color, sorted multiset of
// (bond order, neighbor color)). Runs until the class count stops
// growing.
std::vector<int> refine(const Molecule &m, std::vector<int> colors) {
  const int n = m.num_atoms();
  int classes = count_classes(colors);
  while (true) {
    std::vector<std::vector<std::int64_t>> keys(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto &k = keys[static_cast<std::size_t>(v)];
      k.push_back(colors[static_cast<std::size_t>(v)]);
      std::vector<std::int64_t> nb;
      for (const int e: m.bonds_of(v)) {
        const int u = m.bond(e).other(v);
        nb.push_back(static_cast<std::int64_t>(m.bond(e).order) * (n + 1) +
                     colors[static_cast<std::size_t>(u)]);
      }
      std::sort(nb.begin(), nb.end());
      k.insert(k.end(), nb.begin(), nb.end());
    }
    // Dense-rank composite keys.
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      idx[static_cast<std::size_t>(v)] = v;
    std::sort(idx.begin(), idx.end(), [&keys](int a, int b) {
      return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)];
    });
    std::vector<int> next(static_cast<std::size_t>(n), 0);
    int rank = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (i > 0 && keys[static_cast<std::size_t>(idx[i])] !=
                       keys[static_cast<std::size_t>(idx[i - 1])])
        ++rank;
      next[static_cast<std::size_t>(idx[i])] = rank;
    }
    const int next_classes = count_classes(next);
    if (next_classes == classes)
      return next;
    colors = std::move(next);
    classes = next_classes;
  }
}

std::vector<int> initial_colors(const Molecule &m) {
  const int n = m.num_atoms();
  std::vector<std::int64_t> keys(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const Atom &a = m.atom(v);
    std::int64_t k = atomic_number(a.element);
    k = k * 16 + (m.degree(v) & 0xf);
    k = k * 64 + (a.charge + 32);
    k = k * 16 + (a.implicit_h & 0xf);
    k = k * 2 + (a.aromatic ? 1 : 0);
    k = k * 512 + (a.isotope & 0x1ff);
    keys[static_cast<std::size_t>(v)] = k;
  }
  return dense_rank(std::move(keys));
}

}  // namespace

std::vector<int> symmetry_classes(const Molecule &m) {
  if (m.num_atoms() == 0)
    return {};
  return refine(m, initial_colors(m));
}

std::vector<int> canonical_ranks(const Molecule &m) {
  const int n = m.num_atoms();
  if (n == 0)
    return {};
  std::vector<int> colors = refine(m, initial_colors(m));
  while (count_classes(colors) < n) {
    // Lowest tied class, lowest atom index inside it; double the ranks
    // and pull the chosen atom one step ahead, then re-refine.
    std::vector<int> population(static_cast<std::size_t>(n), 0);
    for (const int c: colors)
      ++population[static_cast<std::size_t>(c)];
    int tied_class = -1;
    for (int c = 0; c < n; ++c)
      if (population[static_cast<std::size_t>(c)] > 1) {
        tied_class = c;
        break;
      }
    int chosen = -1;
    for (int v = 0; v < n; ++v)
      if (colors[static_cast<std::size_t>(v)] == tied_class) {
        chosen = v;
        break;
      }
    std::vector<std::int64_t> keys(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      keys[static_cast<std::size_t>(v)] =
          2LL * colors[static_cast<std::size_t>(v)] - (v == chosen ? 1 : 0);
    colors = refine(m, dense_rank(std::move(keys)));
  }
  return colors;
}

namespace {

// Per-atom invariant used both for the multiset prefilter and for the
// candidate lists of the backtracking search.
struct AtomKey {
  int z;
  int charge;
  int isotope;
  int implicit_h;
  bool aromatic;
  int degree;
  bool chiral;
  std::vector<int> incident_orders;

  auto tie() const {
    return std::tie(z, charge, isotope, implicit_h, aromatic, degree, chiral,
                    incident_orders);
  }
  bool operator==(const AtomKey &o) const { return tie() == o.tie(); }
  bool operator<(const AtomKey &o) const { return tie() < o.tie(); }
};

AtomKey atom_key(const Molecule &m, int v) {
  AtomKey k;
  const Atom &a = m.atom(v);
  k.z = atomic_number(a.element);
  k.charge = a.charge;
  k.isotope = a.isotope;
  k.implicit_h = a.implicit_h;
  k.aromatic = a.aromatic;
  k.degree = m.degree(v);
  k.chiral = a.chiral != Chirality::None;
  for (const int e: m.bonds_of(v))
    k.incident_orders.push_back(static_cast<int>(m.bond(e).order));
  std::sort(k.incident_orders.begin(), k.incident_orders.end());
  return k;
}

// Side sign of substituent s toward double-bond end u, completed via
// the sibling mark when s itself is unmarked. 0 = undetermined.
int side_into(const Molecule &m, int db, int u, int s) {
  const int e = m.bond_between(s, u);
  if (e >= 0 && m.bond(e).order == BondOrder::Single) {
    const int d = bond_direction(m.bond(e), s);
    if (d != 0)
      return d;
  }
  for (const int e2: m.bonds_of(u)) {
    if (e2 == db || m.bond(e2).order != BondOrder::Single)
      continue;
    const int s2 = m.bond(e2).other(u);
    if (s2 == s)
      continue;
    const int d2 = bond_direction(m.bond(e2), s2);
    if (d2 != 0)
      return -d2;
  }
  return 0;
}

struct IsoSearch {
  const Molecule &a;
  const Molecule &b;
  std::vector<int> order;                // a-atoms in assignment order
  std::vector<std::vector<int>> cands;   // candidate b-atoms per a-atom
  std::vector<int> map_ab;               // a->b
  std::vector<bool> used_b;
  std::vector<StereoUnit> units_a;
  std::vector<StereoUnit> units_b;
  std::vector<int> unit_of_bond_b;       // b bond -> unit idx or -1

  bool stereo_consistent() const {
    for (int v = 0; v < a.num_atoms(); ++v) {
      if (a.atom(v).chiral == Chirality::None)
        continue;
      const int w = map_ab[static_cast<std::size_t>(v)];
      std::vector<int> sa = chiral_reference_sequence(a, v);
      for (int &x: sa)
        if (x != kVirtualHydrogen)
          x = map_ab[static_cast<std::size_t>(x)];
      const std::vector<int> sb = chiral_reference_sequence(b, w);
      const int parity = permutation_parity(sa, sb);
      if (parity < 0)
        return false;
      const bool same_tag = a.atom(v).chiral == b.atom(w).chiral;
      if (same_tag != (parity == 0))
        return false;
    }
    for (const StereoUnit &ua: units_a) {
      const Bond &dba = a.bond(ua.double_bond);
      const int u2 = map_ab[static_cast<std::size_t>(dba.a)];
      const int v2 = map_ab[static_cast<std::size_t>(dba.b)];
      const int eb = b.bond_between(u2, v2);
      if (eb < 0 || unit_of_bond_b[static_cast<std::size_t>(eb)] < 0)
        return false;
      const int sa = a.bond(ua.ends[0][0].first).other(dba.a);
      const int ta = a.bond(ua.ends[1][0].first).other(dba.b);
      const int rho_a = ua.ends[0][0].second * ua.ends[1][0].second;
      const int rho_b = side_into(b, eb, u2, map_ab[static_cast<std::size_t>(sa)]) *
                        side_into(b, eb, v2, map_ab[static_cast<std::size_t>(ta)]);
      if (rho_b == 0 || rho_a != rho_b)
        return false;
    }
    return true;
  }

  bool extend(std::size_t i) {
    if (i == order.size())
      return stereo_consistent();
    const int v = order[i];
    for (const int w: cands[static_cast<std::size_t>(v)]) {
      if (used_b[static_cast<std::size_t>(w)])
        continue;
      bool ok = true;
      for (const int e: a.bonds_of(v)) {
        const int u = a.bond(e).other(v);
        const int mu = map_ab[static_cast<std::size_t>(u)];
        if (mu < 0)
          continue;
        const int eb = b.bond_between(mu, w);
        if (eb < 0 || b.bond(eb).order != a.bond(e).order) {
          ok = false;
          break;
        }
      }
      if (!ok)
        continue;
      map_ab[static_cast<std::size_t>(v)] = w;
      used_b[static_cast<std::size_t>(w)] = true;
      if (extend(i + 1))
        return true;
      map_ab[static_cast<std::size_t>(v)] = -1;
      used_b[static_cast<std::size_t>(w)] = false;
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const Molecule &a, const Molecule &b, int atom_cap) {
  if (a.num_atoms() > atom_cap || b.num_atoms() > atom_cap)
    throw SizeLimitError("isomorphism oracle capped at " +
                         std::to_string(atom_cap) + " atoms");
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  if (a.num_atoms() == 0)
    return true;

  std::vector<AtomKey> keys_a, keys_b;
  for (int v = 0; v < a.num_atoms(); ++v)
    keys_a.push_back(atom_key(a, v));
  for (int v = 0; v < b.num_atoms(); ++v)
    keys_b.push_back(atom_key(b, v));
  {
    std::vector<AtomKey> sa = keys_a, sb = keys_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb)
      return false;
  }

  IsoSearch search{a, b};
  search.map_ab.assign(static_cast<std::size_t>(a.num_atoms()), -1);
  search.used_b.assign(static_cast<std::size_t>(b.num_atoms()), false);
  search.units_a = stereo_units(a);
  search.units_b = stereo_units(b);
  if (search.units_a.size() != search.units_b.size())
    return false;
  search.unit_of_bond_b.assign(static_cast<std::size_t>(b.num_bonds()), -1);
  for (std::size_t i = 0; i < search.units_b.size(); ++i)
    search.unit_of_bond_b[static_cast<std::size_t>(
        search.units_b[i].double_bond)] = static_cast<int>(i);

  search.cands.resize(static_cast<std::size_t>(a.num_atoms()));
  for (int v = 0; v < a.num_atoms(); ++v)
    for (int w = 0; w < b.num_atoms(); ++w)
      if (keys_a[static_cast<std::size_t>(v)] == keys_b[static_cast<std::size_t>(w)])
        search.cands[static_cast<std::size_t>(v)].push_back(w);

  // Assignment order: BFS fragment by fragment, rarest candidate list
  // first, so adjacency constraints bite early.
  std::vector<bool> queued(static_cast<std::size_t>(a.num_atoms()), false);
  for (;;) {
    int start = -1;
    std::size_t best = 0;
    for (int v = 0; v < a.num_atoms(); ++v) {
      if (queued[static_cast<std::size_t>(v)])
        continue;
      const std::size_t c = search.cands[static_cast<std::size_t>(v)].size();
      if (start < 0 || c < best) {
        start = v;
        best = c;
      }
    }
    if (start < 0)
      break;
    std::deque<int> queue{start};
    queued[static_cast<std::size_t>(start)] = true;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      search.order.push_back(v);
      for (const int e: a.bonds_of(v)) {
        const int u = a.bond(e).other(v);
        if (!queued[static_cast<std::size_t>(u)]) {
          queued[static_cast<std::size_t>(u)] = true;
          queue.push_back(u);
        }
      }
    }
  }

  return search.extend(0);
}

}  // namespace molseek
