//
// Project MolSeek - Copyright 2026 MolSeek Contributors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molseek/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "molseek/elements.hpp"
#include "molseek/errors.hpp"

namespace molseek {

namespace {

bool aromatic_organic_letter(char c) {
  return c == 'b' || c == 'c' || c == 'n' || c == 'o' || c == 'p' || c == 's';
}

struct OpenRing {
  int atom = -1;
  char bond_char = 0;
  int open_id = -1;
};

// Slot entries record the textual neighbor order per atom, which is
// what a chiral tag written in the string refers to. Ring closures get
// a placeholder until the matching digit arrives.
constexpr long long kSlotVirtualH = -1;
long long ring_placeholder(int open_id) { return -2 - open_id; }

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  Molecule mol;
  std::vector<std::vector<long long>> slots;
  std::vector<bool> has_parent;
  std::map<int, OpenRing> open_rings;  // digit -> entry
  int next_open_id = 0;

  [[noreturn]] void fail(const std::string &msg) const {
    throw SyntaxError(msg + " (column " + std::to_string(pos + 1) + ")");
  }

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  char take() { return text[pos++]; }

  int read_number(int max_digits) {
    int value = 0;
    int digits = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek())) &&
           digits < max_digits) {
      value = value * 10 + (take() - '0');
      ++digits;
    }
    return digits == 0 ? -1 : value;
  }

  int add_parsed_atom(Atom atom, bool bracket) {
    atom.h_explicit = bracket;
    const int idx = mol.add_atom(std::move(atom));
    slots.emplace_back();
    has_parent.push_back(false);
    return idx;
  }

  // [isotope? symbol chiral? Hcount? charge? :class?]
  int parse_bracket_atom() {
    ++pos;  // '['
    Atom atom;
    const int isotope = read_number(3);
    if (isotope == 0)
      fail("isotope must be positive");
    atom.isotope = isotope < 0 ? 0 : isotope;

    if (done())
      fail("unterminated bracket atom");
    char c = peek();
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::string sym(1, take());
      if (!done() && std::islower(static_cast<unsigned char>(peek()))) {
        const std::string two = sym + peek();
        if (atomic_number(two) > 0) {
          sym = two;
          ++pos;
        }
      }
      if (atomic_number(sym) == 0)
        fail("unknown element '" + sym + "'");
      atom.element = sym;
    } else if (std::islower(static_cast<unsigned char>(c))) {
      std::string sym(1, take());
      if ((sym == "s" && peek() == 'e') || (sym == "a" && peek() == 's')) {
        sym += take();
        atom.element = sym == "se" ? "Se" : "As";
        atom.aromatic = true;
      } else if (aromatic_organic_letter(sym[0])) {
        atom.element = std::string(1, static_cast<char>(std::toupper(sym[0])));
        atom.aromatic = true;
      } else {
        fail("unknown aromatic symbol '" + sym + "'");
      }
    } else {
      fail("expected element symbol in bracket atom");
    }

    if (peek() == '@') {
      ++pos;
      if (peek() == '@') {
        ++pos;
        atom.chiral = Chirality::Clockwise;
      } else {
        atom.chiral = Chirality::CounterClockwise;
      }
      if (!done() && std::isupper(static_cast<unsigned char>(peek())) &&
          peek() != 'H')
        fail("extended chirality classes are not supported");
    }

    if (peek() == 'H') {
      ++pos;
      const int count = read_number(2);
      atom.implicit_h = count < 0 ? 1 : count;
    }

    if (peek() == '+' || peek() == '-') {
      const char sign_char = take();
      const int sign = sign_char == '+' ? 1 : -1;
      int magnitude = 1;
      const int number = read_number(2);
      if (number >= 0) {
        magnitude = number;
      } else {
        while (peek() == sign_char) {
          ++pos;
          ++magnitude;
        }
      }
      if (magnitude > 15)
        fail("unreasonable charge magnitude");
      atom.charge = sign * magnitude;
    }

    if (peek() == ':') {
      ++pos;
      if (read_number(7) < 0)
        fail("atom class expects digits");
    }

    if (peek() != ']')
      fail("expected ']'");
    ++pos;
    return add_parsed_atom(std::move(atom), true);
  }

  int parse_organic_atom() {
    Atom atom;
    const char c = peek();
    if (c == 'C' && pos + 1 < text.size() && text[pos + 1] == 'l') {
      pos += 2;
      atom.element = "Cl";
    } else if (c == 'B' && pos + 1 < text.size() && text[pos + 1] == 'r') {
      pos += 2;
      atom.element = "Br";
    } else if (c == 'B' || c == 'C' || c == 'N' || c == 'O' || c == 'P' ||
               c == 'S' || c == 'F' || c == 'I') {
      ++pos;
      atom.element = std::string(1, c);
    } else if (aromatic_organic_letter(c)) {
      ++pos;
      atom.element = std::string(1, static_cast<char>(std::toupper(c)));
      atom.aromatic = true;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    return add_parsed_atom(std::move(atom), false);
  }

  // Resolves the (open-side, close-side) symbol pair of a ring bond to
  // an effective symbol read in open->close direction.
  char resolve_ring_chars(char c1, char c2) {
    auto mirrored = [](char c) {
      if (c == '/')
        return '\\';
      if (c == '\\')
        return '/';
      return c;
    };
    if (c1 != 0 && c2 != 0) {
      const bool dir1 = c1 == '/' || c1 == '\\';
      const bool dir2 = c2 == '/' || c2 == '\\';
      if (dir1 && dir2) {
        if (c1 == c2)
          fail("conflicting ring-closure bond direction");
        return c1;
      }
      if (c1 != c2)
        fail("conflicting ring-closure bond order");
      return c1;
    }
    return c1 != 0 ? c1 : mirrored(c2);
  }

  void add_parsed_bond(int from, int to, char symbol) {
    BondOrder order = BondOrder::Single;
    BondGeometry geometry = BondGeometry::None;
    switch (symbol) {
    case 0:
      order = (mol.atom(from).aromatic && mol.atom(to).aromatic)
                  ? BondOrder::Aromatic
                  : BondOrder::Single;
      break;
    case '-':
      break;
    case '=':
      order = BondOrder::Double;
      break;
    case '#':
      order = BondOrder::Triple;
      break;
    case ':':
      order = BondOrder::Aromatic;
      break;
    case '/':
      geometry = BondGeometry::Up;
      break;
    case '\\':
      geometry = BondGeometry::Down;
      break;
    default:
      fail("bad bond symbol");
    }
    mol.add_bond(from, to, order, geometry);
  }

  void close_or_open_ring(int digit, int atom, char bond_char) {
    const auto it = open_rings.find(digit);
    if (it == open_rings.end()) {
      OpenRing entry{atom, bond_char, next_open_id++};
      open_rings.emplace(digit, entry);
      slots[static_cast<std::size_t>(atom)].push_back(
          ring_placeholder(entry.open_id));
      return;
    }
    const OpenRing entry = it->second;
    open_rings.erase(it);
    if (entry.atom == atom)
      fail("ring closure bonds an atom to itself");
    const char effective = resolve_ring_chars(entry.bond_char, bond_char);
    add_parsed_bond(entry.atom, atom, effective);
    slots[static_cast<std::size_t>(atom)].push_back(entry.atom);
    auto &open_slots = slots[static_cast<std::size_t>(entry.atom)];
    for (auto &s: open_slots)
      if (s == ring_placeholder(entry.open_id))
        s = atom;
  }

  Molecule run() {
    if (text.empty())
      fail("empty SMILES");

    int prev = -1;
    char pending = 0;
    std::vector<int> branch_stack;
    bool fragment_has_atom = false;

    while (!done()) {
      const char c = peek();
      if (c == '[' || std::isalpha(static_cast<unsigned char>(c))) {
        const int atom = c == '[' ? parse_bracket_atom() : parse_organic_atom();
        if (prev >= 0) {
          add_parsed_bond(prev, atom, pending);
          slots[static_cast<std::size_t>(prev)].push_back(atom);
          slots[static_cast<std::size_t>(atom)].push_back(prev);
          has_parent[static_cast<std::size_t>(atom)] = true;
        } else if (pending != 0) {
          fail("bond symbol with no preceding atom");
        }
        pending = 0;
        prev = atom;
        fragment_has_atom = true;
      } else if (c == '-' || c == '=' || c == '#' || c == ':' || c == '/' ||
                 c == '\\') {
        if (pending != 0)
          fail("two consecutive bond symbols");
        if (prev < 0)
          fail("bond symbol with no preceding atom");
        pending = take();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        if (prev < 0)
          fail("ring closure with no preceding atom");
        int digit = -1;
        if (c == '%') {
          ++pos;
          if (pos + 1 >= text.size() ||
              !std::isdigit(static_cast<unsigned char>(text[pos])) ||
              !std::isdigit(static_cast<unsigned char>(text[pos + 1])))
            fail("'%' ring closure expects two digits");
          digit = (take() - '0') * 10;
          digit += take() - '0';
        } else {
          digit = take() - '0';
        }
        close_or_open_ring(digit, prev, pending);
        pending = 0;
      } else if (c == '(') {
        if (prev < 0)
          fail("branch with no preceding atom");
        if (pending != 0)
          fail("bond symbol before '('");
        branch_stack.push_back(prev);
        ++pos;
      } else if (c == ')') {
        if (branch_stack.empty())
          throw UnclosedBranchError("unmatched ')'");
        if (pending != 0)
          fail("dangling bond symbol before ')'");
        prev = branch_stack.back();
        branch_stack.pop_back();
        ++pos;
      } else if (c == '.') {
        if (!branch_stack.empty())
          fail("dot fragment separator inside a branch");
        if (pending != 0)
          fail("dangling bond symbol before '.'");
        if (!fragment_has_atom)
          fail("empty fragment");
        prev = -1;
        fragment_has_atom = false;
        ++pos;
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }

    if (pending != 0)
      throw SyntaxError("dangling bond symbol at end of input");
    if (!branch_stack.empty())
      throw UnclosedBranchError("unclosed branch at end of input");
    if (!open_rings.empty()) {
      std::string digits;
      for (const auto &[d, entry]: open_rings)
        digits += (digits.empty() ? "" : ", ") + std::to_string(d);
      throw UnclosedRingError("unclosed ring closure " + digits);
    }
    if (!fragment_has_atom)
      throw SyntaxError("empty fragment at end of input");

    validate_directions();
    assign_chirality();
    return normalize(mol);
  }

  // Two marks claiming the same side of a double-bond end contradict
  // each other.
  void validate_directions() {
    for (int v = 0; v < mol.num_atoms(); ++v) {
      bool has_double = false;
      for (const int e: mol.bonds_of(v))
        if (mol.bond(e).order == BondOrder::Double)
          has_double = true;
      if (!has_double)
        continue;
      int up = 0, down = 0;
      for (const int e: mol.bonds_of(v)) {
        if (mol.bond(e).order != BondOrder::Single)
          continue;
        const int d = bond_direction(mol.bond(e), mol.bond(e).other(v));
        if (d > 0)
          ++up;
        else if (d < 0)
          ++down;
      }
      if (up > 1 || down > 1)
        throw SyntaxError("conflicting cis/trans marks around atom " +
                          std::to_string(v));
    }
  }

  // Convert written tag (over textual slot order) to the internal
  // convention (bond-insertion order, implicit H last).
  void assign_chirality() {
    for (int v = 0; v < mol.num_atoms(); ++v) {
      Atom &a = mol.atom(v);
      if (a.chiral == Chirality::None)
        continue;
      if (a.implicit_h > 1) {
        a.chiral = Chirality::None;
        continue;
      }
      std::vector<int> written;
      for (const long long s: slots[static_cast<std::size_t>(v)])
        written.push_back(static_cast<int>(s));
      if (a.implicit_h == 1) {
        const std::size_t at = has_parent[static_cast<std::size_t>(v)] ? 1 : 0;
        written.insert(written.begin() + static_cast<std::ptrdiff_t>(
                                              std::min(at, written.size())),
                       kVirtualHydrogen);
      }
      const std::vector<int> internal = chiral_reference_sequence(mol, v);
      const int parity = permutation_parity(written, internal);
      if (parity < 0) {
        a.chiral = Chirality::None;
      } else if (parity == 1) {
        a.chiral = a.chiral == Chirality::Clockwise ? Chirality::CounterClockwise
                                                    : Chirality::Clockwise;
      }
    }
  }
};

}  // namespace

Molecule parse_smiles(std::string_view text) {
  Parser parser;
  parser.text = text;
  return parser.run();
}

namespace {

// ---- writer ----

// Implicit H count the parser will infer for a bare organic-subset
// atom, simulating kekulization for aromatic ones.
int predicted_bare_h(const Molecule &m, int v) {
  const Atom &a = m.atom(v);
  int sum = 0;
  if (a.aromatic) {
    int pi = 0;
    const int deg = m.degree(v);
    if (a.element == "C")
      pi = 1;
    else if ((a.element == "N" || a.element == "P") && deg == 2)
      pi = 1;
    sum = deg + pi;
  } else {
    for (const int e: m.bonds_of(v)) {
      switch (m.bond(e).order) {
      case BondOrder::Single:
        sum += 1;
        break;
      case BondOrder::Double:
        sum += 2;
        break;
      case BondOrder::Triple:
        sum += 3;
        break;
      case BondOrder::Aromatic:
        return -1;  // aromatic bond on an aliphatic atom: bracket it
      }
    }
  }
  const int dv = default_valence(a.element, 0, sum);
  return dv < 0 ? -1 : dv - sum;
}

// Union-find with parity over direction-marked single bonds. Two bonds
// in one cis/trans cluster carry a fixed relative orientation; the
// absolute gauge per cluster is chosen at emission time.
struct DirectionClusters {
  std::vector<int> parent;       // per bond; -1 = not participating
  std::vector<int> parity;       // orientation relative to parent
  std::vector<int> gauge;        // root value, 0 until assigned

  explicit DirectionClusters(const Molecule &m)
      : parent(static_cast<std::size_t>(m.num_bonds()), -1),
        parity(static_cast<std::size_t>(m.num_bonds()), 0),
        gauge(static_cast<std::size_t>(m.num_bonds()), 0) {
    const std::vector<StereoUnit> units = stereo_units(m);
    auto sgn = [&m](int e, int end) {
      return m.bond(e).other(end) == m.bond(e).a ? 1 : -1;
    };
    for (const StereoUnit &unit: units) {
      const Bond &db = m.bond(unit.double_bond);
      const int ends[2] = {db.a, db.b};
      int rep[2] = {-1, -1};
      int rep_sgn[2] = {0, 0};
      for (int side = 0; side < 2; ++side) {
        std::vector<int> subs;
        for (const int e: m.bonds_of(ends[side]))
          if (e != unit.double_bond && m.bond(e).order == BondOrder::Single)
            subs.push_back(e);
        for (const int e: subs)
          ensure(e);
        for (std::size_t i = 1; i < subs.size(); ++i) {
          // opposite sides of the same end
          const int diff =
              sgn(subs[0], ends[side]) * sgn(subs[i], ends[side]) == 1 ? 1 : 0;
          unite(subs[0], subs[i], diff);
        }
        if (!subs.empty()) {
          rep[side] = subs[0];
          rep_sgn[side] = sgn(subs[0], ends[side]);
        }
      }
      if (rep[0] >= 0 && rep[1] >= 0) {
        const int rho = unit.ends[0][0].second * unit.ends[1][0].second;
        const int diff = rho * rep_sgn[0] * rep_sgn[1] == -1 ? 1 : 0;
        unite(rep[0], rep[1], diff);
      }
    }
  }

  void ensure(int e) {
    if (parent[static_cast<std::size_t>(e)] < 0) {
      parent[static_cast<std::size_t>(e)] = e;
      parity[static_cast<std::size_t>(e)] = 0;
    }
  }

  bool participating(int e) const {
    return parent[static_cast<std::size_t>(e)] >= 0;
  }

  std::pair<int, int> find(int e) {  // (root, parity to root)
    int p = 0;
    int x = e;
    while (parent[static_cast<std::size_t>(x)] != x) {
      p ^= parity[static_cast<std::size_t>(x)];
      x = parent[static_cast<std::size_t>(x)];
    }
    return {x, p};
  }

  void unite(int a, int b, int diff) {
    const auto [ra, pa] = find(a);
    const auto [rb, pb] = find(b);
    if (ra == rb)
      return;  // consistent by construction on sanitized input
    parent[static_cast<std::size_t>(rb)] = ra;
    parity[static_cast<std::size_t>(rb)] = pa ^ pb ^ diff;
  }

  // Orientation value V = direction read a->b; fixes the cluster gauge
  // on first use so the first emitted mark is '/'.
  int orientation(int e, int preferred) {
    const auto [root, p] = find(e);
    if (gauge[static_cast<std::size_t>(root)] == 0)
      gauge[static_cast<std::size_t>(root)] = p == 0 ? preferred : -preferred;
    const int v = gauge[static_cast<std::size_t>(root)];
    return p == 0 ? v : -v;
  }
};

struct Writer {
  const Molecule &m;
  const std::vector<int> &prio;
  DirectionClusters dirs;

  std::vector<int> visit_order;
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> rings_at;  // ring bond indices per atom
  std::vector<int> parent_of;
  std::vector<int> parent_bond_of;
  std::vector<int> ring_digit;  // per bond, digit currently assigned
  std::vector<bool> digit_used;
  int next_visit = 0;
  std::string out;

  Writer(const Molecule &mol, const std::vector<int> &priorities)
      : m(mol), prio(priorities), dirs(mol),
        visit_order(static_cast<std::size_t>(mol.num_atoms()), -1),
        children(static_cast<std::size_t>(mol.num_atoms())),
        rings_at(static_cast<std::size_t>(mol.num_atoms())),
        parent_of(static_cast<std::size_t>(mol.num_atoms()), -1),
        parent_bond_of(static_cast<std::size_t>(mol.num_atoms()), -1),
        ring_digit(static_cast<std::size_t>(mol.num_bonds()), -1),
        digit_used(100, false) { }

  std::vector<int> sorted_bonds(int v) const {
    std::vector<int> bonds = m.bonds_of(v);
    std::stable_sort(bonds.begin(), bonds.end(), [&](int e1, int e2) {
      return prio[static_cast<std::size_t>(m.bond(e1).other(v))] <
             prio[static_cast<std::size_t>(m.bond(e2).other(v))];
    });
    return bonds;
  }

  void survey(int root) {
    std::vector<bool> bond_seen(static_cast<std::size_t>(m.num_bonds()), false);
    auto dfs = [&](auto &&self, int v) -> void {
      visit_order[static_cast<std::size_t>(v)] = next_visit++;
      for (const int e: sorted_bonds(v)) {
        if (bond_seen[static_cast<std::size_t>(e)])
          continue;
        const int u = m.bond(e).other(v);
        if (visit_order[static_cast<std::size_t>(u)] < 0) {
          bond_seen[static_cast<std::size_t>(e)] = true;
          parent_of[static_cast<std::size_t>(u)] = v;
          parent_bond_of[static_cast<std::size_t>(u)] = e;
          children[static_cast<std::size_t>(v)].push_back(u);
          self(self, u);
        } else {
          bond_seen[static_cast<std::size_t>(e)] = true;
          // ring bond; record at both ends in discovery order
          rings_at[static_cast<std::size_t>(u)].push_back(e);
          rings_at[static_cast<std::size_t>(v)].push_back(e);
        }
      }
    };
    dfs(dfs, root);
  }

  int alloc_digit(int e) {
    for (int d = 1; d < 100; ++d)
      if (!digit_used[static_cast<std::size_t>(d)]) {
        digit_used[static_cast<std::size_t>(d)] = true;
        ring_digit[static_cast<std::size_t>(e)] = d;
        return d;
      }
    throw UnsupportedFeatureError("more than 99 simultaneously open rings");
  }

  void append_digit(int d) {
    if (d >= 10)
      out += '%';
    out += std::to_string(d);
  }

  // Bond symbol when writing bond e in direction from -> to.
  std::string bond_token(int e, int from, int to) {
    const Bond &b = m.bond(e);
    if (b.order == BondOrder::Single && dirs.participating(e)) {
      const int preferred = from == b.a ? 1 : -1;
      const int v = dirs.orientation(e, preferred);
      const int d = from == b.a ? v : -v;
      return d > 0 ? "/" : "\\";
    }
    switch (b.order) {
    case BondOrder::Single:
      return (m.atom(from).aromatic && m.atom(to).aromatic) ? "-" : "";
    case BondOrder::Double:
      return "=";
    case BondOrder::Triple:
      return "#";
    case BondOrder::Aromatic:
      return (m.atom(from).aromatic && m.atom(to).aromatic) ? "" : ":";
    }
    return "";
  }

  void append_atom(int v) {
    const Atom &a = m.atom(v);
    if (atomic_number(a.element) == 0)
      throw UnsupportedFeatureError("unknown element '" + a.element + "'");

    // Slot order as written: parent, implicit H, ring partners, children.
    Chirality emitted = a.chiral;
    if (a.chiral != Chirality::None) {
      std::vector<int> written;
      if (parent_of[static_cast<std::size_t>(v)] >= 0)
        written.push_back(parent_of[static_cast<std::size_t>(v)]);
      if (a.implicit_h == 1)
        written.push_back(kVirtualHydrogen);
      for (const int e: rings_at[static_cast<std::size_t>(v)])
        written.push_back(m.bond(e).other(v));
      for (const int u: children[static_cast<std::size_t>(v)])
        written.push_back(u);
      const int parity =
          permutation_parity(chiral_reference_sequence(m, v), written);
      if (parity < 0)
        emitted = Chirality::None;
      else if (parity == 1)
        emitted = a.chiral == Chirality::Clockwise ? Chirality::CounterClockwise
                                                   : Chirality::Clockwise;
    }

    const bool lowercase_ok =
        a.aromatic &&
        (a.element == "B" || a.element == "C" || a.element == "N" ||
         a.element == "O" || a.element == "P" || a.element == "S");
    const bool bare_symbol_ok = a.aromatic ? lowercase_ok
                                           : is_organic_subset(a.element);
    const bool bare = bare_symbol_ok && a.charge == 0 && a.isotope == 0 &&
                      emitted == Chirality::None &&
                      a.implicit_h == predicted_bare_h(m, v);

    std::string sym = a.element;
    if (a.aromatic)
      for (char &c: sym)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

    if (bare) {
      out += sym;
      return;
    }
    out += '[';
    if (a.isotope > 0)
      out += std::to_string(a.isotope);
    out += sym;
    if (emitted == Chirality::CounterClockwise)
      out += '@';
    else if (emitted == Chirality::Clockwise)
      out += "@@";
    if (a.implicit_h == 1)
      out += 'H';
    else if (a.implicit_h > 1)
      out += 'H' + std::to_string(a.implicit_h);
    if (a.charge != 0) {
      out += a.charge > 0 ? '+' : '-';
      const int mag = a.charge > 0 ? a.charge : -a.charge;
      if (mag > 1)
        out += std::to_string(mag);
    }
    out += ']';
  }

  void emit(int v) {
    append_atom(v);
    for (const int e: rings_at[static_cast<std::size_t>(v)]) {
      if (ring_digit[static_cast<std::size_t>(e)] < 0) {
        // opening side: bond symbol goes here
        out += bond_token(e, v, m.bond(e).other(v));
        append_digit(alloc_digit(e));
      } else {
        const int d = ring_digit[static_cast<std::size_t>(e)];
        append_digit(d);
        digit_used[static_cast<std::size_t>(d)] = false;
        ring_digit[static_cast<std::size_t>(e)] = -1;
      }
    }
    const auto &kids = children[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const int u = kids[i];
      const int e = parent_bond_of[static_cast<std::size_t>(u)];
      const bool last = i + 1 == kids.size();
      if (!last)
        out += '(';
      out += bond_token(e, v, u);
      emit(u);
      if (!last)
        out += ')';
    }
  }
};

std::string write_fragments(const Molecule &m, const std::vector<int> &prio,
                            bool sort_fragments) {
  std::vector<std::string> parts;
  Writer writer(m, prio);
  for (const auto &frag: m.fragments()) {
    int start = frag[0];
    for (const int v: frag)
      if (prio[static_cast<std::size_t>(v)] < prio[static_cast<std::size_t>(start)])
        start = v;
    writer.survey(start);
    writer.out.clear();
    writer.emit(start);
    parts.push_back(writer.out);
  }
  if (sort_fragments)
    std::sort(parts.begin(), parts.end());
  std::string joined;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0)
      joined += '.';
    joined += parts[i];
  }
  return joined;
}

}  // namespace

std::string write_smiles(const Molecule &m) {
  std::vector<int> prio(static_cast<std::size_t>(m.num_atoms()));
  std::iota(prio.begin(), prio.end(), 0);
  return write_fragments(m, prio, false);
}

std::string write_smiles_randomized(const Molecule &m, Rng &rng) {
  std::vector<int> prio(static_cast<std::size_t>(m.num_atoms()));
  std::iota(prio.begin(), prio.end(), 0);
  rng.shuffle(prio);
  return write_fragments(m, prio, false);
}

std::string canonical_smiles(const Molecule &normalized) {
  std::vector<std::string> parts;
  for (const auto &frag: normalized.fragments()) {
    const Molecule sub = extract_fragment(normalized, frag);
    const std::vector<int> ranks = canonical_ranks(sub);
    Writer writer(sub, ranks);
    int start = 0;
    for (int v = 0; v < sub.num_atoms(); ++v)
      if (ranks[static_cast<std::size_t>(v)] < ranks[static_cast<std::size_t>(start)])
        start = v;
    writer.survey(start);
    writer.emit(start);
    parts.push_back(writer.out);
  }
  std::sort(parts.begin(), parts.end());
  std::string joined;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0)
      joined += '.';
    joined += parts[i];
  }
  return joined;
}

std::string canonical_smiles(std::string_view smiles) {
  return canonical_smiles(parse_smiles(smiles));
}

std::string canonical_smiles_achiral(const Molecule &normalized) {
  return canonical_smiles(strip_stereo(normalized));
}

std::string canonical_smiles_achiral(std::string_view smiles) {
  return canonical_smiles_achiral(parse_smiles(smiles));
}

}  // namespace molseek
