//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/molgraph/smiles.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

namespace tiermol {

std::string_view smiles_error_name(SmilesErrorKind kind) {
  switch (kind) {
  case SmilesErrorKind::Empty:
    return "empty input";
  case SmilesErrorKind::UnbalancedParenthesis:
    return "unbalanced parenthesis";
  case SmilesErrorKind::UnmatchedRingClosure:
    return "unmatched ring closure";
  case SmilesErrorKind::UnsupportedElement:
    return "unsupported element";
  case SmilesErrorKind::UnsupportedToken:
    return "unsupported token";
  case SmilesErrorKind::ValenceOverflow:
    return "valence overflow";
  case SmilesErrorKind::Syntax:
    return "syntax error";
  }
  return "syntax error";
}

SmilesError::SmilesError(SmilesErrorKind kind, std::size_t position,
                         const std::string &detail)
    : std::runtime_error(std::string(smiles_error_name(kind)) + " at position "
                         + std::to_string(position)
                         + (detail.empty() ? "" : ": " + detail)),
      kind_(kind), position_(position) { }

namespace {
  struct ParsedAtom {
    Element element;
    int charge = 0;
    bool aromatic = false;
    bool bracket = false;
    int explicit_h = 0;
    std::size_t position = 0;
  };

  struct ParsedBond {
    int begin;
    int end;
    std::optional<BondOrder> order;
  };

  struct RingOpening {
    int atom;
    std::optional<BondOrder> order;
    std::size_t position;
  };

  std::vector<int> allowed_valences(Element e, int charge) {
    std::vector<int> base;
    int shift = charge;
    switch (e) {
    case Element::H:
      return { charge == 0 ? 1 : 0 };
    case Element::B:
      base = { 3 };
      shift = -charge;
      break;
    case Element::C:
      return { 4 - std::abs(charge) };
    case Element::N:
      base = { 3 };
      break;
    case Element::O:
      base = { 2 };
      break;
    case Element::P:
      base = { 3, 5 };
      break;
    case Element::S:
      base = { 2, 4, 6 };
      break;
    case Element::F:
    case Element::Cl:
    case Element::Br:
    case Element::I:
      base = { 1 };
      break;
    }
    for (int &v: base)
      v += shift;
    return base;
  }

  class Parser {
   public:
    explicit Parser(std::string_view text): text_(text) { }

    MolecularGraph run();

   private:
    void parse_bracket();
    void parse_organic();
    void parse_ring_closure();
    void add_atom(ParsedAtom atom);
    void resolve_default_orders();
    MolecularGraph build();

    [[noreturn]] void fail(SmilesErrorKind kind, std::size_t pos,
                           const std::string &detail = {}) const {
      throw SmilesError(kind, pos, detail);
    }

    std::string_view text_;
    std::size_t pos_ = 0;

    std::vector<ParsedAtom> atoms_;
    std::vector<ParsedBond> bonds_;
    std::vector<std::pair<int, std::size_t>> branches_;
    std::map<int, RingOpening> rings_;
    int prev_ = -1;
    std::optional<BondOrder> pending_;
    std::size_t pending_pos_ = 0;
  };

  std::optional<BondOrder> bond_symbol(char c) {
    switch (c) {
    case '-':
      return BondOrder::Single;
    case '=':
      return BondOrder::Double;
    case '#':
      return BondOrder::Triple;
    case ':':
      return BondOrder::Aromatic;
    default:
      return std::nullopt;
    }
  }

  MolecularGraph Parser::run() {
    if (text_.empty())
      fail(SmilesErrorKind::Empty, 0);

    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '[') {
        parse_bracket();
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        parse_organic();
      } else if (c == '(') {
        if (prev_ < 0)
          fail(SmilesErrorKind::Syntax, pos_, "branch without a preceding atom");
        if (pending_)
          fail(SmilesErrorKind::Syntax, pos_, "bond symbol before branch");
        branches_.emplace_back(prev_, pos_);
        ++pos_;
      } else if (c == ')') {
        if (branches_.empty())
          fail(SmilesErrorKind::UnbalancedParenthesis, pos_, "unexpected ')'");
        if (pending_)
          fail(SmilesErrorKind::Syntax, pending_pos_, "dangling bond symbol");
        prev_ = branches_.back().first;
        branches_.pop_back();
        ++pos_;
      } else if (auto order = bond_symbol(c)) {
        if (prev_ < 0 || pending_)
          fail(SmilesErrorKind::Syntax, pos_, "misplaced bond symbol");
        pending_ = order;
        pending_pos_ = pos_;
        ++pos_;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
        parse_ring_closure();
      } else {
        fail(SmilesErrorKind::UnsupportedToken, pos_,
             std::string("'") + c + "'");
      }
    }

    if (!branches_.empty())
      fail(SmilesErrorKind::UnbalancedParenthesis, branches_.back().second,
           "unclosed '('");
    if (!rings_.empty()) {
      auto first = std::min_element(rings_.begin(), rings_.end(),
                                    [](const auto &a, const auto &b) {
                                      return a.second.position
                                             < b.second.position;
                                    });
      fail(SmilesErrorKind::UnmatchedRingClosure, first->second.position,
           "ring bond " + std::to_string(first->first) + " never closed");
    }
    if (pending_)
      fail(SmilesErrorKind::Syntax, pending_pos_, "dangling bond symbol");

    resolve_default_orders();
    return build();
  }

  void Parser::add_atom(ParsedAtom atom) {
    const int id = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    if (prev_ >= 0) {
      bonds_.push_back({ prev_, id, pending_ });
    } else if (pending_) {
      fail(SmilesErrorKind::Syntax, pending_pos_, "bond without a left atom");
    }
    pending_.reset();
    prev_ = id;
  }

  void Parser::parse_organic() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    ParsedAtom atom;
    atom.position = start;

    if (text_.substr(pos_, 2) == "Cl") {
      atom.element = Element::Cl;
      pos_ += 2;
    } else if (text_.substr(pos_, 2) == "Br") {
      atom.element = Element::Br;
      pos_ += 2;
    } else {
      switch (c) {
      case 'B':
        atom.element = Element::B;
        break;
      case 'C':
        atom.element = Element::C;
        break;
      case 'N':
        atom.element = Element::N;
        break;
      case 'O':
        atom.element = Element::O;
        break;
      case 'P':
        atom.element = Element::P;
        break;
      case 'S':
        atom.element = Element::S;
        break;
      case 'F':
        atom.element = Element::F;
        break;
      case 'I':
        atom.element = Element::I;
        break;
      case 'b':
      case 'c':
      case 'n':
      case 'o':
      case 'p':
      case 's': {
        const char upper = static_cast<char>(
            std::toupper(static_cast<unsigned char>(c)));
        atom.element = *element_from_symbol(std::string(1, upper));
        atom.aromatic = true;
        break;
      }
      default:
        if (std::isupper(static_cast<unsigned char>(c)))
          fail(SmilesErrorKind::UnsupportedElement, start,
               std::string("'") + c + "' outside brackets");
        fail(SmilesErrorKind::UnsupportedToken, start,
             std::string("'") + c + "'");
      }
      ++pos_;
    }
    add_atom(atom);
  }

  void Parser::parse_bracket() {
    const std::size_t start = pos_;
    const std::size_t close = text_.find(']', pos_);
    if (close == std::string_view::npos)
      fail(SmilesErrorKind::Syntax, start, "unterminated bracket atom");
    std::size_t i = pos_ + 1;

    if (i < close && std::isdigit(static_cast<unsigned char>(text_[i])))
      fail(SmilesErrorKind::UnsupportedToken, i, "isotope label");

    ParsedAtom atom;
    atom.bracket = true;
    atom.position = start;

    if (i >= close || !std::isalpha(static_cast<unsigned char>(text_[i])))
      fail(SmilesErrorKind::Syntax, i, "missing element symbol");

    std::string symbol;
    if (std::islower(static_cast<unsigned char>(text_[i]))) {
      // Aromatic bracket atom such as [nH].
      symbol = std::string(1, static_cast<char>(std::toupper(
                                  static_cast<unsigned char>(text_[i]))));
      atom.aromatic = true;
      ++i;
    } else {
      symbol = std::string(1, text_[i]);
      ++i;
      if (i < close && std::islower(static_cast<unsigned char>(text_[i]))) {
        symbol += text_[i];
        ++i;
      }
    }

    const auto element = element_from_symbol(symbol);
    if (!element)
      fail(SmilesErrorKind::UnsupportedElement, start + 1,
           "'" + symbol + "'");
    if (atom.aromatic
        && (*element == Element::H || *element == Element::F
            || *element == Element::Cl || *element == Element::Br
            || *element == Element::I))
      fail(SmilesErrorKind::UnsupportedElement, start + 1,
           "'" + symbol + "' cannot be aromatic");
    atom.element = *element;

    if (i < close && text_[i] == '@')
      fail(SmilesErrorKind::UnsupportedToken, i, "chirality marker");

    if (i < close && text_[i] == 'H') {
      ++i;
      atom.explicit_h = 1;
      if (i < close && std::isdigit(static_cast<unsigned char>(text_[i]))) {
        atom.explicit_h = text_[i] - '0';
        ++i;
      }
    }

    if (i < close && (text_[i] == '+' || text_[i] == '-')) {
      const char sign = text_[i];
      const int unit = sign == '+' ? 1 : -1;
      ++i;
      int magnitude = 1;
      if (i < close && std::isdigit(static_cast<unsigned char>(text_[i]))) {
        magnitude = text_[i] - '0';
        ++i;
      } else {
        while (i < close && text_[i] == sign) {
          ++magnitude;
          ++i;
        }
      }
      atom.charge = unit * magnitude;
    }

    if (i < close && text_[i] == ':')
      fail(SmilesErrorKind::UnsupportedToken, i, "atom class");
    if (i != close)
      fail(SmilesErrorKind::Syntax, i, "unexpected character in bracket atom");

    pos_ = close + 1;
    add_atom(atom);
  }

  void Parser::parse_ring_closure() {
    const std::size_t start = pos_;
    if (prev_ < 0)
      fail(SmilesErrorKind::Syntax, start, "ring bond without an atom");

    int number = 0;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size()
          || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))
          || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
        fail(SmilesErrorKind::Syntax, start, "'%' needs two digits");
      number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = text_[pos_] - '0';
      ++pos_;
    }

    auto it = rings_.find(number);
    if (it == rings_.end()) {
      rings_.emplace(number, RingOpening { prev_, pending_, start });
      pending_.reset();
      return;
    }

    const RingOpening opening = it->second;
    rings_.erase(it);
    if (opening.atom == prev_)
      fail(SmilesErrorKind::Syntax, start, "ring bond to itself");
    if (opening.order && pending_ && *opening.order != *pending_)
      fail(SmilesErrorKind::Syntax, start, "conflicting ring bond orders");
    const bool duplicate =
        std::any_of(bonds_.begin(), bonds_.end(), [&](const ParsedBond &b) {
          return (b.begin == opening.atom && b.end == prev_)
                 || (b.begin == prev_ && b.end == opening.atom);
        });
    if (duplicate)
      fail(SmilesErrorKind::Syntax, start, "duplicate bond");

    bonds_.push_back({ opening.atom, prev_, pending_ ? pending_ : opening.order });
    pending_.reset();
  }

  void Parser::resolve_default_orders() {
    // A default bond between aromatic atoms is aromatic only inside a ring, so
    // ring membership must be known first.
    std::vector<Atom> skeleton(atoms_.size());
    std::vector<Bond> skeleton_bonds;
    skeleton_bonds.reserve(bonds_.size());
    for (const ParsedBond &b: bonds_)
      skeleton_bonds.push_back({ b.begin, b.end, BondOrder::Single, false, false });
    const MolecularGraph skeleton_graph(std::move(skeleton),
                                        std::move(skeleton_bonds));

    for (std::size_t i = 0; i < bonds_.size(); ++i) {
      ParsedBond &b = bonds_[i];
      if (b.order)
        continue;
      const bool both_aromatic = atoms_[static_cast<std::size_t>(b.begin)].aromatic
                                 && atoms_[static_cast<std::size_t>(b.end)].aromatic;
      b.order = both_aromatic && skeleton_graph.bond(static_cast<int>(i)).in_ring
                    ? BondOrder::Aromatic
                    : BondOrder::Single;
    }
  }

  MolecularGraph Parser::build() {
    const std::size_t heavy = atoms_.size();
    std::vector<int> half_sum(heavy, 0);
    std::vector<int> aromatic_bonds(heavy, 0);
    for (const ParsedBond &b: bonds_) {
      for (int end: { b.begin, b.end }) {
        half_sum[static_cast<std::size_t>(end)] += half_order(*b.order);
        if (*b.order == BondOrder::Aromatic)
          ++aromatic_bonds[static_cast<std::size_t>(end)];
      }
    }

    std::vector<int> h_count(heavy, 0);
    for (std::size_t i = 0; i < heavy; ++i) {
      const ParsedAtom &a = atoms_[i];
      const int arom = aromatic_bonds[i];
      // Non-aromatic bond orders plus one per aromatic bond (kekule single).
      const int sigma = (half_sum[i] - 3 * arom) / 2 + arom;
      std::vector<int> valences = allowed_valences(a.element, a.charge);
      const int max_valence = *std::max_element(valences.begin(), valences.end());

      if (a.bracket) {
        const int used = sigma + a.explicit_h;
        if (used > max_valence)
          fail(SmilesErrorKind::ValenceOverflow, a.position,
               std::string(element_symbol(a.element)) + " uses "
                   + std::to_string(used) + " > "
                   + std::to_string(max_valence));
        h_count[i] = a.explicit_h;
        continue;
      }

      if (a.aromatic && arom > 0) {
        const int lowest = valences.front();
        if (sigma + 1 <= lowest)
          h_count[i] = lowest - sigma - 1;
        else if (sigma <= lowest)
          h_count[i] = lowest - sigma;
        else
          fail(SmilesErrorKind::ValenceOverflow, a.position,
               std::string(element_symbol(a.element)) + " uses "
                   + std::to_string(sigma) + " > " + std::to_string(lowest));
        continue;
      }

      const int used = (half_sum[i] + 1) / 2;
      auto fit = std::find_if(valences.begin(), valences.end(),
                              [used](int v) { return v >= used; });
      if (fit == valences.end())
        fail(SmilesErrorKind::ValenceOverflow, a.position,
             std::string(element_symbol(a.element)) + " uses "
                 + std::to_string(used) + " > " + std::to_string(max_valence));
      h_count[i] = *fit - used;
    }

    // Each atom is followed directly by its implicit hydrogens.
    std::vector<int> new_id(heavy);
    int next = 0;
    for (std::size_t i = 0; i < heavy; ++i) {
      new_id[i] = next;
      next += 1 + h_count[i];
    }

    std::vector<Atom> atoms(static_cast<std::size_t>(next));
    std::vector<Bond> bonds;
    for (const ParsedBond &b: bonds_)
      bonds.push_back({ new_id[static_cast<std::size_t>(b.begin)],
                        new_id[static_cast<std::size_t>(b.end)], *b.order, false, false });
    for (std::size_t i = 0; i < heavy; ++i) {
      const ParsedAtom &a = atoms_[i];
      const int id = new_id[i];
      atoms[static_cast<std::size_t>(id)] = { a.element, a.charge, a.aromatic, id };
      for (int h = 1; h <= h_count[i]; ++h) {
        atoms[static_cast<std::size_t>(id + h)] = { Element::H, 0, false, id + h };
        bonds.push_back({ id, id + h, BondOrder::Single, false, false });
      }
    }
    return MolecularGraph(std::move(atoms), std::move(bonds));
  }
}  // namespace

MolecularGraph parse_smiles(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i)
    if (static_cast<unsigned char>(text[i]) > 127)
      throw SmilesError(SmilesErrorKind::UnsupportedToken, i, "non-ASCII byte");
  return Parser(text).run();
}

}  // namespace tiermol
