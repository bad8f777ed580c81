//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>

#include "tiermol/molgraph/molecule.hpp"

namespace tiermol {

enum class SmilesErrorKind {
  Empty,
  UnbalancedParenthesis,
  UnmatchedRingClosure,
  UnsupportedElement,
  UnsupportedToken,
  ValenceOverflow,
  Syntax,
};

std::string_view smiles_error_name(SmilesErrorKind kind);

class SmilesError : public std::runtime_error {
 public:
  SmilesError(SmilesErrorKind kind, std::size_t position,
              const std::string &detail);

  SmilesErrorKind kind() const { return kind_; }
  /// 0-based character offset of the offending token.
  std::size_t position() const { return position_; }

 private:
  SmilesErrorKind kind_;
  std::size_t position_;
};

/// Parses a single-fragment SMILES string from the organic subset plus
/// bracket atoms carrying an H count and charge.
///
/// Every hydrogen becomes an explicit node. Atoms are numbered in the order
/// they appear, each heavy atom directly followed by its implicit hydrogens. Implicit H counts use the
/// lowest standard valence that accommodates the bonds already present
/// (B 3, C 4, N 3, O 2, P 3/5, S 2/4/6, halogens 1); aromatic atoms use their
/// lowest valence and donate one bond order to the pi system when it fits.
/// Default bonds between two aromatic atoms are aromatic when they lie in a
/// ring and single otherwise.
///
/// Stereo markers, isotopes, atom classes, wildcards and '.' are rejected
/// with SmilesErrorKind::UnsupportedToken.
MolecularGraph parse_smiles(std::string_view text);

}  // namespace tiermol
