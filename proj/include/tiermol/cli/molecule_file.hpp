//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tiermol/molgraph/molecule.hpp"

namespace tiermol {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One `SMILES[<whitespace>name]` record.
struct MoleculeRecord {
  std::size_t line;  // 1-based
  std::string smiles;
  std::string name;  // defaults to the SMILES text
};

/// Blank lines and lines starting with '#' are skipped.
std::vector<MoleculeRecord> read_molecule_records(std::istream &in);
std::vector<MoleculeRecord> read_molecule_file(const std::filesystem::path &path);

struct ParsedMolecule {
  MoleculeRecord record;
  MolecularGraph graph;
};

struct ParseFailure {
  MoleculeRecord record;
  std::string message;
};

struct ParsedBatch {
  std::vector<ParsedMolecule> molecules;
  std::vector<ParseFailure> failures;
};

ParsedBatch parse_records(const std::vector<MoleculeRecord> &records);

}  // namespace tiermol
