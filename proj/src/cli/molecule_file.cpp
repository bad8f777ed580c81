//
// tiermol - tiered latent representations for molecular graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "tiermol/cli/molecule_file.hpp"

#include <fstream>

#include "tiermol/molgraph/smiles.hpp"

namespace tiermol {

namespace {
  constexpr const char *kSpace = " \t\r\n\v\f";
}

std::vector<MoleculeRecord> read_molecule_records(std::istream &in) {
  std::vector<MoleculeRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto first = line.find_first_not_of(kSpace);
    if (first == std::string::npos || line[first] == '#')
      continue;
    const auto smiles_end = std::min(line.find_first_of(kSpace, first), line.size());
    MoleculeRecord rec { number, line.substr(first, smiles_end - first), {} };
    const auto name_begin = line.find_first_not_of(kSpace, smiles_end);
    if (name_begin != std::string::npos) {
      const auto name_end = line.find_last_not_of(kSpace);
      rec.name = line.substr(name_begin, name_end - name_begin + 1);
    } else {
      rec.name = rec.smiles;
    }
    out.push_back(std::move(rec));
  }
  if (in.bad())
    throw IoError("read error");
  return out;
}

std::vector<MoleculeRecord> read_molecule_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open " + path.string());
  try {
    return read_molecule_records(in);
  } catch (const IoError &) {
    throw IoError("read error in " + path.string());
  }
}

ParsedBatch parse_records(const std::vector<MoleculeRecord> &records) {
  ParsedBatch batch;
  for (const MoleculeRecord &rec: records) {
    try {
      batch.molecules.push_back({ rec, parse_smiles(rec.smiles) });
    } catch (const SmilesError &e) {
      batch.failures.push_back({ rec, e.what() });
    }
  }
  return batch;
}

}  // namespace tiermol
