#pragma once

#include <string>
#include <vector>

namespace molsym {

struct CharacterClass {
  std::string label;
  int size = 1;
  int det = 1;         // +1 proper, -1 improper
  double trace = 3.0;  // trace of the 3x3 representative
  bool fixed_more = false;  // tie-break among classes sharing (size, det, trace)
};

struct Irrep {
  std::string label;
  int dim = 1;
  std::vector<double> characters;  // one per class, table order
};

struct CharacterTable {
  std::string group;
  int order = 1;
  std::vector<CharacterClass> classes;
  std::vector<Irrep> irreps;

  const Irrep& totally_symmetric() const;  // the all-ones irrep
};

/// All shipped tables, parsed from the embedded data file and validated
/// (class sizes sum to the order; rows orthogonal: sum_h chi_a chi_b = |H| d_ab).
const std::vector<CharacterTable>& character_tables();

/// nullptr when the group is not in the catalog.
const CharacterTable* find_character_table(const std::string& group);

/// The embedded JSON document (identical to the installed data file).
std::string character_tables_json();

}  // namespace molsym
