#include "molsym/character_tables.hpp"

#include <cmath>
#include <json.hpp>  // vendored nlohmann/json

#include "molsym/embedded_data.hpp"
#include "molsym/errors.hpp"

namespace molsym {

const Irrep& CharacterTable::totally_symmetric() const {
  for (const auto& irrep : irreps) {
    bool all_ones = irrep.dim == 1;
    for (double c : irrep.characters) all_ones = all_ones && std::abs(c - 1.0) < 1e-12;
    if (all_ones) return irrep;
  }
  throw Error("character table '" + group + "' has no totally symmetric irrep");
}

namespace {

std::vector<CharacterTable> parse_and_validate(const char* text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<CharacterTable> tables;
  for (const auto& jt : doc.at("tables")) {
    CharacterTable table;
    table.group = jt.at("group").get<std::string>();
    table.order = jt.at("order").get<int>();
    for (const auto& jc : jt.at("classes")) {
      CharacterClass cls;
      cls.label = jc.at("label").get<std::string>();
      cls.size = jc.at("size").get<int>();
      cls.det = jc.at("det").get<int>();
      cls.trace = jc.at("trace").get<double>();
      cls.fixed_more = jc.value("fixed_more", false);
      table.classes.push_back(std::move(cls));
    }
    for (const auto& ji : jt.at("irreps")) {
      Irrep irrep;
      irrep.label = ji.at("label").get<std::string>();
      irrep.dim = ji.at("dim").get<int>();
      irrep.characters = ji.at("characters").get<std::vector<double>>();
      if (irrep.characters.size() != table.classes.size())
        throw Error("table '" + table.group + "': irrep '" + irrep.label +
                    "' has wrong character count");
      table.irreps.push_back(std::move(irrep));
    }

    int size_sum = 0;
    for (const auto& c : table.classes) size_sum += c.size;
    if (size_sum != table.order)
      throw Error("table '" + table.group + "': class sizes do not sum to the order");

    // Row orthogonality over elements: sum_h chi_a(h) chi_b(h) = |H| delta_ab.
    for (std::size_t a = 0; a < table.irreps.size(); ++a) {
      for (std::size_t b = a; b < table.irreps.size(); ++b) {
        double dot = 0.0;
        for (std::size_t c = 0; c < table.classes.size(); ++c)
          dot += table.classes[c].size * table.irreps[a].characters[c] *
                 table.irreps[b].characters[c];
        const double expected = (a == b) ? table.order : 0.0;
        if (std::abs(dot - expected) > 1e-9 * table.order)
          throw Error("table '" + table.group + "': irreps '" + table.irreps[a].label +
                      "' and '" + table.irreps[b].label + "' violate orthogonality");
      }
    }
    table.totally_symmetric();  // must exist
    tables.push_back(std::move(table));
  }
  return tables;
}

}  // namespace

const std::vector<CharacterTable>& character_tables() {
  static const std::vector<CharacterTable> tables =
      parse_and_validate(detail::kCharacterTablesJson);
  return tables;
}

const CharacterTable* find_character_table(const std::string& group) {
  for (const auto& t : character_tables())
    if (t.group == group) return &t;
  return nullptr;
}

std::string character_tables_json() { return detail::kCharacterTablesJson; }

}  // namespace molsym
