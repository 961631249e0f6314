#include "molsym/strata.hpp"

#include <cmath>
#include <json.hpp>  // vendored nlohmann/json
#include <map>

#include "molsym/embedded_data.hpp"
#include "molsym/symmetry.hpp"

namespace molsym {

namespace {

void require_pair(const Configuration& config) {
  if (config.size() != 2) throw DimensionError("operation defined for N = 2 only");
}

}  // namespace

MibValuesXY mib_xy(const Configuration& config) {
  require_pair(config);
  const auto& r1 = config.positions[0];
  const auto& r2 = config.positions[1];
  return MibValuesXY{r1.squaredNorm(), r2.squaredNorm(), r1.dot(r2)};
}

OrbitParamsXY orbit_params_xy(const Configuration& config) {
  const MibValuesXY mib = mib_xy(config);
  OrbitParamsXY out;
  out.a = std::sqrt(mib.theta1);
  out.b = std::sqrt(mib.theta2);
  if (out.a > 0.0 && out.b > 0.0)
    out.alpha = std::acos(std::clamp(mib.theta3 / (out.a * out.b), -1.0, 1.0));
  return out;
}

std::string classify_stratum_xy(const Configuration& config, double tol) {
  const OrbitParamsXY p = orbit_params_xy(config);
  const double scale = std::max({p.a, p.b, 1e-300});
  if (p.a <= tol && p.b <= tol) return "Sigma3";
  if (!p.alpha) return "Sigma2";  // one nucleus at the origin: still one axis
  if (*p.alpha <= tol || *p.alpha >= std::numbers::pi - tol) return "Sigma2";
  (void)scale;
  return "Sigma1";
}

MibValuesX2 mib_x2(const MoleculeSpec& spec, const Configuration& config) {
  require_pair(config);
  if (spec.species_count() != 1 || spec.nucleus_count() != 2)
    throw DimensionError("mib_x2 needs a single species with two nuclei");
  const auto& r1 = config.positions[0];
  const auto& r2 = config.positions[1];
  return MibValuesX2{r1.squaredNorm() + r2.squaredNorm(), r1.dot(r2),
                     r1.squaredNorm() * r2.squaredNorm()};
}

namespace {

std::vector<StratumEntry> parse_catalog(const char* text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  std::vector<StratumEntry> entries;
  for (const auto& js : doc.at("strata")) {
    StratumEntry e;
    const auto type = parse_molecule_type(js.at("molecule").get<std::string>());
    if (!type) throw Error("strata catalog: unknown molecule type");
    e.type = *type;
    e.stratum_label = js.at("stratum").get<std::string>();
    e.symmetry = js.at("symmetry").get<std::string>();
    e.maximally_peripheral = js.at("maximally_peripheral").get<bool>();
    e.description = js.at("description").get<std::string>();
    entries.push_back(std::move(e));
  }
  return entries;
}

const std::vector<StratumEntry>& full_catalog() {
  static const std::vector<StratumEntry> catalog = parse_catalog(detail::kStrataCatalogJson);
  return catalog;
}

}  // namespace

const std::vector<StratumEntry>& stratum_catalog(MoleculeType type) {
  static const std::map<MoleculeType, std::vector<StratumEntry>> by_type = [] {
    std::map<MoleculeType, std::vector<StratumEntry>> m;
    for (const auto& e : full_catalog()) m[e.type].push_back(e);
    return m;
  }();
  const auto it = by_type.find(type);
  if (it == by_type.end())
    throw UnsupportedError("no stratum catalog for molecule type " + to_string(type));
  return it->second;
}

StratumClassification classify_stratum(const MoleculeSpec& spec, const Configuration& config,
                                       double tol) {
  const auto type = classify_molecule_type(spec);
  if (!type)
    throw UnsupportedError("molecule does not match a supported type (XY, X2, XY2, X3, XY3, X4)");
  const PointGroupReport group = detect_point_group(spec, centered(spec, config), tol);

  StratumClassification out;
  out.detected_symmetry = group.name;
  for (const auto& entry : stratum_catalog(*type)) {
    if (entry.symmetry == group.name) {
      out.entry = entry;
      out.catalogued = true;
      break;
    }
  }
  return out;
}

std::string strata_catalog_json() { return detail::kStrataCatalogJson; }

}  // namespace molsym
