#include "qcat/state_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qcat {

namespace {

using nlohmann::json;

SystemLayout layout_from_json(const json& doc) {
  if (!doc.contains("layout") || !doc["layout"].is_array())
    throw ParseError("field 'layout' is missing or not an array");
  std::vector<Subsystem> subs;
  std::size_t index = 0;
  for (const auto& entry : doc["layout"]) {
    const std::string where = "layout[" + std::to_string(index++) + "]";
    if (!entry.is_object()) throw ParseError("field '" + where + "' is not an object");
    if (!entry.contains("label") || !entry["label"].is_string())
      throw ParseError("field '" + where + ".label' is missing or not a string");
    if (!entry.contains("dim") || !entry["dim"].is_number_unsigned())
      throw ParseError("field '" + where + ".dim' is missing or not a positive integer");
    if (!entry.contains("party") || !entry["party"].is_string())
      throw ParseError("field '" + where + ".party' is missing or not a string");
    const auto party = party_from_name(entry["party"].get<std::string>());
    if (!party)
      throw ParseError("field '" + where + ".party' has unknown value '" +
                       entry["party"].get<std::string>() + "'");
    subs.push_back(Subsystem{entry["label"].get<std::string>(), entry["dim"].get<std::size_t>(),
                             *party});
  }
  try {
    return SystemLayout(std::move(subs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("field 'layout' is invalid: ") + e.what());
  }
}

std::complex<double> complex_from_json(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number())
    throw ParseError("field '" + where + "' must be a [re, im] pair");
  return {value[0].get<double>(), value[1].get<double>()};
}

json complex_to_json(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }

json layout_to_json(const SystemLayout& layout) {
  json out = json::array();
  for (const auto& s : layout.subsystems())
    out.push_back({{"label", s.label}, {"dim", s.dim}, {"party", std::string(party_name(s.party))}});
  return out;
}

}  // namespace

LoadedState read_state_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("state document must be a JSON object");

  SystemLayout layout = layout_from_json(doc);
  if (!doc.contains("kind") || !doc["kind"].is_string())
    throw ParseError("field 'kind' is missing or not a string");
  const std::string kind = doc["kind"].get<std::string>();
  if (!doc.contains("data")) throw ParseError("field 'data' is missing");
  const json& data = doc["data"];
  const std::size_t dim = layout.total_dimension();

  if (kind == "pure") {
    if (!data.is_array() || data.size() != dim)
      throw ParseError("field 'data' must hold " + std::to_string(dim) +
                       " amplitude pairs for this layout");
    Eigen::VectorXcd amps(dim);
    for (std::size_t i = 0; i < dim; ++i)
      amps(i) = complex_from_json(data[i], "data[" + std::to_string(i) + "]");
    try {
      return PureState(std::move(layout), std::move(amps));
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("field 'data' violates the pure-state invariants: ") +
                       e.what());
    }
  }
  if (kind == "density") {
    if (!data.is_array() || data.size() != dim)
      throw ParseError("field 'data' must hold " + std::to_string(dim) +
                       " rows for this layout");
    Eigen::MatrixXcd m(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
      const json& row = data[r];
      const std::string where = "data[" + std::to_string(r) + "]";
      if (!row.is_array() || row.size() != dim)
        throw ParseError("field '" + where + "' must hold " + std::to_string(dim) + " entries");
      for (std::size_t c = 0; c < dim; ++c)
        m(r, c) = complex_from_json(row[c], where + "[" + std::to_string(c) + "]");
    }
    try {
      DensityOperator rho(std::move(layout), std::move(m));
      rho.validate();
      return rho;
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("field 'data' violates the density-operator invariants: ") +
                       e.what());
    }
  }
  throw ParseError("field 'kind' must be \"pure\" or \"density\", got \"" + kind + "\"");
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return read_state_json(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError("in '" + path + "': " + e.what());
  }
}

std::string write_state_json(const PureState& psi) {
  json doc;
  doc["layout"] = layout_to_json(psi.layout());
  doc["kind"] = "pure";
  json data = json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i)
    data.push_back(complex_to_json(psi.amplitudes()(i)));
  doc["data"] = std::move(data);
  return doc.dump(2);
}

std::string write_state_json(const DensityOperator& rho) {
  json doc;
  doc["layout"] = layout_to_json(rho.layout());
  doc["kind"] = "density";
  json rows = json::array();
  for (Eigen::Index r = 0; r < rho.matrix().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < rho.matrix().cols(); ++c)
      row.push_back(complex_to_json(rho.matrix()(r, c)));
    rows.push_back(std::move(row));
  }
  doc["data"] = std::move(rows);
  return doc.dump(2);
}

std::string write_state_json(const LoadedState& state) {
  return std::visit([](const auto& s) { return write_state_json(s); }, state);
}

void save_state_file(const std::string& path, const LoadedState& state) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write state file '" + path + "'");
  out << write_state_json(state) << "\n";
}

std::string ledger_to_json(const ResourceLedger& ledger) {
  json doc;
  doc["conditional_entropy"] = ledger.conditional_entropy;
  doc["case"] = ledger_case_name(ledger.ledger_case);
  doc["resource_entropy"] = ledger.resource_entropy;
  doc["resource_spectrum"] = ledger.resource_spectrum.entries();
  if (ledger.direction) doc["direction"] = merge_direction_name(*ledger.direction);
  return doc.dump(2);
}

ResourceLedger ledger_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("JSON parse error: ") + e.what());
  }
  ResourceLedger ledger;
  try {
    ledger.conditional_entropy = doc.at("conditional_entropy").get<double>();
    ledger.resource_entropy = doc.at("resource_entropy").get<double>();
    ledger.resource_spectrum =
        ProbabilityVector(doc.at("resource_spectrum").get<std::vector<double>>());
    const std::string case_name = doc.at("case").get<std::string>();
    bool matched = false;
    for (LedgerCase c : {LedgerCase::Zero, LedgerCase::PositiveNeedsResource,
                         LedgerCase::NegativeYieldsResource}) {
      if (case_name == ledger_case_name(c)) {
        ledger.ledger_case = c;
        matched = true;
      }
    }
    if (!matched) throw ParseError("field 'case' has unknown value '" + case_name + "'");
    if (doc.contains("direction")) {
      const std::string dir = doc["direction"].get<std::string>();
      if (dir == merge_direction_name(MergeDirection::CToA))
        ledger.direction = MergeDirection::CToA;
      else if (dir == merge_direction_name(MergeDirection::CToB))
        ledger.direction = MergeDirection::CToB;
      else
        throw ParseError("field 'direction' has unknown value '" + dir + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("ledger document is malformed: ") + e.what());
  }
  return ledger;
}

}  // namespace qcat
