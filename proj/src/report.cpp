#include "currents_lab/report.hpp"

#include <sstream>

#include "json.hpp"

namespace currents_lab {

namespace {

using Json = nlohmann::ordered_json;

Json fields_json(const Fields& fields) {
  Json out = Json::object();
  for (const auto& [name, value] : fields) out[name] = value;
  return out;
}

std::string csv_cell(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char ch : value) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

}  // namespace

std::string report_json(const ConvergenceReport& report) {
  Json doc;
  doc["experiment"] = report.experiment;
  doc["claim"] = report.claim;
  doc["passed"] = report.passed();
  doc["params"] = fields_json(report.params);
  doc["tables"] = Json::array();
  for (const auto& table : report.tables) {
    Json rows = Json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    doc["tables"].push_back({{"name", table.name}, {"columns", table.columns}, {"rows", rows}});
  }
  doc["assertions"] = Json::array();
  for (const auto& a : report.assertions) {
    doc["assertions"].push_back({{"name", a.name}, {"passed", a.passed}, {"witness", fields_json(a.witness)}});
  }
  doc["notes"] = report.notes;
  return doc.dump(2) + "\n";
}

std::string report_csv(const ConvergenceReport& report) {
  std::ostringstream out;
  out << "table,row,column,value\n";
  for (const auto& table : report.tables) {
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
        out << csv_cell(table.name) << ',' << r << ',' << csv_cell(table.columns[c]) << ',' << csv_cell(row[c])
            << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace currents_lab
