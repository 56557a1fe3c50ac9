#include <json.hpp>

#include <ostream>

#include "zetadiff/cli.hpp"

namespace zetadiff::cli {

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void csv_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_cell(cells[i]);
  os << '\n';
}

}  // namespace

// Without rows, fields form a two-column table; with rows they become comment lines above it.
void Output::write_csv(std::ostream& os) const {
  for (const auto& note : notes) os << "# " << note << '\n';
  if (rows.empty()) {
    csv_line(os, {"field", "value"});
    for (const auto& [k, v] : fields) csv_line(os, {k, v});
    return;
  }
  for (const auto& [k, v] : fields) os << "# " << k << ": " << v << '\n';
  csv_line(os, columns);
  for (const auto& row : rows) csv_line(os, row);
}

void Output::write_json(std::ostream& os) const {
  nlohmann::ordered_json doc;
  doc["command"] = command;
  if (!notes.empty()) doc["notes"] = notes;
  for (const auto& [k, v] : fields) doc[k] = v;
  if (!columns.empty()) {
    doc["columns"] = columns;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (size_t i = 0; i < columns.size() && i < row.size(); ++i) obj[columns[i]] = row[i];
      arr.push_back(std::move(obj));
    }
    doc["rows"] = std::move(arr);
  }
  os << doc.dump(2) << '\n';
}

}  // namespace zetadiff::cli
