#include "sparsemimo/table.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sparsemimo {

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw std::invalid_argument("ResultTable: row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream out;
  for (const auto& [key, value] : table.metadata)
    out << "# " << key << "=" << value << "\n";
  for (size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << format_number(row[c]);
    out << "\n";
  }
  return out.str();
}

std::string to_json(const ResultTable& table) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) j["metadata"][key] = value;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  return j.dump(2) + "\n";
}

ResultTable from_csv(const std::string& text) {
  ResultTable table;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      size_t start = line.find_first_not_of(" \t", 1);
      if (start == std::string::npos) continue;
      const auto eq = line.find('=', start);
      if (eq == std::string::npos)
        throw std::invalid_argument("from_csv: bad metadata line: " + line);
      table.metadata.emplace_back(line.substr(start, eq - start),
                                  line.substr(eq + 1));
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!header_seen) {
      table.columns = fields;
      header_seen = true;
      continue;
    }
    if (fields.size() != table.columns.size())
      throw std::invalid_argument("from_csv: ragged row: " + line);
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(std::stod(f));
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::invalid_argument("from_csv: missing header");
  return table;
}

ResultTable from_json(const std::string& text) {
  const auto j = nlohmann::ordered_json::parse(text);
  ResultTable table;
  for (const auto& [key, value] : j.at("metadata").items())
    table.metadata.emplace_back(key, value.get<std::string>());
  table.columns = j.at("columns").get<std::vector<std::string>>();
  table.rows = j.at("rows").get<std::vector<std::vector<double>>>();
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      throw std::invalid_argument("from_json: ragged row");
  return table;
}

void emit(const ResultTable& table, const std::string& format,
          const std::string& path) {
  std::string payload;
  if (format == "csv")
    payload = to_csv(table);
  else if (format == "json")
    payload = to_json(table);
  else
    throw std::invalid_argument("emit: format must be 'csv' or 'json'");

  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit: cannot open " + path);
  out << payload;
  if (!out) throw std::runtime_error("emit: write failed: " + path);
}

}  // namespace sparsemimo
