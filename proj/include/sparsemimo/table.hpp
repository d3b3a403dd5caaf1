#ifndef SPARSEMIMO_TABLE_HPP
#define SPARSEMIMO_TABLE_HPP

#include <string>
#include <utility>
#include <vector>

namespace sparsemimo {

/// Rectangular numeric result set with an ordered metadata echo.
struct ResultTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
};

/// 17-significant-digit decimal form; round-trips any finite double exactly.
std::string format_number(double value);

/// CSV with `# key=value` metadata lines, then header, then rows.
std::string to_csv(const ResultTable& table);

/// JSON object {"metadata": {...}, "columns": [...], "rows": [[...]]}.
std::string to_json(const ResultTable& table);

ResultTable from_csv(const std::string& text);
ResultTable from_json(const std::string& text);

/// Writes CSV or JSON ("csv" | "json") to the path, or stdout when path
/// is "-" or empty.
void emit(const ResultTable& table, const std::string& format,
          const std::string& path);

}  // namespace sparsemimo

#endif
