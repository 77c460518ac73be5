#pragma once

#include <map>
#include <string>
#include <vector>

namespace martlab::report {

inline constexpr const char* kToolVersion = "martlab 0.1.0";

// 15 significant digits, locale-independent.
std::string fmt(double v);

// Rectangular result table with a fixed column order; serializes to CSV
// (config echoed as leading comment lines) or JSON.
class Table {
 public:
  explicit Table(std::vector<std::string> columns)
      : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells);
  std::size_t n_rows() const { return rows_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  std::string to_csv(const std::map<std::string, std::string>& config) const;
  // JSON object with "config", "rows", "pass" and "wall_time" keys.
  std::string to_json(const std::map<std::string, std::string>& config,
                      bool pass, double wall_time) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace martlab::report
