#include "martlab/report.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace martlab::report {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("Table: cell count mismatch");
  rows_.push_back(std::move(cells));
}

std::string Table::to_csv(
    const std::map<std::string, std::string>& config) const {
  std::string out;
  out += "# ";
  out += kToolVersion;
  out += "\n";
  for (const auto& [k, v] : config) out += "# " + k + "=" + v + "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    out += columns_[c];
    out += (c + 1 < columns_.size()) ? "," : "\n";
  }
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += row[c];
      out += (c + 1 < row.size()) ? "," : "\n";
    }
  }
  return out;
}

std::string Table::to_json(const std::map<std::string, std::string>& config,
                           bool pass, double wall_time) const {
  nlohmann::json j;
  j["version"] = kToolVersion;
  j["config"] = config;
  j["pass"] = pass;
  j["wall_time"] = wall_time;
  auto rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json r;
    for (std::size_t c = 0; c < row.size(); ++c) r[columns_[c]] = row[c];
    rows.push_back(r);
  }
  j["rows"] = rows;
  return j.dump(2);
}

}  // namespace martlab::report
