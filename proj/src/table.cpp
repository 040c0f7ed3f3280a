#include "dpemp/table.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "dpemp/error.hpp"

namespace dpemp {

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ResultTable::ResultTable(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) {
    throw Error(ErrorKind::InvalidArgument, "row width does not match table '" + name_ + "'");
  }
  rows_.push_back(std::move(row));
}

std::size_t ResultTable::column_index(const std::string& column) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == column) return i;
  }
  throw Error(ErrorKind::InvalidArgument, "table '" + name_ + "' has no column '" + column + "'");
}

double ResultTable::number(std::size_t row, const std::string& column) const {
  return std::get<double>(rows_.at(row).at(column_index(column)));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

void ResultTable::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out << ',';
    out << csv_escape(columns_[i].name + "[" + columns_[i].unit + "]");
  }
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out << format_number(*d);
      } else {
        out << csv_escape(std::get<std::string>(row[i]));
      }
    }
    out << '\n';
  }
}

std::string ResultTable::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["columns"] = nlohmann::ordered_json::array();
  for (const auto& c : columns_) j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    auto jr = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (const double* d = std::get_if<double>(&cell)) {
        if (std::isfinite(*d)) {
          jr.push_back(*d);
        } else {
          jr.push_back(format_number(*d));
        }
      } else {
        jr.push_back(std::get<std::string>(cell));
      }
    }
    j["rows"].push_back(std::move(jr));
  }
  j["notes"] = notes_;
  return j.dump(2) + "\n";
}

}  // namespace dpemp

namespace dpemp {

bool bitwise_equal(const ResultTable& a, const ResultTable& b) {
  if (a.name() != b.name() || a.notes() != b.notes() || a.rows().size() != b.rows().size()) {
    return false;
  }
  if (a.columns().size() != b.columns().size()) return false;
  for (std::size_t i = 0; i < a.columns().size(); ++i) {
    if (a.columns()[i].name != b.columns()[i].name || a.columns()[i].unit != b.columns()[i].unit) {
      return false;
    }
  }
  for (std::size_t r = 0; r < a.rows().size(); ++r) {
    const auto& ra = a.rows()[r];
    const auto& rb = b.rows()[r];
    for (std::size_t c = 0; c < ra.size(); ++c) {
      if (ra[c].index() != rb[c].index()) return false;
      if (const double* da = std::get_if<double>(&ra[c])) {
        if (std::bit_cast<std::uint64_t>(*da) != std::bit_cast<std::uint64_t>(std::get<double>(rb[c]))) {
          return false;
        }
      } else if (std::get<std::string>(ra[c]) != std::get<std::string>(rb[c])) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace dpemp
