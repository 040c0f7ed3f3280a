#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace dpemp {

using Cell = std::variant<double, std::string>;

struct Column {
  std::string name;
  std::string unit;  // "-" for dimensionless or labels
  friend bool operator==(const Column&, const Column&) = default;
};

/// Named table of numeric/label cells. CSV output keeps 6 significant digits; JSON keeps
/// the full binary64 value.
class ResultTable {
 public:
  ResultTable() = default;
  ResultTable(std::string name, std::vector<Column> columns);

  void add_row(std::vector<Cell> row);
  void add_note(std::string note) { notes_.push_back(std::move(note)); }

  const std::string& name() const { return name_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }
  const std::vector<std::string>& notes() const { return notes_; }
  std::size_t column_index(const std::string& column) const;
  double number(std::size_t row, const std::string& column) const;

  void write_csv(std::ostream& out) const;
  std::string to_json() const;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
  std::vector<std::string> notes_;
};

/// "%.6g" rendering used in CSV cells.
std::string format_number(double value);

}  // namespace dpemp

namespace dpemp {

/// Equality that compares doubles by bit pattern (NaN-safe), for determinism checks.
bool bitwise_equal(const ResultTable& a, const ResultTable& b);

}  // namespace dpemp
