#pragma once

// Tables with a self-describing header, written as CSV or JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace teich::out {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Throws InvalidInput when the row width does not match the columns.
  void add(std::vector<Cell> row);
};

struct Metadata {
  std::string command;  // e.g. "origami info"
  std::vector<std::pair<std::string, std::string>> params;  // in declaration order
  std::optional<std::uint64_t> seed;
  int schema = 1;
};

/// Shortest decimal that reads back to the same double; "nan", "inf", "-inf".
std::string format_double(double x);

/// The metadata as a one-line JSON object.
std::string metadata_json(const Metadata& meta);

/// "# <metadata json>", then the header row, then the rows.
std::string to_csv(const Metadata& meta, const Table& table);

/// {"meta": ..., "columns": [...], "rows": [[...], ...]}; non-finite
/// doubles become strings.
std::string to_json(const Metadata& meta, const Table& table);

}  // namespace teich::out
