#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wpc::csv {

/// Comma-separated table with `# key=value` metadata lines before the header.
///
/// Cells are plain tokens (numbers, booleans, identifiers); no quoting is
/// performed, so cells must not contain commas or newlines.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_metadata(std::string key, std::string value);
  void add_row(std::vector<std::string> row);

  /// Column index for a header name; nullopt if absent.
  std::optional<std::size_t> column(std::string_view name) const;
  std::optional<std::string> meta(std::string_view key) const;

  /// Parses column `name` of every row as double. Throws std::invalid_argument.
  std::vector<double> numeric_column(std::string_view name) const;
};

/// Shortest decimal string that parses back to exactly `x`.
std::string format_number(double x);
std::string format_bool(bool b);

void write(std::ostream& os, const Table& table);

/// Writes to `<path>.tmp` then renames over `path`; on failure no file is left.
void write_file_atomic(const std::filesystem::path& path, const Table& table);

/// Inverse of write(). Throws std::runtime_error on ragged rows or missing header.
Table read(std::istream& is);
Table read_file(const std::filesystem::path& path);

}  // namespace wpc::csv
