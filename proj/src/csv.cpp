#include "wpc/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>

namespace wpc::csv {

void Table::add_metadata(std::string key, std::string value) {
  metadata.emplace_back(std::move(key), std::move(value));
}

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw std::logic_error(fmt::format("csv row has {} cells, header has {}", row.size(), header.size()));
  }
  rows.push_back(std::move(row));
}

std::optional<std::size_t> Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::string> Table::meta(std::string_view key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::vector<double> Table::numeric_column(std::string_view name) const {
  const auto col = column(name);
  if (!col) throw std::invalid_argument(fmt::format("no column '{}'", name));
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const std::string& cell = row[*col];
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
      throw std::invalid_argument(fmt::format("column '{}': '{}' is not a number", name, cell));
    }
    out.push_back(v);
  }
  return out;
}

std::string format_number(double x) { return fmt::format("{}", x); }

std::string format_bool(bool b) { return b ? "true" : "false"; }

namespace {

void write_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

}  // namespace

void write(std::ostream& os, const Table& table) {
  for (const auto& [k, v] : table.metadata) os << "# " << k << '=' << v << '\n';
  write_line(os, table.header);
  for (const auto& row : table.rows) write_line(os, row);
}

void write_file_atomic(const std::filesystem::path& path, const Table& table) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error(fmt::format("cannot open '{}' for writing", tmp.string()));
    write(os, table);
    os.flush();
    if (!os) {
      os.close();
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw std::runtime_error(fmt::format("write to '{}' failed", tmp.string()));
    }
  }
  std::filesystem::rename(tmp, path);
}

Table read(std::istream& is) {
  Table table;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header && !line.empty() && line.front() == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const std::size_t eq = body.find('=');
      if (eq == std::string::npos) {
        table.add_metadata(body, "");
      } else {
        table.add_metadata(body.substr(0, eq), body.substr(eq + 1));
      }
      continue;
    }
    if (line.empty()) continue;
    if (!have_header) {
      table.header = split(line);
      have_header = true;
      continue;
    }
    auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw std::runtime_error(
          fmt::format("csv row {} has {} cells, header has {}", table.rows.size() + 1, cells.size(),
                      table.header.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (!have_header) throw std::runtime_error("csv input has no header row");
  return table;
}

Table read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error(fmt::format("cannot open '{}'", path.string()));
  return read(is);
}

}  // namespace wpc::csv
