#include "pnwave_app/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pnwave::app {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", x);
  return buf;
}

void write_atomic(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns) {
  if (header.size() != columns.size()) throw std::invalid_argument("csv header/column mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("csv columns differ in length");
  }
  std::string text;
  text.reserve((rows + 1) * columns.size() * 26);
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k) text += ',';
    text += header[k];
  }
  text += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k) text += ',';
      text += format_double(columns[k][i]);
    }
    text += '\n';
  }
  write_atomic(path, text);
}

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] == name) return columns[k];
  }
  throw std::runtime_error("csv has no column '" + name + "'");
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + " is empty");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) t.header.push_back(cell);
  }
  t.columns.resize(t.header.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    std::stringstream ss(line);
    std::string cell;
    std::size_t k = 0;
    while (std::getline(ss, cell, ',')) {
      if (k >= t.columns.size()) break;
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw std::runtime_error(path.string() + ": bad number '" + cell + "' on row " +
                                 std::to_string(row));
      }
      t.columns[k].push_back(value);
      ++k;
    }
    if (k != t.columns.size()) {
      throw std::runtime_error(path.string() + ": row " + std::to_string(row) +
                               " has the wrong number of cells");
    }
  }
  return t;
}

void write_json(const fs::path& path, const nlohmann::ordered_json& j) {
  write_atomic(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return nlohmann::json::parse(in);
}

}  // namespace pnwave::app
