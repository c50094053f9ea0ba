#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace pnwave::app {

/// "%.17e"; round-trips every double.
std::string format_double(double x);

/// Writes to a sibling temporary and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::span<const double>>& columns);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  const std::vector<double>& column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace pnwave::app
