#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace pnwave::app {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  std::filesystem::path scratch;  ///< where determinism runs write; temp dir if empty
  std::set<int> only;             ///< empty means all ten
  std::ostream* log = nullptr;    ///< one line per criterion as it finishes
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

std::string format_result(const CriterionResult& r);

}  // namespace pnwave::app
