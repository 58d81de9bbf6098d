#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mmtsp/results.hpp"

namespace mmtsp {

struct ReferenceEntry {
  double objective = 0.0;
  double time_s = 0.0;
};

// Published objective and time per instance for one baseline.
using ReferenceTable = std::map<std::string, ReferenceEntry, std::less<>>;

// CSV with header "instance,objective,time_s"; values must be positive.
ReferenceTable parse_reference_csv(std::string_view text);
ReferenceTable read_reference_file(const std::filesystem::path& path);

enum class Verdict { Better, Equal, Worse };

inline constexpr double kEqualityTolerance = 1e-6;

// 100 (objective - baseline) / baseline.
double deviation_pct(double objective, double baseline);

// Equal within kEqualityTolerance relative to the reference.
Verdict classify(double objective, double reference);

const char* to_string(Verdict v);

struct ComparisonRow {
  std::string instance;
  double objective = 0.0;
  double reference = 0.0;
  double deviation_pct = 0.0;
  Verdict verdict = Verdict::Equal;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  int better = 0;
  int equal = 0;
  int worse = 0;
};

// Error rows are skipped; when an instance appears several times its best
// objective is compared. Throws InvalidInput if an instance is missing from
// the table.
ComparisonReport compare_to_reference(std::span<const ResultRow> rows, const ReferenceTable& ref);

// "instance,objective,reference,deviation_pct,verdict" plus one row each.
std::string comparison_csv(const ComparisonReport& report);

}  // namespace mmtsp
