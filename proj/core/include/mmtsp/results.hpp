#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace mmtsp {

struct ResultRow {
  std::string instance;
  std::string config;
  double objective = 0.0;
  double wall_s = 0.0;
  std::uint64_t seed = 0;
  int runs = 0;
  std::string status = "ok";  // "ok", "truncated" or "error:<message>"

  bool is_error() const { return status.rfind("error", 0) == 0; }
};

inline constexpr std::string_view kResultsHeader = "instance,config,objective,wall_s,seed,runs,status";

// One CSV line without the newline. Commas and line breaks in the status
// are replaced so the row stays one record.
std::string format_result_row(const ResultRow& row);

// Expects the header line first. Throws ParseError on malformed rows.
std::vector<ResultRow> parse_results_csv(std::string_view text);
std::vector<ResultRow> read_results_file(const std::filesystem::path& path);

// Appends rows to a CSV file, writing the header when the file is new or
// empty. Every row is flushed before append() returns. Thread-safe.
class ResultsAppender {
 public:
  explicit ResultsAppender(const std::filesystem::path& path);
  void append(const ResultRow& row);

 private:
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace mmtsp
