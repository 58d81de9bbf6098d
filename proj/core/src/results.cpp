#include "mmtsp/results.hpp"

#include <charconv>
#include <sstream>

#include "mmtsp/error.hpp"
#include "mmtsp/instance_io.hpp"

namespace mmtsp {

namespace {

std::vector<std::string_view> split_commas(std::string_view line, size_t max_fields) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (out.size() + 1 < max_fields) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) break;
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  out.push_back(line.substr(start));
  return out;
}

template <typename T>
T field(std::string_view tok, int line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(tok) + "'", line);
  }
  return value;
}

}  // namespace

std::string format_result_row(const ResultRow& row) {
  std::string status = row.status;
  for (char& c : status) {
    if (c == ',' ) c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::ostringstream out;
  out << row.instance << ',' << row.config << ',' << format_double(row.objective) << ','
      << format_double(row.wall_s) << ',' << row.seed << ',' << row.runs << ',' << status;
  return out.str();
}

std::vector<ResultRow> parse_results_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  int line_no = 0;
  size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kResultsHeader) throw ParseError("expected header '" + std::string(kResultsHeader) + "'", line_no);
      header_seen = true;
      continue;
    }
    const auto f = split_commas(line, 7);
    if (f.size() != 7) throw ParseError("expected 7 fields", line_no);
    ResultRow row;
    row.instance = std::string(f[0]);
    row.config = std::string(f[1]);
    row.objective = field<double>(f[2], line_no, "objective");
    row.wall_s = field<double>(f[3], line_no, "wall_s");
    row.seed = field<std::uint64_t>(f[4], line_no, "seed");
    row.runs = field<int>(f[5], line_no, "runs");
    row.status = std::string(f[6]);
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("empty results file", 0);
  return rows;
}

std::vector<ResultRow> read_results_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_results_csv(buf.str());
}

ResultsAppender::ResultsAppender(const std::filesystem::path& path) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  out_.open(path, std::ios::binary | std::ios::app);
  if (!out_) throw Error("cannot append to " + path.string());
  if (fresh) out_ << kResultsHeader << '\n' << std::flush;
}

void ResultsAppender::append(const ResultRow& row) {
  std::lock_guard lock(mu_);
  out_ << format_result_row(row) << '\n' << std::flush;
}

}  // namespace mmtsp
