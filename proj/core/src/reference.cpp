#include "mmtsp/reference.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "mmtsp/error.hpp"
#include "mmtsp/instance_io.hpp"

namespace mmtsp {

namespace {

double parse_positive(std::string_view tok, int line, const char* what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(tok) + "'", line);
  }
  if (!(v > 0.0) || !std::isfinite(v)) throw ParseError(std::string(what) + " must be positive", line);
  return v;
}

}  // namespace

ReferenceTable parse_reference_csv(std::string_view text) {
  ReferenceTable table;
  int line_no = 0;
  size_t pos = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    const size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != "instance,objective,time_s") throw ParseError("expected header 'instance,objective,time_s'", line_no);
      header_seen = true;
      continue;
    }
    const size_t c1 = line.find(',');
    const size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      throw ParseError("expected 3 fields", line_no);
    }
    const std::string name(line.substr(0, c1));
    const ReferenceEntry e{parse_positive(line.substr(c1 + 1, c2 - c1 - 1), line_no, "objective"),
                           parse_positive(line.substr(c2 + 1), line_no, "time_s")};
    if (!table.emplace(name, e).second) throw ParseError("duplicate instance " + name, line_no);
  }
  return table;
}

ReferenceTable read_reference_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_reference_csv(buf.str());
}

double deviation_pct(double objective, double baseline) { return 100.0 * (objective - baseline) / baseline; }

Verdict classify(double objective, double reference) {
  if (std::abs(objective - reference) <= kEqualityTolerance * std::abs(reference)) return Verdict::Equal;
  return objective < reference ? Verdict::Better : Verdict::Worse;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Better:
      return "better";
    case Verdict::Equal:
      return "equal";
    case Verdict::Worse:
      return "worse";
  }
  return "?";
}

ComparisonReport compare_to_reference(std::span<const ResultRow> rows, const ReferenceTable& ref) {
  std::vector<std::string> order;
  std::map<std::string, double> best;
  for (const auto& r : rows) {
    if (r.is_error()) continue;
    auto [it, inserted] = best.try_emplace(r.instance, r.objective);
    if (inserted) {
      order.push_back(r.instance);
    } else {
      it->second = std::min(it->second, r.objective);
    }
  }
  ComparisonReport report;
  for (const auto& name : order) {
    const auto it = ref.find(name);
    if (it == ref.end()) throw InvalidInput("instance " + name + " has no reference value");
    const double obj = best[name];
    const Verdict v = classify(obj, it->second.objective);
    report.rows.push_back({name, obj, it->second.objective, deviation_pct(obj, it->second.objective), v});
    (v == Verdict::Better ? report.better : v == Verdict::Equal ? report.equal : report.worse) += 1;
  }
  return report;
}

std::string comparison_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "instance,objective,reference,deviation_pct,verdict\n";
  for (const auto& r : report.rows) {
    out << r.instance << ',' << format_double(r.objective) << ',' << format_double(r.reference) << ','
        << format_double(r.deviation_pct) << ',' << to_string(r.verdict) << '\n';
  }
  return out.str();
}

}  // namespace mmtsp
