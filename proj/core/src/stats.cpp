#include "mmtsp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "mmtsp/error.hpp"
#include "mmtsp/instance_io.hpp"

namespace mmtsp {

namespace {

double sorted_quantile(const std::vector<double>& x, double p) {
  const double h = static_cast<double>(x.size() - 1) * p;
  const auto lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

}  // namespace

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("summarize: empty sample");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  Summary s;
  s.count = x.size();
  s.min = x.front();
  s.max = x.back();
  s.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  s.median = sorted_quantile(x, 0.5);
  return s;
}

double quantile(std::span<const double> values, double p) {
  if (values.empty()) throw InvalidInput("quantile: empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("quantile: p outside [0, 1]");
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  return sorted_quantile(x, p);
}

std::vector<PlotRecord> emit_plot_data(std::span<const std::pair<std::string, double>> samples) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> groups;
  for (const auto& [key, value] : samples) {
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(value);
  }
  std::vector<PlotRecord> out;
  for (const auto& key : order) {
    auto& x = groups[key];
    std::sort(x.begin(), x.end());
    out.push_back({key, x.size(), x.front(), sorted_quantile(x, 0.25), sorted_quantile(x, 0.5),
                   sorted_quantile(x, 0.75), x.back(),
                   std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size())});
  }
  return out;
}

std::string plot_data_csv(std::span<const PlotRecord> records) {
  std::ostringstream out;
  out << kPlotHeader << '\n';
  for (const auto& r : records) {
    out << r.group << ',' << r.count << ',' << format_double(r.min) << ',' << format_double(r.q1) << ','
        << format_double(r.median) << ',' << format_double(r.q3) << ',' << format_double(r.max) << ','
        << format_double(r.mean) << '\n';
  }
  return out.str();
}

}  // namespace mmtsp
