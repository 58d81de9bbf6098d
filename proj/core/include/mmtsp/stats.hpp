#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mmtsp {

struct Summary {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double median = 0.0;
};

// Throws InvalidInput on an empty sample.
Summary summarize(std::span<const double> values);

// Linear interpolation between closest ranks: position h = (n-1)p in the
// sorted sample, result x[floor h] + (h - floor h)(x[floor h + 1] - x[floor h]).
// p in [0, 1]; throws InvalidInput on an empty sample.
double quantile(std::span<const double> values, double p);

struct PlotRecord {
  std::string group;
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

// One record per distinct group key, in order of first appearance.
std::vector<PlotRecord> emit_plot_data(std::span<const std::pair<std::string, double>> samples);

inline constexpr const char* kPlotHeader = "group,count,min,q1,median,q3,max,mean";
std::string plot_data_csv(std::span<const PlotRecord> records);

}  // namespace mmtsp
