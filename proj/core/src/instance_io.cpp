#include "mmtsp/instance_io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "mmtsp/error.hpp"

namespace mmtsp {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, int line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("invalid " + std::string(what) + " '" + std::string(tok) + "'", line);
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw Error("format_double: conversion failed");
  return std::string(buf, ptr);
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << "NAME " << inst.name() << '\n';
  out << "VEHICLES " << inst.num_vehicles() << '\n';
  out << "TARGETS " << inst.num_targets() << '\n';
  for (VehicleId v = 0; v < inst.num_vehicles(); ++v) {
    const auto& veh = inst.vehicle(v);
    out << "VEHICLE " << v << ' ' << format_double(veh.depot.x) << ' ' << format_double(veh.depot.y) << ' '
        << format_double(veh.speed);
    for (TargetId t : veh.required) out << ' ' << t;
    out << '\n';
  }
  for (TargetId t = 0; t < inst.num_targets(); ++t) {
    const Point& p = inst.targets()[static_cast<size_t>(t)];
    out << "TARGET " << t << ' ' << format_double(p.x) << ' ' << format_double(p.y) << '\n';
  }
  return out.str();
}

Instance parse_instance(std::string_view document) {
  std::string name;
  int k = -1, n = -1;
  std::vector<VehicleSpec> vehicles;
  std::vector<Point> targets;
  std::map<TargetId, std::pair<VehicleId, int>> required_by;  // target -> (vehicle, line)

  int line_no = 0;
  size_t pos = 0;
  while (pos <= document.size()) {
    const size_t end = std::min(document.find('\n', pos), document.size());
    std::string_view line = document.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_ws(line);
    if (tok.empty()) continue;

    const std::string_view key = tok[0];
    if (key == "NAME") {
      if (tok.size() != 2) throw ParseError("NAME expects one token", line_no);
      name = std::string(tok[1]);
    } else if (key == "VEHICLES" || key == "TARGETS") {
      if (tok.size() != 2) throw ParseError(std::string(key) + " expects one count", line_no);
      const int count = parse_number<int>(tok[1], line_no, "count");
      if (count < 0) throw ParseError("negative count", line_no);
      (key == "VEHICLES" ? k : n) = count;
    } else if (key == "VEHICLE") {
      if (k < 0 || n < 0) throw ParseError("VEHICLE before the VEHICLES and TARGETS counts", line_no);
      if (tok.size() < 5) throw ParseError("VEHICLE expects id, x, y, speed", line_no);
      const int id = parse_number<int>(tok[1], line_no, "vehicle id");
      if (id != static_cast<int>(vehicles.size())) {
        throw ParseError("expected vehicle id " + std::to_string(vehicles.size()), line_no);
      }
      if (id >= k) throw ParseError("more VEHICLE lines than declared", line_no);
      VehicleSpec spec{{parse_number<double>(tok[2], line_no, "x"), parse_number<double>(tok[3], line_no, "y")},
                       parse_number<double>(tok[4], line_no, "speed"),
                       {}};
      for (size_t i = 5; i < tok.size(); ++i) {
        const TargetId t = parse_number<int>(tok[i], line_no, "target id");
        if (t < 0 || t >= n) throw ParseError("required target " + std::to_string(t) + " out of range", line_no);
        const auto [it, inserted] = required_by.emplace(t, std::make_pair(id, line_no));
        if (!inserted) {
          throw ParseError("target " + std::to_string(t) + " is required by both vehicle " +
                               std::to_string(it->second.first) + " and vehicle " + std::to_string(id),
                           line_no);
        }
        spec.required.push_back(t);
      }
      vehicles.push_back(std::move(spec));
    } else if (key == "TARGET") {
      if (n < 0) throw ParseError("TARGET before the TARGETS count", line_no);
      if (tok.size() != 4) throw ParseError("TARGET expects id, x, y", line_no);
      const int id = parse_number<int>(tok[1], line_no, "target id");
      if (id != static_cast<int>(targets.size())) {
        throw ParseError("expected target id " + std::to_string(targets.size()), line_no);
      }
      if (id >= n) throw ParseError("more TARGET lines than declared", line_no);
      targets.push_back({parse_number<double>(tok[2], line_no, "x"), parse_number<double>(tok[3], line_no, "y")});
    } else {
      throw ParseError("unknown keyword '" + std::string(key) + "'", line_no);
    }
  }

  if (k < 0) throw ParseError("missing VEHICLES", 0);
  if (n < 0) throw ParseError("missing TARGETS", 0);
  if (static_cast<int>(vehicles.size()) != k) {
    throw ParseError("declared " + std::to_string(k) + " vehicles, found " + std::to_string(vehicles.size()), 0);
  }
  if (static_cast<int>(targets.size()) != n) {
    throw ParseError("declared " + std::to_string(n) + " targets, found " + std::to_string(targets.size()), 0);
  }
  try {
    return Instance(std::move(name), std::move(targets), std::move(vehicles));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), 0);
  }
}

Instance read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

void write_instance_file(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << write_instance(inst);
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace mmtsp
