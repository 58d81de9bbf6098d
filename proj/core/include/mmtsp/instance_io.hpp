#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mmtsp/model.hpp"

namespace mmtsp {

// Line-oriented text format; '#' starts a comment.
//
//   NAME <name>
//   VEHICLES <k>
//   TARGETS <n>
//   VEHICLE <id> <x> <y> <speed> [required target ids...]   (k lines, ids 0..k-1)
//   TARGET <id> <x> <y>                                      (n lines, ids 0..n-1)
//
// Numbers are written in shortest round-trip form, so parse(write(inst))
// reproduces every coordinate bit for bit.
std::string write_instance(const Instance& inst);

// Throws ParseError carrying the 1-based line number.
Instance parse_instance(std::string_view document);

Instance read_instance_file(const std::filesystem::path& path);
void write_instance_file(const std::filesystem::path& path, const Instance& inst);

// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

}  // namespace mmtsp
