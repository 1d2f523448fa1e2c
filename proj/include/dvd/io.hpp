#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dvd/instance.hpp"

namespace dvd {

// Instance file format. Sections must appear in order: one problem line,
// then edges, then thresholds, then radii. Comment lines start with 'c'
// and may appear anywhere; vertices are 1-indexed on disk.
//
//   c optional comment
//   p dvd <n> <m>
//   e <u> <v>        (u < v, m lines)
//   t <v> <value>    (optional, default 1, at most once per vertex)
//   d <v> <value>    (optional, default 1, at most once per vertex)
DvdInstance read_instance(std::istream& in, const std::string& name);
DvdInstance load_instance(const std::string& path);
void write_instance(std::ostream& out, const DvdInstance& inst);
void save_instance(const std::string& path, const DvdInstance& inst);

// Solution listing: "SIZE <k>" then "S <v1> <v2> ..." (1-indexed,
// ascending; the S line is present even when the set is empty).
void write_solution(std::ostream& out, const std::vector<int>& selected);
std::vector<int> read_solution(std::istream& in, const std::string& name);

}  // namespace dvd
