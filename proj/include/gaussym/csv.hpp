// Copyright 2026 The Gaussym Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAUSSYM_CSV_HPP
#define GAUSSYM_CSV_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gaussym/types.hpp"

namespace gaussym::io {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Fixed "%.12g" rendering keeps output byte-identical across runs while
// round-tripping doubles to within one ulp of what the plots can resolve.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

inline void write_csv(const Table& t, std::ostream& os) {
  if (t.header.empty()) throw FormatError("refusing to write empty header");
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) os << ',';
    os << t.header[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    if (row.size() != t.header.size()) {
      throw FormatError("row width does not match header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_number(row[i]);
    }
    os << '\n';
  }
}

inline void write_csv_file(const Table& t, const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // binary: fixed newlines
  if (!os) throw FormatError("cannot open " + path + " for writing");
  write_csv(t, os);
}

inline Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line) || line.empty()) {
    throw FormatError("missing CSV header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.header.push_back(cell);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw FormatError("non-numeric cell: " + cell);
      }
      row.push_back(v);
    }
    if (row.size() != t.header.size()) {
      throw FormatError("row width does not match header");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table read_csv_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path);
  return read_csv(is);
}

}  // namespace gaussym::io

#endif  // GAUSSYM_CSV_HPP
