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

#ifndef GAUSSYM_SERIALIZATION_HPP
#define GAUSSYM_SERIALIZATION_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gaussym/correlation.hpp"
#include "gaussym/types.hpp"

// Binary container for a correlation matrix (see docs/serialization.md):
//
//   offset  size        field
//   0       8           magic "GSYMCM01" (ASCII, includes format version)
//   8       4           ell, uint32 little-endian
//   12      8           tol_herm, float64 little-endian
//   20      8           tol_spec, float64 little-endian
//   28      8           clip_eps, float64 little-endian
//   36      16*ell^2    G, row-major, each entry re then im float64 LE
//   ...     16*ell^2    F, same encoding
//
// Reading validates the magic and reconstructs through the checked
// constructor, so corrupt payloads surface as FormatError or InvalidState.

namespace gaussym::io {

inline constexpr char kMagic[8] = {'G', 'S', 'Y', 'M', 'C', 'M', '0', '1'};

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    v = __builtin_bswap32(v);
  }
  os.write(reinterpret_cast<const char*>(&v), 4);
}

inline void put_f64(std::ostream& os, double x) {
  auto v = std::bit_cast<std::uint64_t>(x);
  if constexpr (std::endian::native == std::endian::big) {
    v = __builtin_bswap64(v);
  }
  os.write(reinterpret_cast<const char*>(&v), 8);
}

inline std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  if (!is) throw FormatError("truncated payload while reading uint32");
  if constexpr (std::endian::native == std::endian::big) {
    v = __builtin_bswap32(v);
  }
  return v;
}

inline double get_f64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  if (!is) throw FormatError("truncated payload while reading float64");
  if constexpr (std::endian::native == std::endian::big) {
    v = __builtin_bswap64(v);
  }
  return std::bit_cast<double>(v);
}

inline void put_block(std::ostream& os, const ComplexMatrix<double>& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      put_f64(os, m(i, j).real());
      put_f64(os, m(i, j).imag());
    }
  }
}

inline ComplexMatrix<double> get_block(std::istream& is, Index n) {
  ComplexMatrix<double> m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      m(i, j) = {re, im};
    }
  }
  return m;
}

}  // namespace detail

inline void write_binary(const CorrelationMatrix<double>& c,
                         std::ostream& os) {
  os.write(kMagic, sizeof(kMagic));
  detail::put_u32(os, static_cast<std::uint32_t>(c.modes()));
  detail::put_f64(os, c.tolerances().tol_herm);
  detail::put_f64(os, c.tolerances().tol_spec);
  detail::put_f64(os, c.tolerances().clip_eps);
  detail::put_block(os, c.normal());
  detail::put_block(os, c.pairing());
  if (!os) throw FormatError("write failed");
}

inline CorrelationMatrix<double> read_binary(std::istream& is) {
  char magic[8] = {};
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw FormatError("bad magic: not a correlation-matrix payload");
  }
  const std::uint32_t ell = detail::get_u32(is);
  if (ell == 0 || ell > (1u << 20)) {
    throw FormatError("unreasonable mode count in header");
  }
  SpectralTolerances<double> tol;
  tol.tol_herm = detail::get_f64(is);
  tol.tol_spec = detail::get_f64(is);
  tol.clip_eps = detail::get_f64(is);
  ComplexMatrix<double> g = detail::get_block(is, ell);
  ComplexMatrix<double> f = detail::get_block(is, ell);
  return CorrelationMatrix<double>(std::move(g), std::move(f), tol);
}

inline void write_binary_file(const CorrelationMatrix<double>& c,
                              const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path + " for writing");
  write_binary(c, os);
}

inline CorrelationMatrix<double> read_binary_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path);
  return read_binary(is);
}

// Debug-friendly JSON mirror of the binary container, same fields.
inline nlohmann::json to_json(const CorrelationMatrix<double>& c) {
  auto block = [](const ComplexMatrix<double>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (Index j = 0; j < m.cols(); ++j) {
        row.push_back({m(i, j).real(), m(i, j).imag()});
      }
      rows.push_back(std::move(row));
    }
    return rows;
  };
  return nlohmann::json{
      {"format", "gaussym-correlation"},
      {"version", 1},
      {"ell", c.modes()},
      {"tolerances",
       {{"tol_herm", c.tolerances().tol_herm},
        {"tol_spec", c.tolerances().tol_spec},
        {"clip_eps", c.tolerances().clip_eps}}},
      {"G", block(c.normal())},
      {"F", block(c.pairing())}};
}

inline CorrelationMatrix<double> from_json(const nlohmann::json& j) {
  try {
    if (j.at("format") != "gaussym-correlation" || j.at("version") != 1) {
      throw FormatError("unknown format or version");
    }
    const Index ell = j.at("ell").get<Index>();
    auto block = [ell](const nlohmann::json& rows) {
      if (rows.size() != static_cast<std::size_t>(ell)) {
        throw FormatError("block row count does not match ell");
      }
      ComplexMatrix<double> m(ell, ell);
      for (Index i = 0; i < ell; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (row.size() != static_cast<std::size_t>(ell)) {
          throw FormatError("block column count does not match ell");
        }
        for (Index jx = 0; jx < ell; ++jx) {
          const auto& e = row.at(static_cast<std::size_t>(jx));
          m(i, jx) = {e.at(0).get<double>(), e.at(1).get<double>()};
        }
      }
      return m;
    };
    SpectralTolerances<double> tol;
    tol.tol_herm = j.at("tolerances").at("tol_herm").get<double>();
    tol.tol_spec = j.at("tolerances").at("tol_spec").get<double>();
    tol.clip_eps = j.at("tolerances").at("clip_eps").get<double>();
    return CorrelationMatrix<double>(block(j.at("G")), block(j.at("F")),
                                     tol);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed correlation JSON: ") +
                      e.what());
  }
}

}  // namespace gaussym::io

#endif  // GAUSSYM_SERIALIZATION_HPP
