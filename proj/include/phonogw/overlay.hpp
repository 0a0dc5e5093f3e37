// Copyright 2026 The phonogw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Detector sensitivity curves supplied as CSV for comparison plots.

#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "phonogw/config.hpp"
#include "phonogw/error.hpp"

namespace phonogw {

struct OverlayCurve {
  std::string source;
  std::vector<double> frequency_hz;
  std::vector<double> characteristic_strain;
  std::vector<std::string> warnings;
};

inline OverlayCurve overlay_ingest_stream(std::istream& in, const std::string& source) {
  OverlayCurve curve;
  curve.source = source;
  std::string line;
  int lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header) {
      require(t == "frequency_hz,characteristic_strain", ErrorKind::Parse,
              fmt::format("{}:{}: expected header 'frequency_hz,characteristic_strain'", source,
                          lineno));
      header = true;
      continue;
    }
    const auto fields = detail::split_list(t);
    require(fields.size() == 2, ErrorKind::Parse,
            fmt::format("{}:{}: expected 2 columns, got {}", source, lineno, fields.size()));
    const std::string where = fmt::format("{}:{}", source, lineno);
    const double f = detail::parse_number(fields[0], where);
    const double h = detail::parse_number(fields[1], where);
    require(f > 0 && h > 0, ErrorKind::Parse,
            fmt::format("{}: frequency and strain must be positive", where));
    require(curve.frequency_hz.empty() || f > curve.frequency_hz.back(), ErrorKind::Parse,
            fmt::format("{}: frequency {} does not increase", where, f));
    curve.frequency_hz.push_back(f);
    curve.characteristic_strain.push_back(h);
  }
  if (curve.frequency_hz.empty()) {
    curve.warnings.push_back(fmt::format("{}: overlay is empty", source));
  }
  return curve;
}

inline OverlayCurve overlay_ingest(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Parse, fmt::format("cannot open overlay '{}'", path));
  return overlay_ingest_stream(in, path);
}

}  // namespace phonogw
