// Copyright 2026 The kerrcoupler Authors
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

#include "kerr/timeseries.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "kerr/errors.hpp"
#include "kerr/version.hpp"

namespace kerr {

std::string format_cell(double value) {
  if (std::isnan(value)) return "";  // null marker
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void write_csv(const TimeSeries& series, std::ostream& out) {
  out << "# kerrcoupler " << kVersion << "\n";
  for (const auto& [key, value] : series.metadata)
    out << "# " << key << " = " << value << "\n";

  for (size_t j = 0; j < series.columns.size(); ++j)
    out << (j ? "," : "") << series.columns[j];
  out << "\n";

  for (const auto& row : series.rows) {
    if (row.size() != series.columns.size())
      throw ValidationError("write_csv: row width differs from column count");
    for (size_t j = 0; j < row.size(); ++j)
      out << (j ? "," : "") << format_cell(row[j]);
    out << "\n";
  }
}

}  // namespace kerr
