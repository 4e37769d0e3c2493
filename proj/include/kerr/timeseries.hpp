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

#ifndef KERR_TIMESERIES_HPP
#define KERR_TIMESERIES_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace kerr {

// Time grid plus per-time scalar observables. Column 0 is always "t".
// A NaN cell is a null marker: the writer emits an empty field for it.
struct TimeSeries {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // Ordered key/value pairs echoed verbatim into the CSV header.
  std::vector<std::pair<std::string, std::string>> metadata;
};

// Deterministic CSV: '#'-prefixed metadata lines, a header row, then data
// rows with 17 significant digits, '.' decimal separator and '\n' endings.
// Identical input produces byte-identical output.
void write_csv(const TimeSeries& series, std::ostream& out);

// %.17g rendering used for every numeric cell (shared so tests can pin it).
std::string format_cell(double value);

}  // namespace kerr

#endif  // KERR_TIMESERIES_HPP
