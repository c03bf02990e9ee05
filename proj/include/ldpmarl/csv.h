// Copyright 2026 The ldpmarl Authors.
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

#ifndef LDPMARL_CSV_H_
#define LDPMARL_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace ldpmarl {

// Shortest decimal form that round-trips to the same double. Output is a
// pure function of the value, which keeps CSV artifacts byte-stable.
std::string FormatDouble(double v);

// Minimal reader for the comma-separated files this library writes: a header
// row followed by data rows, no quoting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws ConfigError if absent.
  int Column(std::string_view name) const;
  std::vector<double> NumericColumn(std::string_view name) const;
};

CsvTable ReadCsv(const std::string& path);

std::vector<std::string> SplitString(std::string_view s, char sep);

}  // namespace ldpmarl

#endif  // LDPMARL_CSV_H_
