// SPDX-License-Identifier: Apache-2.0
//
// xlmimo - link-level simulator for XL-MIMO antenna selection
// Copyright (C) 2026 The xlmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef XLMIMO_REPORT_HPP
#define XLMIMO_REPORT_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "xlmimo/cost_model.hpp"
#include "xlmimo/engine.hpp"

namespace xlmimo {

/// Shortest locale-independent rendering with at most 9 significant digits.
std::string format_number(double x);

/// Column order of sweep CSV files.
const std::vector<std::string_view> &result_columns();

/// Header plus one row per evaluated point; omitted points are dropped.
void write_results_csv(std::ostream &out, const std::vector<AggregateResult> &results);

/// Header `K,scheme,n_star,ee_at_n_star` plus one row per entry.
void write_optimal_n_csv(std::ostream &out, const std::vector<OptimalN> &rows);

/// Integer Gflop/s grid for the four reference scenarios.
void write_complexity_table(std::ostream &out, const std::vector<ComplexityTableRow> &rows,
                            bool csv);

} // namespace xlmimo

#endif
