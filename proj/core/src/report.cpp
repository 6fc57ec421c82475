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

#include "xlmimo/report.hpp"

#include <array>
#include <charconv>
#include <iomanip>

namespace xlmimo {

std::string format_number(double x)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                   std::chars_format::general, 9);
    return std::string(buf.data(), res.ptr);
}

const std::vector<std::string_view> &result_columns()
{
    static const std::vector<std::string_view> columns{
        "sweep_variable", "value",       "scheme",         "as_enabled", "realizations",
        "se_ul",          "se_dl",       "throughput_bps", "ee_bits_per_joule",
        "p_total_w",      "flops_per_s", "n_act_mean",     "s_ul_dbm",   "i_ul_dbm",
        "n_ul_dbm",       "s_dl_dbm",    "i_dl_dbm",       "n_dl_dbm",   "skipped"};
    return columns;
}

void write_results_csv(std::ostream &out, const std::vector<AggregateResult> &results)
{
    const auto &columns = result_columns();
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
    out << '\n';

    for (const auto &r : results)
    {
        if (r.omitted)
            continue;
        const ReceivedPower dbm = r.power_dbm();
        out << to_string(r.variable) << ',' << r.value << ',' << to_string(r.scheme) << ','
            << (r.as_enabled ? 1 : 0) << ',' << r.realizations << ',' << format_number(r.se_ul.mean)
            << ',' << format_number(r.se_dl.mean) << ',' << format_number(r.throughput.mean) << ','
            << format_number(r.ee.mean) << ',' << format_number(r.p_total.mean) << ','
            << format_number(r.flops_per_second.mean) << ',' << format_number(r.n_act.mean) << ','
            << format_number(dbm.s_ul) << ',' << format_number(dbm.i_ul) << ','
            << format_number(dbm.n_ul) << ',' << format_number(dbm.s_dl) << ','
            << format_number(dbm.i_dl) << ',' << format_number(dbm.n_dl) << ',' << r.skipped
            << '\n';
    }
}

void write_optimal_n_csv(std::ostream &out, const std::vector<OptimalN> &rows)
{
    out << "K,scheme,n_star,ee_at_n_star\n";
    for (const auto &r : rows)
        out << r.K << ',' << to_string(r.scheme) << ',' << r.n_star << ','
            << format_number(r.ee_star) << '\n';
}

void write_complexity_table(std::ostream &out, const std::vector<ComplexityTableRow> &rows,
                            bool csv)
{
    if (csv)
    {
        out << "M,N,K,no_as_mr,as_mr,no_as_zf,as_zf\n";
        for (const auto &r : rows)
            out << r.M << ',' << r.N << ',' << r.K << ',' << round_half_up(r.no_as_mr) << ','
                << round_half_up(r.as_mr) << ',' << round_half_up(r.no_as_zf) << ','
                << round_half_up(r.as_zf) << '\n';
        return;
    }
    out << "Computational complexity [Gflop/s]\n";
    out << std::setw(18) << "(M, N, K)" << std::setw(12) << "MR no-AS" << std::setw(12) << "MR AS"
        << std::setw(12) << "ZF no-AS" << std::setw(12) << "ZF AS" << '\n';
    for (const auto &r : rows)
    {
        const std::string label = "(" + std::to_string(r.M) + ", " + std::to_string(r.N) + ", " +
                                  std::to_string(r.K) + ")";
        out << std::setw(18) << label << std::setw(12) << round_half_up(r.no_as_mr) << std::setw(12)
            << round_half_up(r.as_mr) << std::setw(12) << round_half_up(r.no_as_zf)
            << std::setw(12) << round_half_up(r.as_zf) << '\n';
    }
}

} // namespace xlmimo
