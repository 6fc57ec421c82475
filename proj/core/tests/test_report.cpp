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

#include <doctest.h>

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "xlmimo/report.hpp"

using namespace xlmimo;

namespace {

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    return out;
}

} // namespace

TEST_CASE("number formatting")
{
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.5) == "1.5");
    CHECK(format_number(123456789.0) == "123456789");
    CHECK(format_number(1234567891.0) == "1.23456789e+09");
    CHECK(format_number(1.0 / 3.0) == "0.333333333");
    CHECK(format_number(-80.0) == "-80");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("result CSV")
{
    AggregateResult a;
    a.value = 3;
    a.scheme = Scheme::zf;
    a.realizations = 10;
    a.skipped = 1;
    a.se_ul.mean = 1.25;
    a.throughput.mean = 2.5e7;
    a.power_w = {0.1, 1e-3, 1e-13, 0.25, 0.0, 1e-11};
    AggregateResult omitted = a;
    omitted.omitted = true;

    std::ostringstream out;
    write_results_csv(out, {a, omitted});
    std::istringstream in(out.str());
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(!std::getline(in, extra));

    const auto cols = split(header);
    REQUIRE(cols.size() == result_columns().size());
    CHECK(header ==
          "sweep_variable,value,scheme,as_enabled,realizations,se_ul,se_dl,throughput_bps,"
          "ee_bits_per_joule,p_total_w,flops_per_s,n_act_mean,s_ul_dbm,i_ul_dbm,n_ul_dbm,"
          "s_dl_dbm,i_dl_dbm,n_dl_dbm,skipped");
    const auto cells = split(row);
    REQUIRE(cells.size() == cols.size());
    CHECK(cells[0] == "N");
    CHECK(cells[1] == "3");
    CHECK(cells[2] == "zf");
    CHECK(cells[3] == "1");
    CHECK(cells[5] == "1.25");
    CHECK(cells[7] == "25000000");
    CHECK(cells[12] == "20");
    CHECK(cells[16] == "-inf");
    CHECK(cells[17] == "-80");
    CHECK(cells[18] == "1");
}

TEST_CASE("header is written for empty results")
{
    std::ostringstream out;
    write_results_csv(out, {});
    const std::string text = out.str();
    CHECK(text.rfind("sweep_variable,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1);
}

TEST_CASE("optimal-N CSV")
{
    OptimalN o;
    o.K = 4;
    o.scheme = Scheme::mr;
    o.n_star = 1;
    o.ee_star = 6.1e7;
    std::ostringstream out;
    write_optimal_n_csv(out, {o});
    CHECK(out.str() == "K,scheme,n_star,ee_at_n_star\n4,mr,1,61000000\n");
}

TEST_CASE("complexity table")
{
    std::ostringstream csv;
    write_complexity_table(csv, complexity_table(), true);
    CHECK(csv.str() == "M,N,K,no_as_mr,as_mr,no_as_zf,as_zf\n"
                       "32,4,2,4,1,4,1\n"
                       "128,16,8,62,12,76,14\n"
                       "512,64,32,990,369,3848,819\n"
                       "2048,256,128,15834,17551,702031,126822\n");
    std::ostringstream text;
    write_complexity_table(text, complexity_table(), false);
    CHECK(text.str().find("702031") != std::string::npos);
}
