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

#ifndef XLMIMO_TOOLS_CLI_HPP
#define XLMIMO_TOOLS_CLI_HPP

#include <ostream>

namespace xlmimo::cli {

/// Process exit codes.
enum ExitCode : int
{
    exit_ok = 0,
    exit_failure = 1,
    exit_usage = 2,
    exit_infeasible = 3,
};

/// Runs the `xlmimo` command line. argv[0] is the program name.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace xlmimo::cli

#endif
