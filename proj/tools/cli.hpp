// SPDX-License-Identifier: Apache-2.0
//
// xrelay: MIMO two-way X relay channel simulator
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

#ifndef XRELAY_TOOLS_CLI_HPP
#define XRELAY_TOOLS_CLI_HPP

#include "xrelay/rates.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace xrelay::cli
{
    // Stable across subcommands.
    enum ExitCode : int
    {
        kSuccess = 0,
        kVerifyFailed = 1,
        kUsage = 2,
        kInfeasible = 3,
        kNumerical = 4,
        kIoError = 5,
    };

    struct IntRange
    {
        int first = 0;
        int last = 0;
    };

    // "7" or "5..8" (inclusive). Throws std::invalid_argument.
    IntRange parse_range(const std::string &text);

    // "start:step:stop" in dB, inclusive of stop. Throws std::invalid_argument.
    std::vector<double> parse_snr_grid(const std::string &text);

    // `header` line plus one `%.6f` row per point.
    std::string curves_to_csv(const std::vector<RateCurve> &curves);

    // Entry point shared by the executable and the tests; argv[0] is the program name.
    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
}

#endif
