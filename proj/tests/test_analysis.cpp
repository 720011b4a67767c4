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

#include "oracles.hpp"

#include "xrelay/analysis.hpp"

#include <doctest.h>

using namespace xrelay;

TEST_CASE("report fixtures")
{
    const DofReport a = dof_report(5, 8);
    CHECK(a.upper_bound == 16);
    CHECK(a.sajic_dof == 16);
    CHECK_FALSE(a.reduced_full);
    CHECK_FALSE(a.reduced_dof.has_value());
    CHECK(a.time_share_dof == 10);
    CHECK(a.sajic_full);

    const DofReport b = dof_report(5, 9);
    CHECK(b.upper_bound == 18);
    CHECK(b.sajic_dof == 8);
    CHECK_FALSE(b.sajic_full);

    const DofReport c = dof_report(3, 4);
    CHECK(c.upper_bound == 8);
    CHECK(c.sajic_dof == 8);
    CHECK(c.reduced_full);
    CHECK(c.reduced_dof == 8);
    CHECK(c.time_share_dof == 6);

    CHECK(sajic_achievable_dof(5, 10) == 0);
    CHECK(sajic_achievable_dof(5, 12) == 0);
}

TEST_CASE("half-duplex presentation halves every value")
{
    const DofReport h = dof_report(5, 8).half_duplex();
    CHECK(h.upper_bound == 8);
    CHECK(h.sajic_dof == 8);
    CHECK(h.time_share_dof == 5);
    CHECK(dof_report(3, 4).half_duplex().reduced_dof == 4);
}

TEST_CASE("closed forms agree with the independent integer forms, M, N <= 64")
{
    for (int M = 1; M <= 64; ++M)
        for (int N = 1; N <= 64; ++N)
        {
            CHECK(dof_upper_bound(M, N) == oracle::upper_bound(M, N));
            CHECK(sajic_achievable_dof(M, N) == oracle::sajic_dof(M, N));
            CHECK(reduced_achievable_full(M, N) == oracle::reduced_full(M, N));
            CHECK(time_share_dof(M, N) == oracle::timeshare_dof(M, N));
            CHECK(sajic_achievable_dof(M, N) <= dof_upper_bound(M, N));
        }
}

TEST_CASE("monotone regime structure for fixed M")
{
    for (int M = 1; M <= 64; ++M)
    {
        const int knee = (8 * M) / 5;
        for (int N = 1; N <= knee; ++N)
            CHECK(sajic_achievable_dof(M, N) == 2 * N);
        for (int N = knee + 1; N + 1 < 2 * M; ++N)
            CHECK(sajic_achievable_dof(M, N + 1) < sajic_achievable_dof(M, N));
        CHECK(sajic_achievable_dof(M, 2 * M) == 0);
        if ((8 * M) % 5 == 0)
            CHECK(2 * knee == 16 * M - 8 * knee);
    }
}

TEST_CASE("reduced full-DOF implies SAJIC full-DOF, M, N <= 64")
{
    for (int M = 1; M <= 64; ++M)
        for (int N = 1; N <= 2 * M; ++N)
            if (reduced_achievable_full(M, N))
                CHECK(dof_report(M, N).sajic_full);
}

TEST_CASE("integer floor equivalences up to 1e4")
{
    long mismatches = 0;
    for (int M = 1; M <= 10000; ++M)
    {
        const int f8 = (8 * M) / 5, f4 = (4 * M) / 3;
        for (int N = 1; N <= 10000; ++N)
        {
            mismatches += ((N <= f8) != (5 * N <= 8 * M));
            mismatches += ((N <= f4) != (3 * N <= 4 * M));
        }
        // The library predicate on a stride of the same grid.
        for (int N = 1 + M % 7; N <= 10000; N += 97)
            mismatches += (reduced_achievable_full(M, N) != (N <= f4));
    }
    CHECK(mismatches == 0);
}
