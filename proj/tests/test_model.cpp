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

#include "xrelay/errors.hpp"
#include "xrelay/model.hpp"

#include <doctest.h>

#include <set>

using namespace xrelay;

namespace
{
    std::array<int, 4> alloc_of(int M, int N)
    {
        NetworkConfig cfg;
        cfg.M = M;
        cfg.N = N;
        return allocate_streams(cfg).per_pair;
    }
}

TEST_CASE("pair table and labels")
{
    CHECK(pair_label(0) == "13");
    CHECK(pair_label(1) == "14");
    CHECK(pair_label(2) == "23");
    CHECK(pair_label(3) == "24");
    CHECK(pair_contains(0, 0));
    CHECK(pair_contains(0, 2));
    CHECK_FALSE(pair_contains(0, 1));
    CHECK_FALSE(pair_contains(3, 0));
}

TEST_CASE("NetworkConfig validation")
{
    NetworkConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.M = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.noise_var = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.power_P = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);

    const NetworkConfig c = NetworkConfig::from_snr_db(5, 8, 30.0);
    CHECK(c.power_P / c.noise_var == doctest::Approx(1000.0));
}

TEST_CASE("draw_channels is deterministic and correctly shaped")
{
    NetworkConfig cfg;
    cfg.M = 5;
    cfg.N = 8;
    const ChannelRealization a = draw_channels(cfg, 42), b = draw_channels(cfg, 42), c = draw_channels(cfg, 43);
    bool differs = false;
    for (int i = 0; i < kNodes; ++i)
    {
        CHECK(a.uplink[i].rows() == 8);
        CHECK(a.uplink[i].cols() == 5);
        CHECK(a.downlink[i].rows() == 5);
        CHECK(a.downlink[i].cols() == 8);
        CHECK(a.uplink[i] == b.uplink[i]);
        CHECK(a.downlink[i] == b.downlink[i]);
        differs = differs || a.uplink[i] != c.uplink[i];
        CHECK(oracle::elimination_rank(a.uplink[i]) == 5);
        CHECK(numerical_rank(a.downlink[i]) == 5);
    }
    CHECK(differs);
    CHECK(a.seed == 42);
}

TEST_CASE("channel entries have unit complex variance")
{
    NetworkConfig cfg;
    cfg.M = 5;
    cfg.N = 8;
    double sum = 0.0, re = 0.0, re2 = 0.0;
    long count = 0;
    std::uint64_t seed = 0;
    while (count < 1'000'000)
    {
        const ChannelRealization ch = draw_channels(cfg, seed++);
        for (int i = 0; i < kNodes; ++i)
            for (const ComplexMatrix *H : {&ch.uplink[i], &ch.downlink[i]})
                for (Eigen::Index k = 0; k < H->size(); ++k)
                {
                    const Complex h = H->data()[k];
                    sum += std::norm(h);
                    re += h.real();
                    re2 += h.real() * h.real();
                    ++count;
                }
    }
    const double n = static_cast<double>(count);
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(re / n) < 0.01);
    CHECK(re2 / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("allocate_streams fixtures")
{
    CHECK(alloc_of(5, 8) == std::array<int, 4>{2, 2, 2, 2});
    CHECK(alloc_of(5, 9) == std::array<int, 4>{1, 1, 1, 1});
    CHECK(alloc_of(5, 7) == std::array<int, 4>{1, 2, 2, 2});
    CHECK(alloc_of(5, 6) == std::array<int, 4>{1, 2, 2, 1});
    CHECK(alloc_of(5, 5) == std::array<int, 4>{1, 1, 1, 2});
    CHECK_THROWS_AS(alloc_of(3, 7), InfeasibleRegime);
    CHECK_THROWS_AS(alloc_of(3, 6), InfeasibleRegime);
}

TEST_CASE("full-DOF table matches the independent table for every N")
{
    for (int N = 1; N <= 64; ++N)
    {
        const StreamAllocation a = full_dof_allocation(N);
        CHECK(a.per_pair == oracle::full_table(N));
        CHECK(a.total() == N);
    }
}

TEST_CASE("allocation totals and per-pair caps over M <= 16, N < 2M")
{
    for (int M = 1; M <= 16; ++M)
        for (int N = 1; N < 2 * M; ++N)
        {
            NetworkConfig cfg;
            cfg.M = M;
            cfg.N = N;
            const StreamAllocation a = allocate_streams(cfg);
            CHECK_NOTHROW(a.validate());
            CHECK((a.total() == N) == (5 * N <= 8 * M));
            if (5 * N > 8 * M)
                CHECK(a.total() == 4 * (2 * M - N));
            for (int d : a.per_pair)
                CHECK(d <= 2 * std::min(M, N) - N);
        }
}

TEST_CASE("StreamAllocation accounting")
{
    StreamAllocation a;
    a.per_pair = {1, 2, 3, 4};
    CHECK(a.total() == 10);
    CHECK(a.offset(0) == 0);
    CHECK(a.offset(2) == 3);
    CHECK(a.streams_at(0) == 3); // pairs 13, 14
    CHECK(a.streams_at(1) == 7); // 23, 24
    CHECK(a.streams_at(2) == 4); // 13, 23
    CHECK(a.streams_at(3) == 6); // 14, 24
    CHECK_NOTHROW(a.validate());

    a.relay_null_splits = RelayNullSplits{1, 2, 4, 0};
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);
    a.relay_null_splits.reset();
    a.per_pair[1] = -1;
    CHECK_THROWS_AS(a.validate(), std::invalid_argument);
}

TEST_CASE("derive_seed is deterministic and spreads inputs")
{
    CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 20; ++a)
        for (std::uint64_t b = 0; b < 50; ++b)
            seen.insert(derive_seed(7, a, b));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(1, 0, 1) != derive_seed(1, 1, 0));
}
