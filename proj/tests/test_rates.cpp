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

#include "xrelay/analysis.hpp"
#include "xrelay/errors.hpp"
#include "xrelay/rates.hpp"
#include "xrelay/reduced.hpp"
#include "xrelay/sajic.hpp"

#include <doctest.h>

#include <cmath>

using namespace xrelay;

namespace
{
    NetworkConfig config(int M, int N, double snr_db = 0.0)
    {
        return NetworkConfig::from_snr_db(M, N, snr_db);
    }

    std::vector<double> grid(double a, double step, double b)
    {
        std::vector<double> g;
        for (double x = a; x <= b + 1e-9; x += step)
            g.push_back(x);
        return g;
    }
}

TEST_CASE("least-squares slope over the top half")
{
    std::vector<RatePoint> pts;
    for (int k = 0; k < 9; ++k)
    {
        RatePoint p;
        p.snr_db = 5.0 * k;
        // Flat over the low half, slope 5 per 3 dB on the top half.
        p.mean_sum_rate = k < 4 ? 1.0 : 1.0 + 5.0 * (p.snr_db - 20.0) / 3.0;
        p.trials = 1;
        pts.push_back(p);
    }
    CHECK(fit_slope_per_3db(pts) == doctest::Approx(5.0).epsilon(1e-12));

    // Two points minimum.
    std::vector<RatePoint> two(pts.end() - 2, pts.end());
    CHECK(fit_slope_per_3db(two) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("instantaneous rates are consistent")
{
    const NetworkConfig cfg = config(5, 8, 20.0);
    const ChannelRealization ch = draw_channels(cfg, 1);
    const TransceiverDesign d = design_full(ch, cfg);
    const PairRates r = instantaneous_rates(d, ch, cfg);
    double sum = 0.0;
    for (int p = 0; p < kPairs; ++p)
    {
        const auto n = kPairNodes[static_cast<std::size_t>(p)];
        CHECK(r.mac[p] > 0.0);
        CHECK(r.bc[p] > 0.0);
        CHECK(r.pair[p] == std::min(r.mac[p], r.bc[p]));
        CHECK(r.bc[p] == std::min(r.bc_at_node[n.left][p], r.bc_at_node[n.right][p]));
        for (int i = 0; i < kNodes; ++i)
            if (!pair_contains(p, i))
                CHECK(r.bc_at_node[i][p] == 0.0);
        sum += r.pair[p];
    }
    CHECK(r.sum_rate == doctest::Approx(2.0 * sum));
}

TEST_CASE("both receivers of a pair see the same aligned signal term")
{
    for (std::uint64_t s = 0; s < 10; ++s)
    {
        const NetworkConfig cfg = config(5, 8, 30.0);
        const ChannelRealization ch = draw_channels(cfg, s);
        const TransceiverDesign d = design_full(ch, cfg);
        for (int p = 0; p < kPairs; ++p)
        {
            const auto n = kPairNodes[static_cast<std::size_t>(p)];
            const int off = d.allocation.offset(p), dp = d.allocation.per_pair[static_cast<std::size_t>(p)];
            auto signal = [&](int node)
            {
                const auto &fs = d.filter_streams[node];
                ComplexMatrix T(dp, dp);
                for (int k = 0; k < dp; ++k)
                {
                    const auto row = std::find(fs.begin(), fs.end(), off + k) - fs.begin();
                    T.row(k) = d.receive_filters[node].row(row) * ch.downlink[node] *
                               d.relay_beamformers.middleCols(off, dp);
                }
                return T;
            };
            const ComplexMatrix a = signal(n.left), b = signal(n.right);
            CHECK((a - b).norm() <= 1e-9 * a.norm());
        }
    }
}

TEST_CASE("3 dB more power adds about 2N bits at (5,8)")
{
    double diff = 0.0;
    const int draws = 100;
    for (std::uint64_t s = 0; s < draws; ++s)
    {
        const NetworkConfig lo = config(5, 8, 30.0), hi = config(5, 8, 33.0);
        const ChannelRealization ch = draw_channels(lo, s);
        const TransceiverDesign d = design_full(ch, lo);
        diff += instantaneous_rates(d, ch, hi).sum_rate - instantaneous_rates(d, ch, lo).sum_rate;
    }
    CHECK(diff / draws == doctest::Approx(16.0).epsilon(2.0 / 16.0));
}

TEST_CASE("sum rate grows without bound as noise vanishes")
{
    const NetworkConfig base = config(3, 4, 0.0);
    const ChannelRealization ch = draw_channels(base, 3);
    const TransceiverDesign d = design_full(ch, base);
    double prev = 0.0;
    for (double snr : {20.0, 60.0, 100.0, 140.0})
    {
        const double r = instantaneous_rates(d, ch, config(3, 4, snr)).sum_rate;
        CHECK(r > prev + 20.0);
        prev = r;
    }
}

TEST_CASE("sweeps are deterministic and independent of thread count")
{
    SweepOptions one;
    one.trials = 30;
    one.seed = 9;
    SweepOptions many = one;
    many.threads = 4;
    const NetworkConfig cfg = config(4, 6);
    const auto g = grid(10, 10, 40);
    for (Scheme s : {Scheme::sajic, Scheme::timeshare})
    {
        const RateCurve a = ergodic_sweep(cfg, s, g, one), b = ergodic_sweep(cfg, s, g, one),
                        c = ergodic_sweep(cfg, s, g, many);
        REQUIRE(a.points.size() == g.size());
        for (std::size_t k = 0; k < g.size(); ++k)
        {
            CHECK(a.points[k].mean_sum_rate == b.points[k].mean_sum_rate);
            CHECK(a.points[k].mean_sum_rate == c.points[k].mean_sum_rate);
            CHECK(a.points[k].std_err == c.points[k].std_err);
        }
        CHECK(a.fitted_slope_per_3db == c.fitted_slope_per_3db);
    }
}

TEST_CASE("curve invariants and monotonicity")
{
    SweepOptions o;
    o.trials = 100;
    const auto g = grid(0, 10, 60);
    for (Scheme s : {Scheme::sajic, Scheme::reduced, Scheme::timeshare})
    {
        const RateCurve c = ergodic_sweep(config(3, 4), s, g, o);
        CHECK(c.scheme == s);
        CHECK(c.M == 3);
        CHECK(c.N == 4);
        for (std::size_t k = 0; k < c.points.size(); ++k)
        {
            CHECK(c.points[k].trials == 100);
            CHECK(c.points[k].mean_sum_rate >= 0.0);
            CHECK(c.points[k].std_err >= 0.0);
            if (k > 0)
            {
                CHECK(c.points[k].snr_db > c.points[k - 1].snr_db);
                CHECK(c.points[k].mean_sum_rate > c.points[k - 1].mean_sum_rate);
            }
        }
    }
}

TEST_CASE("slope law on small fixtures")
{
    SweepOptions o;
    o.trials = 200;
    const auto g = grid(40, 5, 60);
    struct Case
    {
        Scheme s;
        int M, N, dof;
    };
    for (const Case &c : {Case{Scheme::sajic, 3, 4, 8}, Case{Scheme::reduced, 3, 4, 8},
                          Case{Scheme::timeshare, 3, 3, 6}, Case{Scheme::timeshare, 3, 4, 6},
                          Case{Scheme::sajic, 5, 9, 8}})
    {
        const RateCurve r = ergodic_sweep(config(c.M, c.N), c.s, g, o);
        CHECK_MESSAGE(std::abs(r.fitted_slope_per_3db - c.dof) <= 0.1 * c.dof,
                      to_string(c.s) << " M=" << c.M << " N=" << c.N << " slope " << r.fitted_slope_per_3db);
    }
}

TEST_CASE("SAJIC outgrows time sharing when N > M")
{
    SweepOptions o;
    o.trials = 200;
    const auto g = grid(40, 10, 60);
    const RateCurve a = ergodic_sweep(config(3, 4), Scheme::sajic, g, o);
    const RateCurve b = ergodic_sweep(config(3, 4), Scheme::timeshare, g, o);
    CHECK(a.fitted_slope_per_3db > b.fitted_slope_per_3db);
}

TEST_CASE("time-sharing rate of one realization")
{
    const NetworkConfig cfg = config(5, 8, 30.0);
    const ChannelRealization ch = draw_channels(cfg, 2);
    double sum = 0.0;
    for (int p = 0; p < kPairs; ++p)
    {
        const double r = timeshare_pair_rate(ch, cfg, p);
        CHECK(r > 0.0);
        sum += r;
    }
    CHECK(timeshare_sum_rate(ch, cfg) == doctest::Approx(0.5 * sum));
}

TEST_CASE("feasibility gate")
{
    CHECK_THROWS_AS(require_feasible(Scheme::sajic, 5, 10), InfeasibleRegime);
    CHECK_THROWS_AS(require_feasible(Scheme::reduced, 5, 8), ReducedInfeasible);
    CHECK_NOTHROW(require_feasible(Scheme::timeshare, 5, 12));
    CHECK_NOTHROW(require_feasible(Scheme::sajic, 5, 9));
    CHECK_THROWS_AS(ergodic_sweep(config(2, 4), Scheme::sajic, {10.0}), InfeasibleRegime);
}
