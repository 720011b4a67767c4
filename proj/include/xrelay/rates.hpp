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

#ifndef XRELAY_RATES_HPP
#define XRELAY_RATES_HPP

#include "xrelay/design.hpp"

#include <cstdint>
#include <vector>

namespace xrelay
{
    /// Decode-and-forward rates of the four network-coded messages, bits/s/Hz.
    ///
    /// MAC: zero-forcing F_r = G_r^+ at the relay; stream k of the summed
    ///   symbol has SNR 2 p_stream / (noise_var ||f_k||^2).
    /// BC: at each receiving node, log det of the filtered link for the pair's
    ///   streams, whitened by the filter noise D D^H plus the node's other
    ///   desired pair (treated as noise). The pair's BC rate is the worse of
    ///   its two receivers.
    /// Pair rate = min(MAC, BC); the sum rate counts every pair twice.
    struct PairRates
    {
        std::array<double, kPairs> mac{};
        std::array<double, kPairs> bc{};
        std::array<std::array<double, kPairs>, kNodes> bc_at_node{}; // 0 where the node is not a member
        std::array<double, kPairs> pair{};
        double sum_rate = 0.0;
    };

    PairRates instantaneous_rates(const TransceiverDesign &design, const ChannelRealization &ch,
                                  const NetworkConfig &cfg, const TolerancePolicy &tol = {});

    // Two-way relaying for a single pair with min(M, N) streams per direction:
    // 2 min(M,N) - N of them aligned at the relay, the rest separated by ZF,
    // then min(M, N) XOR streams broadcast. Returns min(MAC, BC) of that slot.
    double timeshare_pair_rate(const ChannelRealization &ch, const NetworkConfig &cfg, int pair,
                               const TolerancePolicy &tol = {});

    // Each pair owns the relay a quarter of the time: 0.5 * sum_p rate_p.
    double timeshare_sum_rate(const ChannelRealization &ch, const NetworkConfig &cfg, const TolerancePolicy &tol = {});

    struct RatePoint
    {
        double snr_db = 0.0;
        double mean_sum_rate = 0.0;
        int trials = 0;
        double std_err = 0.0;
    };

    struct RateCurve
    {
        Scheme scheme = Scheme::sajic;
        int M = 0;
        int N = 0;
        std::vector<RatePoint> points;
        double fitted_slope_per_3db = 0.0;
        int redraws = 0; // realizations replaced after RankDeficient
    };

    struct SweepOptions
    {
        int trials = 1000;
        std::uint64_t seed = 1;
        unsigned threads = 1;
        TolerancePolicy tol;
    };

    // Least-squares slope (per 3 dB) over the top half of the points, at least two.
    double fit_slope_per_3db(const std::vector<RatePoint> &points);

    /// Ergodic sum rate at each SNR (P = noise_var * 10^(snr/10)). Trial t at
    /// grid index s uses channel seed derive_seed(seed, s, t); the result does
    /// not depend on `threads`. Throws InfeasibleRegime if the scheme cannot
    /// run at (M, N).
    RateCurve ergodic_sweep(const NetworkConfig &cfg, Scheme scheme, const std::vector<double> &snr_grid_db,
                            const SweepOptions &opts = {});

    RateCurve timeshare_sweep(const NetworkConfig &cfg, const std::vector<double> &snr_grid_db,
                              const SweepOptions &opts = {});

    // Throws InfeasibleRegime (or ReducedInfeasible) when `scheme` has no design at (M, N).
    void require_feasible(Scheme scheme, int M, int N);
}

#endif
