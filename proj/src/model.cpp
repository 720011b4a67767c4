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

#include "xrelay/model.hpp"
#include "xrelay/errors.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace xrelay
{
    std::string pair_label(int pair)
    {
        const auto &p = kPairNodes.at(static_cast<std::size_t>(pair));
        return std::to_string(p.left + 1) + std::to_string(p.right + 1);
    }

    bool pair_contains(int pair, int node)
    {
        const auto &p = kPairNodes[static_cast<std::size_t>(pair)];
        return p.left == node || p.right == node;
    }

    void NetworkConfig::validate() const
    {
        if (M < 1 || N < 1)
            throw std::invalid_argument("antenna counts must be >= 1");
        if (!(power_P > 0.0) || !std::isfinite(power_P))
            throw std::invalid_argument("power_P must be positive");
        if (!(noise_var > 0.0) || !std::isfinite(noise_var))
            throw std::invalid_argument("noise_var must be positive");
    }

    NetworkConfig NetworkConfig::from_snr_db(int M, int N, double snr_db)
    {
        NetworkConfig cfg;
        cfg.M = M;
        cfg.N = N;
        cfg.power_P = std::pow(10.0, snr_db / 10.0);
        cfg.noise_var = 1.0;
        return cfg;
    }

    int StreamAllocation::total() const
    {
        return per_pair[0] + per_pair[1] + per_pair[2] + per_pair[3];
    }

    int StreamAllocation::offset(int pair) const
    {
        int off = 0;
        for (int p = 0; p < pair; ++p)
            off += per_pair[static_cast<std::size_t>(p)];
        return off;
    }

    int StreamAllocation::streams_at(int node) const
    {
        int n = 0;
        for (int p = 0; p < kPairs; ++p)
            if (pair_contains(p, node))
                n += per_pair[static_cast<std::size_t>(p)];
        return n;
    }

    void StreamAllocation::validate() const
    {
        for (int d : per_pair)
            if (d < 0)
                throw std::invalid_argument("stream counts must be >= 0");
        if (relay_null_splits)
            for (std::size_t p = 0; p < per_pair.size(); ++p)
                if ((*relay_null_splits)[p] < 0 || (*relay_null_splits)[p] > per_pair[p])
                    throw std::invalid_argument("relay null split out of range for pair " + pair_label(static_cast<int>(p)));
    }

    ChannelRealization draw_channels(const NetworkConfig &cfg, std::uint64_t seed)
    {
        cfg.validate();
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

        auto draw = [&](int rows, int cols)
        {
            ComplexMatrix H(rows, cols);
            for (int c = 0; c < cols; ++c)
                for (int r = 0; r < rows; ++r)
                {
                    const double re = gauss(rng);
                    const double im = gauss(rng);
                    H(r, c) = Complex(re, im);
                }
            return H;
        };

        ChannelRealization ch;
        ch.seed = seed;
        for (auto &H : ch.uplink)
            H = draw(cfg.N, cfg.M);
        for (auto &H : ch.downlink)
            H = draw(cfg.M, cfg.N);
        return ch;
    }

    StreamAllocation full_dof_allocation(int N)
    {
        if (N < 1)
            throw std::invalid_argument("N must be >= 1");
        const int q = N / 4;
        StreamAllocation a;
        switch (N % 4)
        {
        case 0:
            a.per_pair = {q, q, q, q};
            break;
        case 1:
            a.per_pair = {q, q, q, q + 1};
            break;
        case 2:
            a.per_pair = {q, q + 1, q + 1, q};
            break;
        default:
            a.per_pair = {q, q + 1, q + 1, q + 1};
            break;
        }
        return a;
    }

    StreamAllocation allocate_streams(const NetworkConfig &cfg)
    {
        cfg.validate();
        const int M = cfg.M, N = cfg.N;
        if (N >= 2 * M)
            throw InfeasibleRegime("N >= 2M (N=" + std::to_string(N) + ", M=" + std::to_string(M) +
                                   "): pairwise intersection subspaces are trivial");
        if (5 * N <= 8 * M)
            return full_dof_allocation(N);

        const int d = 2 * M - N;
        StreamAllocation a;
        a.per_pair = {d, d, d, d};
        return a;
    }

    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b)
    {
        auto mix = [](std::uint64_t z)
        {
            z += 0x9E3779B97F4A7C15ull;
            z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
            z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
            return z ^ (z >> 31);
        };
        return mix(mix(mix(master) ^ a) ^ (b * 0xD1B54A32D192ED03ull));
    }
}
