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

#ifndef XRELAY_MODEL_HPP
#define XRELAY_MODEL_HPP

#include "xrelay/numerics.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace xrelay
{
    // Source nodes are indexed 0..3 (nodes 1..4). Nodes 0,1 form the left
    // group, nodes 2,3 the right group; every left node exchanges one message
    // pair with every right node.
    inline constexpr int kNodes = 4;
    inline constexpr int kPairs = 4;

    struct NodePair
    {
        int left;
        int right;
    };

    // Pair order (1,3), (1,4), (2,3), (2,4). Streams are laid out pair by pair
    // in this order wherever a global stream index is used (G_r, U_r, s_r).
    inline constexpr std::array<NodePair, kPairs> kPairNodes{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};

    std::string pair_label(int pair); // "13", "14", ...

    bool pair_contains(int pair, int node);

    struct NetworkConfig
    {
        int M = 1;               // antennas per source node
        int N = 1;               // antennas at the relay
        double power_P = 1.0;    // per-node and relay power budget; SNR = P / noise_var
        double noise_var = 1.0;  // per receive antenna

        void validate() const; // throws std::invalid_argument

        static NetworkConfig from_snr_db(int M, int N, double snr_db);
    };

    struct ChannelRealization
    {
        std::array<ComplexMatrix, kNodes> uplink;   // H_{i,r}: N x M
        std::array<ComplexMatrix, kNodes> downlink; // H_{r,i}: M x N
        std::uint64_t seed = 0;
    };

    // Number of pair-(p) streams nulled at the relay for the left-group victim
    // (the other left node); e.g. splits[2] = d_{23}^1, nulled at node 1.
    using RelayNullSplits = std::array<int, kPairs>;

    struct StreamAllocation
    {
        std::array<int, kPairs> per_pair{}; // d13, d14, d23, d24
        std::optional<RelayNullSplits> relay_null_splits;

        int total() const;
        int offset(int pair) const; // global index of the pair's first stream
        int streams_at(int node) const; // streams node sends (= streams it wants back)
        void validate() const;
    };

    // Unit-variance i.i.d. CN(0,1) entries from a 64-bit Mersenne twister;
    // bit-identical for equal (cfg, seed).
    ChannelRealization draw_channels(const NetworkConfig &cfg, std::uint64_t seed);

    // The N mod 4 table when 5N <= 8M; the uniform (2M-N) allocation when
    // floor(8M/5) < N < 2M. Throws InfeasibleRegime when N >= 2M.
    StreamAllocation allocate_streams(const NetworkConfig &cfg);

    // The N mod 4 table for any N, regardless of feasibility (total = N).
    StreamAllocation full_dof_allocation(int N);

    // Deterministic sub-seed for (master, a, b) via splitmix64 mixing.
    std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b);
}

#endif
