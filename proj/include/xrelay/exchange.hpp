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

#ifndef XRELAY_EXCHANGE_HPP
#define XRELAY_EXCHANGE_HPP

#include "xrelay/design.hpp"

#include <cstdint>
#include <vector>

// Bit-level two-phase exchange over a design, with BPSK symbols and XOR
// physical-layer network coding at the relay.

namespace xrelay
{
    using Bits = std::vector<std::uint8_t>;

    struct MessageSet
    {
        // bits[i][j]: message W_{i,j} from node i to node j (one bit per stream).
        std::array<std::array<Bits, kNodes>, kNodes> bits;

        static MessageSet zeros(const StreamAllocation &alloc);
        static MessageSet random(const StreamAllocation &alloc, std::uint64_t seed);

        bool matches(const StreamAllocation &alloc) const;
        bool operator==(const MessageSet &) const = default;
    };

    // Relay-side PNC demapping of zero-forced estimates of s + s' in {-2, 0, +2}:
    // |Re| < 1 -> XOR bit 1, otherwise 0. Sees nothing but the estimates.
    Bits pnc_demap(const ComplexVector &relay_estimates);

    // F_r y_r followed by pnc_demap.
    Bits relay_decode(const ComplexMatrix &zf_detector, const ComplexVector &y_relay);

    struct ExchangeResult
    {
        MessageSet recovered; // recovered.bits[j][i] is node i's estimate of W_{j,i}
        int relay_xor_errors = 0;
        int node_xor_errors = 0; // summed over both receivers of every network-coded stream
        int bit_errors = 0;      // over all eight directed messages
        int bits_total = 0;
    };

    /// Runs both phases once. Throws DesignInvalid if the design fails its
    /// invariants on `ch`; bit errors are counted, never thrown.
    ExchangeResult run_exchange(const TransceiverDesign &design, const ChannelRealization &ch, const MessageSet &msgs,
                                double noise_var, std::uint64_t noise_seed = 0, const TolerancePolicy &tol = {});
}

#endif
