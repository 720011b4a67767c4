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

#ifndef XRELAY_SAJIC_HPP
#define XRELAY_SAJIC_HPP

#include "xrelay/design.hpp"

// Signal alignment with joint interference cancellation.
//
// MAC phase: the two members of each pair steer their streams onto common
// relay-side directions g (intersection of their uplink column spaces), so
// the relay sees one summed symbol per pair-stream and decodes G_r^-1 y_r.
// BC phase: the two members align their receive rows onto common effective
// rows w (intersection of their downlink row spaces); the relay then places
// each pair's beams in the null space of every other pair's rows.

namespace xrelay
{
    struct MacDesign
    {
        std::array<PairPrecoders, kPairs> precoders;
        ComplexMatrix mac_basis; // G_r
    };

    struct BcReceiveDesign
    {
        std::array<ComplexMatrix, kNodes> receive_filters;
        std::array<std::vector<int>, kNodes> filter_streams;
        ComplexMatrix effective_rows;
    };

    // Precoders are scaled so that max(||v_ij^k||, ||v_ji^k||) = 1 for each
    // pair-stream. Throws AlignmentInfeasible / RankDeficient.
    MacDesign design_mac(const ChannelRealization &ch, const StreamAllocation &alloc, const TolerancePolicy &tol = {});

    // Filter rows are scaled so that max(||d_ij^k||, ||d_ji^k||) = 1.
    BcReceiveDesign design_bc_receive(const ChannelRealization &ch, const StreamAllocation &alloc,
                                      const TolerancePolicy &tol = {});

    // Unit-norm relay beams, column k serving global stream k.
    ComplexMatrix design_bc_transmit(const ComplexMatrix &effective_rows, const StreamAllocation &alloc,
                                     const TolerancePolicy &tol = {});

    // Rows of the stacked effective channel seen by the two non-members of
    // `pair` (shared aligned rows counted once).
    ComplexMatrix unintended_rows(const ComplexMatrix &effective_rows, const StreamAllocation &alloc, int pair);

    TransceiverDesign design_with_allocation(const ChannelRealization &ch, const StreamAllocation &alloc,
                                             const TolerancePolicy &tol = {});

    // allocate_streams + design_with_allocation. Throws InfeasibleRegime for N >= 2M.
    TransceiverDesign design_full(const ChannelRealization &ch, const NetworkConfig &cfg, const TolerancePolicy &tol = {});
}

#endif
