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

#ifndef XRELAY_REDUCED_HPP
#define XRELAY_REDUCED_HPP

#include "xrelay/design.hpp"

// Reduced scheme: MAC alignment as in SAJIC, but no receive alignment. In the
// BC phase the relay places some beams in Null(H_{r,m}) of one victim node m;
// every node removes the remaining interference with its own left null space.
//
// Each node can absorb M - d_i interference dimensions, so N - M of its
// interference streams must be nulled by the relay (none when N <= M). Every
// interfering stream is nulled at most once: pair (1,3) at node 2 or node 4,
// (1,4) at node 2 or 3, (2,3) at node 1 or 4, (2,4) at node 1 or 3.

namespace xrelay
{
    // A ReducedDesign is a TransceiverDesign with scheme == reduced and
    // relay_victims populated; allocation.relay_null_splits holds the split.
    using ReducedDesign = TransceiverDesign;

    /// Left-group victim split (d13^1, d14^1, d23^1, d24^1).
    ///
    /// d23^1 + d24^1 = N - M (nulled at node 1), d13^1 + d14^1 = N - M (at
    /// node 2), d14^1 + d24^1 <= M - (d13 + d23), d13^1 + d23^1 <= M - (d14 + d24).
    /// Exhaustive search; among feasible splits the one with the smallest
    /// (d13^1, d24^1) is returned. All zeros when N <= M. Throws
    /// ReducedInfeasible when no integer split exists.
    RelayNullSplits reduced_split_budget(int M, int N, const StreamAllocation &alloc);

    // Relay-nulling victim of every global stream (-1: not nulled at the relay).
    std::vector<int> relay_victims(int M, int N, const StreamAllocation &alloc);

    ReducedDesign design_reduced_with_allocation(const ChannelRealization &ch, StreamAllocation alloc,
                                                 const TolerancePolicy &tol = {});

    // allocate_streams + split budget + construction. ReducedInfeasible when 3N > 4M.
    ReducedDesign design_reduced(const ChannelRealization &ch, const NetworkConfig &cfg,
                                 const TolerancePolicy &tol = {});
}

#endif
