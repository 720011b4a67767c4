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

#ifndef XRELAY_ANALYSIS_HPP
#define XRELAY_ANALYSIS_HPP

#include <optional>

// Closed-form DOF arithmetic. All values use the full-duplex convention
// (both directions counted); `half_duplex()` halves them for presentation.

namespace xrelay
{
    // Cut-set bound 2 min{2M, N}.
    int dof_upper_bound(int M, int N);

    // 2N when 5N <= 8M; 16M - 8N when 8M < 5N and N < 2M; 0 when N >= 2M.
    int sajic_achievable_dof(int M, int N);

    // 3N <= 4M.
    bool reduced_achievable_full(int M, int N);

    // One pair at a time over the relay: 2 min{M, N}.
    int time_share_dof(int M, int N);

    struct DofReport
    {
        int M = 0;
        int N = 0;
        int upper_bound = 0;
        int sajic_dof = 0;
        std::optional<int> reduced_dof; // set only when the reduced scheme is full-DOF
        int time_share_dof = 0;
        bool sajic_full = false;
        bool reduced_full = false;

        DofReport half_duplex() const;
    };

    DofReport dof_report(int M, int N);
}

#endif
