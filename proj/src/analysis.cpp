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

#include <algorithm>
#include <stdexcept>

namespace xrelay
{
    namespace
    {
        void check(int M, int N)
        {
            if (M < 1 || N < 1)
                throw std::invalid_argument("antenna counts must be >= 1");
        }
    }

    int dof_upper_bound(int M, int N)
    {
        check(M, N);
        return 2 * std::min(2 * M, N);
    }

    int sajic_achievable_dof(int M, int N)
    {
        check(M, N);
        if (5 * N <= 8 * M)
            return 2 * N;
        if (N < 2 * M)
            return 16 * M - 8 * N;
        return 0;
    }

    bool reduced_achievable_full(int M, int N)
    {
        check(M, N);
        return 3 * N <= 4 * M;
    }

    int time_share_dof(int M, int N)
    {
        check(M, N);
        return 2 * std::min(M, N);
    }

    DofReport DofReport::half_duplex() const
    {
        DofReport h = *this;
        h.upper_bound /= 2;
        h.sajic_dof /= 2;
        if (h.reduced_dof)
            *h.reduced_dof /= 2;
        h.time_share_dof /= 2;
        return h;
    }

    DofReport dof_report(int M, int N)
    {
        DofReport r;
        r.M = M;
        r.N = N;
        r.upper_bound = dof_upper_bound(M, N);
        r.sajic_dof = sajic_achievable_dof(M, N);
        r.time_share_dof = time_share_dof(M, N);
        r.sajic_full = N <= 2 * M && r.sajic_dof == r.upper_bound;
        r.reduced_full = reduced_achievable_full(M, N);
        if (r.reduced_full)
            r.reduced_dof = 2 * N;
        return r;
    }
}
