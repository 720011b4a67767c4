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

#include "xrelay/reduced.hpp"
#include "xrelay/errors.hpp"
#include "xrelay/sajic.hpp"

#include <algorithm>

namespace xrelay
{
    namespace
    {
        std::size_t at(int i) { return static_cast<std::size_t>(i); }

        // Interference dimensions every node must hand to the relay.
        int relay_budget(int M, const StreamAllocation &alloc)
        {
            return std::max(0, alloc.total() - M);
        }

        // Right-group victims pick from these pairs, in this order.
        constexpr std::array<int, 2> kNode3Candidates{3, 1}; // (2,4), (1,4)
        constexpr std::array<int, 2> kNode4Candidates{0, 2}; // (1,3), (2,3)
    }

    RelayNullSplits reduced_split_budget(int M, int N, const StreamAllocation &alloc)
    {
        alloc.validate();
        if (M < 1 || N < 1)
            throw std::invalid_argument("antenna counts must be >= 1");
        if (N > 2 * M)
            throw InfeasibleRegime("reduced split budget requires N <= 2M");

        const auto &d = alloc.per_pair;
        const int budget = relay_budget(M, alloc);
        if (budget == 0)
            return {0, 0, 0, 0};

        const int node3_room = M - (d[0] + d[2]);
        const int node4_room = M - (d[1] + d[3]);

        // Two free variables: d13^1 and d24^1; the node-1/node-2 equalities fix the rest.
        for (int s13 = 0; s13 <= d[0]; ++s13)
            for (int s24 = 0; s24 <= d[3]; ++s24)
            {
                const int s14 = budget - s13;
                const int s23 = budget - s24;
                if (s14 < 0 || s14 > d[1] || s23 < 0 || s23 > d[2])
                    continue;
                if (s14 + s24 > node3_room || s13 + s23 > node4_room)
                    continue;
                return {s13, s14, s23, s24};
            }

        throw ReducedInfeasible("no relay-nulling split exists: N > floor(4M/3) (M=" + std::to_string(M) +
                                ", N=" + std::to_string(N) + ")");
    }

    std::vector<int> relay_victims(int M, int N, const StreamAllocation &alloc)
    {
        const RelayNullSplits splits = alloc.relay_null_splits ? *alloc.relay_null_splits
                                                               : reduced_split_budget(M, N, alloc);
        std::vector<int> victim(at(alloc.total()), -1);
        const int budget = relay_budget(M, alloc);
        if (budget == 0)
            return victim;

        // Left-group victim: the other left node.
        for (int p = 0; p < kPairs; ++p)
        {
            const int other_left = 1 - kPairNodes[at(p)].left;
            for (int k = 0; k < splits[at(p)]; ++k)
                victim[at(alloc.offset(p) + k)] = other_left;
        }

        auto fill_right = [&](int node, const std::array<int, 2> &candidates)
        {
            int need = budget;
            for (int p : candidates)
                for (int k = splits[at(p)]; k < alloc.per_pair[at(p)] && need > 0; ++k, --need)
                    victim[at(alloc.offset(p) + k)] = node;
            if (need > 0)
                throw ReducedInfeasible("node " + std::to_string(node + 1) +
                                        " cannot absorb its residual interference");
        };
        fill_right(2, kNode3Candidates);
        fill_right(3, kNode4Candidates);
        return victim;
    }

    ReducedDesign design_reduced_with_allocation(const ChannelRealization &ch, StreamAllocation alloc,
                                                 const TolerancePolicy &tol)
    {
        tol.validate();
        const int M = static_cast<int>(ch.uplink[0].cols());
        const int N = static_cast<int>(ch.uplink[0].rows());
        const int total = alloc.total();

        alloc.relay_null_splits = reduced_split_budget(M, N, alloc);
        const std::vector<int> victims = relay_victims(M, N, alloc);

        ReducedDesign out;
        out.scheme = Scheme::reduced;
        out.M = M;
        out.N = N;
        out.allocation = alloc;
        out.relay_victims = victims;

        auto mac = design_mac(ch, alloc, tol);
        out.precoders = std::move(mac.precoders);
        out.mac_basis = std::move(mac.mac_basis);

        // Relay beams: victims' channel null spaces first, then the orthogonal
        // complement of everything nulled for the free streams.
        ComplexMatrix U(N, total);
        std::vector<int> nulled;
        for (int m = 0; m < kNodes; ++m)
        {
            const ComplexMatrix nulls = null_space_basis(ch.downlink[at(m)], tol);
            Eigen::Index used = 0;
            for (int k = 0; k < total; ++k)
            {
                if (victims[at(k)] != m)
                    continue;
                if (used >= nulls.cols())
                    throw ReducedInfeasible("Null(H_r," + std::to_string(m + 1) + ") too small for its nulled streams");
                U.col(k) = nulls.col(used++);
                nulled.push_back(k);
            }
        }

        std::vector<int> free;
        for (int k = 0; k < total; ++k)
            if (victims[at(k)] < 0)
                free.push_back(k);
        if (!free.empty())
        {
            ComplexMatrix taken(N, static_cast<Eigen::Index>(nulled.size()));
            for (std::size_t c = 0; c < nulled.size(); ++c)
                taken.col(static_cast<Eigen::Index>(c)) = U.col(nulled[c]);
            const ComplexMatrix rest = nulled.empty() ? ComplexMatrix(ComplexMatrix::Identity(N, N))
                                                      : null_space_basis(taken.adjoint(), tol);
            if (rest.cols() < static_cast<Eigen::Index>(free.size()))
                throw RankDeficient("relay has no room left for the un-nulled streams");
            for (std::size_t c = 0; c < free.size(); ++c)
                U.col(free[c]) = rest.col(static_cast<Eigen::Index>(c));
        }
        if (numerical_rank(U, tol) != total)
            throw RankDeficient("relay beamformers U_r are linearly dependent");
        out.relay_beamformers = U;

        // Receive filters: project out residual interference, then keep the
        // d_i-dimensional subspace carrying the desired streams.
        for (int i = 0; i < kNodes; ++i)
        {
            const ComplexMatrix &H = ch.downlink[at(i)];
            const auto wanted = out.desired_streams(i);
            const auto want = static_cast<Eigen::Index>(wanted.size());

            std::vector<int> residual;
            for (int k = 0; k < total; ++k)
                if (!pair_contains(out.pair_of_stream(k), i) && victims[at(k)] != i)
                    residual.push_back(k);

            ComplexMatrix interference(M, static_cast<Eigen::Index>(residual.size()));
            for (std::size_t c = 0; c < residual.size(); ++c)
                interference.col(static_cast<Eigen::Index>(c)) = H * U.col(residual[c]);
            const ComplexMatrix L = residual.empty() ? ComplexMatrix(ComplexMatrix::Identity(M, M))
                                                     : left_null_space_basis(interference, tol);
            if (L.rows() < want)
                throw ReducedInfeasible("node " + std::to_string(i + 1) + " lacks free receive dimensions");

            ComplexMatrix desired(N, want);
            for (Eigen::Index c = 0; c < want; ++c)
                desired.col(c) = U.col(wanted[at(static_cast<int>(c))]);
            const ComplexMatrix Q = column_space_basis(L * H * desired, tol);
            if (Q.cols() != want)
                throw RankDeficient("desired link at node " + std::to_string(i + 1) + " is rank deficient");

            out.receive_filters[at(i)] = Q.adjoint() * L;
            out.filter_streams[at(i)] = wanted;
        }
        return out;
    }

    ReducedDesign design_reduced(const ChannelRealization &ch, const NetworkConfig &cfg, const TolerancePolicy &tol)
    {
        cfg.validate();
        if (cfg.N >= 2 * cfg.M)
            throw InfeasibleRegime("N >= 2M: pairwise intersection subspaces are trivial");
        if (3 * cfg.N > 4 * cfg.M)
            throw ReducedInfeasible("N > floor(4M/3) (M=" + std::to_string(cfg.M) + ", N=" + std::to_string(cfg.N) + ")");
        return design_reduced_with_allocation(ch, allocate_streams(cfg), tol);
    }
}
