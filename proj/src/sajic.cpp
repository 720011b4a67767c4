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

#include "xrelay/sajic.hpp"
#include "xrelay/errors.hpp"

#include <algorithm>

namespace xrelay
{
    namespace
    {
        std::size_t at(int i) { return static_cast<std::size_t>(i); }

        std::string dims(const char *what, int pair, Eigen::Index have, int need)
        {
            return std::string(what) + " for pair " + pair_label(pair) + " has dimension " + std::to_string(have) +
                   " < " + std::to_string(need) + " streams";
        }
    }

    MacDesign design_mac(const ChannelRealization &ch, const StreamAllocation &alloc, const TolerancePolicy &tol)
    {
        alloc.validate();
        const Eigen::Index N = ch.uplink[0].rows();
        const Eigen::Index M = ch.uplink[0].cols();

        MacDesign out;
        out.mac_basis.resize(N, alloc.total());

        for (int p = 0; p < kPairs; ++p)
        {
            const int d = alloc.per_pair[at(p)];
            const auto &nodes = kPairNodes[at(p)];
            const ComplexMatrix &Ha = ch.uplink[at(nodes.left)];
            const ComplexMatrix &Hb = ch.uplink[at(nodes.right)];

            auto &pre = out.precoders[at(p)];
            pre.left.resize(M, d);
            pre.right.resize(M, d);
            if (d == 0)
                continue;

            const ComplexMatrix common = column_space_intersection(Ha, Hb, tol);
            if (common.cols() < d)
                throw AlignmentInfeasible(dims("uplink intersection", p, common.cols(), d));

            const ComplexMatrix Ha_pinv = pseudo_inverse(Ha, tol);
            const ComplexMatrix Hb_pinv = pseudo_inverse(Hb, tol);
            for (int k = 0; k < d; ++k)
            {
                ComplexVector g = common.col(k);
                ComplexVector va = Ha_pinv * g;
                ComplexVector vb = Hb_pinv * g;
                const double s = std::max(va.norm(), vb.norm());
                g /= s;
                va /= s;
                vb /= s;
                pre.left.col(k) = va;
                pre.right.col(k) = vb;
                out.mac_basis.col(alloc.offset(p) + k) = g;
            }
        }

        if (numerical_rank(out.mac_basis, tol) != alloc.total())
            throw RankDeficient("relay MAC basis G_r is rank deficient");
        return out;
    }

    BcReceiveDesign design_bc_receive(const ChannelRealization &ch, const StreamAllocation &alloc,
                                      const TolerancePolicy &tol)
    {
        alloc.validate();
        const Eigen::Index M = ch.downlink[0].rows();
        const Eigen::Index N = ch.downlink[0].cols();
        const int total = alloc.total();

        BcReceiveDesign out;
        out.effective_rows.resize(total, N);

        std::array<std::vector<ComplexRow>, kNodes> rows;
        for (int p = 0; p < kPairs; ++p)
        {
            const int d = alloc.per_pair[at(p)];
            if (d == 0)
                continue;
            const auto &nodes = kPairNodes[at(p)];
            const ComplexMatrix &Ha = ch.downlink[at(nodes.left)];
            const ComplexMatrix &Hb = ch.downlink[at(nodes.right)];

            const ComplexMatrix common = row_space_intersection(Ha, Hb, tol);
            if (common.rows() < d)
                throw AlignmentInfeasible(dims("downlink row intersection", p, common.rows(), d));

            // d = w H^+ is the exact solution of d H = w for w in rowspace(H).
            const ComplexMatrix Ha_pinv = pseudo_inverse(Ha, tol);
            const ComplexMatrix Hb_pinv = pseudo_inverse(Hb, tol);
            for (int k = 0; k < d; ++k)
            {
                ComplexRow w = common.row(k);
                ComplexRow da = w * Ha_pinv;
                ComplexRow db = w * Hb_pinv;
                const double s = std::max(da.norm(), db.norm());
                w /= s;
                da /= s;
                db /= s;

                const int stream = alloc.offset(p) + k;
                out.effective_rows.row(stream) = w;
                rows[at(nodes.left)].push_back(da);
                rows[at(nodes.right)].push_back(db);
                out.filter_streams[at(nodes.left)].push_back(stream);
                out.filter_streams[at(nodes.right)].push_back(stream);
            }
        }

        for (int i = 0; i < kNodes; ++i)
        {
            auto &D = out.receive_filters[at(i)];
            D.resize(static_cast<Eigen::Index>(rows[at(i)].size()), M);
            for (std::size_t r = 0; r < rows[at(i)].size(); ++r)
                D.row(static_cast<Eigen::Index>(r)) = rows[at(i)][r];
        }

        if (numerical_rank(out.effective_rows, tol) != total)
            throw RankDeficient("aligned effective rows are linearly dependent");
        return out;
    }

    ComplexMatrix unintended_rows(const ComplexMatrix &effective_rows, const StreamAllocation &alloc, int pair)
    {
        const auto &own = kPairNodes[at(pair)];
        std::vector<int> others;
        for (int node = 0; node < kNodes; ++node)
            if (node != own.left && node != own.right)
                others.push_back(node);

        // Every pair touching a non-member; each pair's rows appear once even
        // when both non-members share it.
        std::vector<int> streams;
        for (int p = 0; p < kPairs; ++p)
        {
            const bool hits = std::any_of(others.begin(), others.end(), [&](int n) { return pair_contains(p, n); });
            if (!hits)
                continue;
            for (int k = 0; k < alloc.per_pair[at(p)]; ++k)
                streams.push_back(alloc.offset(p) + k);
        }

        ComplexMatrix out(static_cast<Eigen::Index>(streams.size()), effective_rows.cols());
        for (std::size_t r = 0; r < streams.size(); ++r)
            out.row(static_cast<Eigen::Index>(r)) = effective_rows.row(streams[r]);
        return out;
    }

    ComplexMatrix design_bc_transmit(const ComplexMatrix &effective_rows, const StreamAllocation &alloc,
                                     const TolerancePolicy &tol)
    {
        const Eigen::Index N = effective_rows.cols();
        ComplexMatrix U(N, alloc.total());

        for (int p = 0; p < kPairs; ++p)
        {
            const int d = alloc.per_pair[at(p)];
            if (d == 0)
                continue;
            const ComplexMatrix nulls = null_space_basis(unintended_rows(effective_rows, alloc, p), tol);
            if (nulls.cols() < d)
                throw AlignmentInfeasible(dims("relay null space", p, nulls.cols(), d));
            U.middleCols(alloc.offset(p), d) = nulls.leftCols(d);
        }

        if (numerical_rank(U, tol) != alloc.total())
            throw RankDeficient("relay beamformers U_r are linearly dependent");
        return U;
    }

    TransceiverDesign design_with_allocation(const ChannelRealization &ch, const StreamAllocation &alloc,
                                             const TolerancePolicy &tol)
    {
        tol.validate();
        TransceiverDesign out;
        out.scheme = Scheme::sajic;
        out.M = static_cast<int>(ch.uplink[0].cols());
        out.N = static_cast<int>(ch.uplink[0].rows());
        out.allocation = alloc;

        auto mac = design_mac(ch, alloc, tol);
        out.precoders = std::move(mac.precoders);
        out.mac_basis = std::move(mac.mac_basis);

        auto rx = design_bc_receive(ch, alloc, tol);
        out.receive_filters = std::move(rx.receive_filters);
        out.filter_streams = std::move(rx.filter_streams);
        out.effective_rows = std::move(rx.effective_rows);

        out.relay_beamformers = design_bc_transmit(out.effective_rows, alloc, tol);
        return out;
    }

    TransceiverDesign design_full(const ChannelRealization &ch, const NetworkConfig &cfg, const TolerancePolicy &tol)
    {
        return design_with_allocation(ch, allocate_streams(cfg), tol);
    }
}
