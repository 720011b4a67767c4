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

#include "xrelay/design.hpp"
#include "xrelay/errors.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace xrelay
{
    std::string to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::sajic:
            return "sajic";
        case Scheme::reduced:
            return "reduced";
        case Scheme::timeshare:
            return "timeshare";
        }
        return "unknown";
    }

    Scheme scheme_from_string(const std::string &s)
    {
        if (s == "sajic")
            return Scheme::sajic;
        if (s == "reduced")
            return Scheme::reduced;
        if (s == "timeshare")
            return Scheme::timeshare;
        throw std::invalid_argument("unknown scheme '" + s + "'");
    }

    int TransceiverDesign::pair_of_stream(int k) const
    {
        int end = 0;
        for (int p = 0; p < kPairs; ++p)
        {
            end += allocation.per_pair[static_cast<std::size_t>(p)];
            if (k < end)
                return p;
        }
        throw std::out_of_range("stream index out of range");
    }

    const ComplexMatrix &TransceiverDesign::precoder(int from, int to) const
    {
        for (int p = 0; p < kPairs; ++p)
        {
            const auto &nodes = kPairNodes[static_cast<std::size_t>(p)];
            if (nodes.left == from && nodes.right == to)
                return precoders[static_cast<std::size_t>(p)].left;
            if (nodes.right == from && nodes.left == to)
                return precoders[static_cast<std::size_t>(p)].right;
        }
        throw std::invalid_argument("no message between nodes in the same group");
    }

    std::vector<int> TransceiverDesign::desired_streams(int node) const
    {
        std::vector<int> out;
        for (int p = 0; p < kPairs; ++p)
            if (pair_contains(p, node))
                for (int k = 0; k < allocation.per_pair[static_cast<std::size_t>(p)]; ++k)
                    out.push_back(allocation.offset(p) + k);
        return out;
    }

    double TransceiverDesign::stream_power(const NetworkConfig &cfg) const
    {
        int busiest = 0;
        for (int i = 0; i < kNodes; ++i)
            busiest = std::max(busiest, allocation.streams_at(i));
        return busiest > 0 ? cfg.power_P / busiest : 0.0;
    }

    double TransceiverDesign::relay_power(const NetworkConfig &cfg) const
    {
        const int total = total_streams();
        return total > 0 ? cfg.power_P / total : 0.0;
    }

    DesignDiagnostics diagnose(const TransceiverDesign &d, const ChannelRealization &ch, const NetworkConfig &cfg,
                               const TolerancePolicy &tol)
    {
        DesignDiagnostics out;
        const int total = d.total_streams();
        out.total_streams = total;

        // MAC alignment
        for (int p = 0; p < kPairs; ++p)
        {
            const auto &nodes = kPairNodes[static_cast<std::size_t>(p)];
            const auto &pre = d.precoders[static_cast<std::size_t>(p)];
            for (int k = 0; k < d.allocation.per_pair[static_cast<std::size_t>(p)]; ++k)
            {
                const ComplexVector a = ch.uplink[static_cast<std::size_t>(nodes.left)] * pre.left.col(k);
                const ComplexVector b = ch.uplink[static_cast<std::size_t>(nodes.right)] * pre.right.col(k);
                const double g = d.mac_basis.col(d.allocation.offset(p) + k).norm();
                out.mac_alignment_residual = std::max(out.mac_alignment_residual, (a - b).norm() / g);
            }
        }
        out.mac_rank = numerical_rank(d.mac_basis, tol);
        out.relay_rank = numerical_rank(d.relay_beamformers, tol);

        // BC receive alignment (SAJIC rows are stream-labelled)
        if (d.effective_rows.rows() == total && total > 0)
        {
            auto row_for = [&](int node, int k) -> ComplexRow
            {
                const auto &streams = d.filter_streams[static_cast<std::size_t>(node)];
                const auto it = std::find(streams.begin(), streams.end(), k);
                const auto r = static_cast<Eigen::Index>(it - streams.begin());
                return d.receive_filters[static_cast<std::size_t>(node)].row(r) * ch.downlink[static_cast<std::size_t>(node)];
            };
            for (int k = 0; k < total; ++k)
            {
                const auto &nodes = kPairNodes[static_cast<std::size_t>(d.pair_of_stream(k))];
                const ComplexRow diff = row_for(nodes.left, k) - row_for(nodes.right, k);
                out.bc_alignment_residual =
                    std::max(out.bc_alignment_residual, diff.norm() / d.effective_rows.row(k).norm());
            }
        }

        // Leakage and desired-link rank
        for (int i = 0; i < kNodes; ++i)
        {
            const auto idx = static_cast<std::size_t>(i);
            const ComplexMatrix eff = d.receive_filters[idx] * ch.downlink[idx] * d.relay_beamformers;
            const auto wanted = d.desired_streams(i);
            out.desired_streams[idx] = static_cast<int>(wanted.size());

            ComplexMatrix T(eff.rows(), static_cast<Eigen::Index>(wanted.size()));
            for (std::size_t c = 0; c < wanted.size(); ++c)
                T.col(static_cast<Eigen::Index>(c)) = eff.col(wanted[c]);
            out.desired_rank[idx] = numerical_rank(T, tol);

            for (int k = 0; k < total; ++k)
            {
                if (pair_contains(d.pair_of_stream(k), i))
                    continue;
                const double leak = eff.col(k).norm() / d.relay_beamformers.col(k).norm();
                out.max_leakage = std::max(out.max_leakage, leak);
            }
        }

        for (std::size_t k = 0; k < d.relay_victims.size(); ++k)
        {
            const int m = d.relay_victims[k];
            if (m < 0)
                continue;
            const auto col = d.relay_beamformers.col(static_cast<Eigen::Index>(k));
            const double r = (ch.downlink[static_cast<std::size_t>(m)] * col).norm() / col.norm();
            out.relay_null_residual = std::max(out.relay_null_residual, r);
        }

        const double ps = d.stream_power(cfg);
        for (int i = 0; i < kNodes; ++i)
        {
            double pw = 0.0;
            for (int p = 0; p < kPairs; ++p)
            {
                const auto &nodes = kPairNodes[static_cast<std::size_t>(p)];
                const auto &pre = d.precoders[static_cast<std::size_t>(p)];
                if (nodes.left == i)
                    pw += ps * pre.left.squaredNorm();
                else if (nodes.right == i)
                    pw += ps * pre.right.squaredNorm();
            }
            out.max_node_power = std::max(out.max_node_power, pw);
        }
        out.relay_power = d.relay_power(cfg) * d.relay_beamformers.squaredNorm();
        return out;
    }

    std::vector<std::string> DesignDiagnostics::failures(const TolerancePolicy &tol, double power_P) const
    {
        std::vector<std::string> f;
        auto fmt = [](const char *what, double v)
        {
            std::ostringstream os;
            os << what << " " << v;
            return os.str();
        };
        if (!(mac_alignment_residual <= tol.residual_eps))
            f.push_back(fmt("MAC alignment residual", mac_alignment_residual));
        if (!(bc_alignment_residual <= tol.residual_eps))
            f.push_back(fmt("BC alignment residual", bc_alignment_residual));
        if (!(max_leakage <= tol.residual_eps))
            f.push_back(fmt("interference leakage", max_leakage));
        if (!(relay_null_residual <= tol.residual_eps))
            f.push_back(fmt("relay null residual", relay_null_residual));
        if (mac_rank != total_streams)
            f.push_back(fmt("rank(G_r) =", static_cast<double>(mac_rank)));
        if (relay_rank != total_streams)
            f.push_back(fmt("rank(U_r) =", static_cast<double>(relay_rank)));
        for (int i = 0; i < kNodes; ++i)
            if (desired_rank[static_cast<std::size_t>(i)] != desired_streams[static_cast<std::size_t>(i)])
                f.push_back("desired link rank deficient at node " + std::to_string(i + 1));
        const double slack = 1.0 + 1e-12;
        if (max_node_power > power_P * slack)
            f.push_back(fmt("node transmit power", max_node_power));
        if (relay_power > power_P * slack)
            f.push_back(fmt("relay transmit power", relay_power));
        return f;
    }

    void validate_design(const TransceiverDesign &d, const ChannelRealization &ch, const NetworkConfig &cfg,
                         const TolerancePolicy &tol)
    {
        const auto f = diagnose(d, ch, cfg, tol).failures(tol, cfg.power_P);
        if (f.empty())
            return;
        std::string msg = "design violates invariants:";
        for (const auto &s : f)
            msg += " [" + s + "]";
        throw DesignInvalid(msg);
    }
}
