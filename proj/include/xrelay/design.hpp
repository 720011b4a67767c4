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

#ifndef XRELAY_DESIGN_HPP
#define XRELAY_DESIGN_HPP

#include "xrelay/model.hpp"

#include <string>
#include <vector>

namespace xrelay
{
    enum class Scheme
    {
        sajic,
        reduced,
        timeshare
    };

    std::string to_string(Scheme s);
    Scheme scheme_from_string(const std::string &s); // throws std::invalid_argument

    // Precoders of one aligned pair: V_{left,right} and V_{right,left}, M x d.
    struct PairPrecoders
    {
        ComplexMatrix left;
        ComplexMatrix right;
    };

    /// Complete two-phase transceiver for one channel realization.
    ///
    /// Global stream k (0 <= k < total) is the k-th aligned pair-stream in
    /// pair order; it is column k of both G_r and U_r. Row r of D_i extracts
    /// the desired stream `filter_streams[i][r]` (SAJIC) or, for the reduced
    /// scheme, a mixture that is inverted jointly over `filter_streams[i]`.
    struct TransceiverDesign
    {
        Scheme scheme = Scheme::sajic;
        int M = 0;
        int N = 0;
        StreamAllocation allocation;

        std::array<PairPrecoders, kPairs> precoders;
        ComplexMatrix mac_basis; // G_r, N x total

        std::array<ComplexMatrix, kNodes> receive_filters; // D_i, d_i x M
        std::array<std::vector<int>, kNodes> filter_streams;
        ComplexMatrix effective_rows;     // w_{ij}^k rows, total x N (SAJIC only)
        ComplexMatrix relay_beamformers;  // U_r, N x total, unit-norm columns
        std::vector<int> relay_victims;   // reduced only: node whose channel nulls column k, -1 if none

        int total_streams() const { return allocation.total(); }
        int pair_of_stream(int k) const;
        const ComplexMatrix &precoder(int from, int to) const; // V_{from,to}
        std::vector<int> desired_streams(int node) const;

        // Equal per-stream power; every node uses P / (largest per-node stream
        // count) so that both aligned streams arrive with equal amplitude.
        double stream_power(const NetworkConfig &cfg) const;
        double relay_power(const NetworkConfig &cfg) const; // P / total
    };

    struct DesignDiagnostics
    {
        int total_streams = 0;
        double mac_alignment_residual = 0.0; // max ||H_i v_ij - H_j v_ji|| / ||g||
        double bc_alignment_residual = 0.0;  // max ||d_ij H_ri - d_ji H_rj|| / ||w|| (SAJIC)
        double max_leakage = 0.0;            // max ||D_i H_ri u|| / ||u|| over unintended u
        double relay_null_residual = 0.0;    // max ||H_rm u|| / ||u|| over relay-nulled u (reduced)
        Eigen::Index mac_rank = 0;
        Eigen::Index relay_rank = 0;
        std::array<Eigen::Index, kNodes> desired_rank{};
        std::array<int, kNodes> desired_streams{};
        double max_node_power = 0.0; // max_i sum_j sum_k p_stream ||v_ij^k||^2
        double relay_power = 0.0;

        // Empty when every invariant holds at `tol`.
        std::vector<std::string> failures(const TolerancePolicy &tol, double power_P) const;
    };

    DesignDiagnostics diagnose(const TransceiverDesign &d, const ChannelRealization &ch, const NetworkConfig &cfg,
                               const TolerancePolicy &tol = {});

    // Throws DesignInvalid listing every violated invariant.
    void validate_design(const TransceiverDesign &d, const ChannelRealization &ch, const NetworkConfig &cfg,
                         const TolerancePolicy &tol = {});
}

#endif
