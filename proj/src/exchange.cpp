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

#include "xrelay/exchange.hpp"
#include "xrelay/errors.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace xrelay
{
    namespace
    {
        std::size_t at(int i) { return static_cast<std::size_t>(i); }

        double antipodal(std::uint8_t bit) { return bit ? -1.0 : 1.0; }

        class NoiseSource
        {
        public:
            NoiseSource(std::uint64_t seed, double var) : rng_(seed), gauss_(0.0, std::sqrt(var / 2.0)), on_(var > 0.0) {}

            ComplexVector draw(Eigen::Index n)
            {
                ComplexVector v = ComplexVector::Zero(n);
                if (!on_)
                    return v;
                for (Eigen::Index k = 0; k < n; ++k)
                {
                    const double re = gauss_(rng_);
                    const double im = gauss_(rng_);
                    v(k) = Complex(re, im);
                }
                return v;
            }

        private:
            std::mt19937_64 rng_;
            std::normal_distribution<double> gauss_;
            bool on_;
        };
    }

    MessageSet MessageSet::zeros(const StreamAllocation &alloc)
    {
        MessageSet m;
        for (int p = 0; p < kPairs; ++p)
        {
            const auto &n = kPairNodes[at(p)];
            const auto d = at(alloc.per_pair[at(p)]);
            m.bits[at(n.left)][at(n.right)].assign(d, 0);
            m.bits[at(n.right)][at(n.left)].assign(d, 0);
        }
        return m;
    }

    MessageSet MessageSet::random(const StreamAllocation &alloc, std::uint64_t seed)
    {
        MessageSet m = zeros(alloc);
        std::mt19937_64 rng(seed);
        for (auto &row : m.bits)
            for (auto &msg : row)
                for (auto &b : msg)
                    b = static_cast<std::uint8_t>(rng() & 1u);
        return m;
    }

    bool MessageSet::matches(const StreamAllocation &alloc) const
    {
        for (int p = 0; p < kPairs; ++p)
        {
            const auto &n = kPairNodes[at(p)];
            const auto d = at(alloc.per_pair[at(p)]);
            if (bits[at(n.left)][at(n.right)].size() != d || bits[at(n.right)][at(n.left)].size() != d)
                return false;
        }
        return true;
    }

    Bits pnc_demap(const ComplexVector &relay_estimates)
    {
        Bits out(at(static_cast<int>(relay_estimates.size())));
        for (Eigen::Index k = 0; k < relay_estimates.size(); ++k)
            out[at(static_cast<int>(k))] = std::abs(relay_estimates(k).real()) < 1.0 ? 1 : 0;
        return out;
    }

    Bits relay_decode(const ComplexMatrix &zf_detector, const ComplexVector &y_relay)
    {
        return pnc_demap(zf_detector * y_relay);
    }

    ExchangeResult run_exchange(const TransceiverDesign &design, const ChannelRealization &ch, const MessageSet &msgs,
                                double noise_var, std::uint64_t noise_seed, const TolerancePolicy &tol)
    {
        if (noise_var < 0.0)
            throw std::invalid_argument("noise_var must be >= 0");
        if (!msgs.matches(design.allocation))
            throw std::invalid_argument("message lengths do not match the stream allocation");

        NetworkConfig unit;
        unit.M = design.M;
        unit.N = design.N;
        validate_design(design, ch, unit, tol);

        const int total = design.total_streams();
        NoiseSource noise(noise_seed, noise_var);

        // MAC phase
        ComplexVector y_r = ComplexVector::Zero(design.N);
        for (int p = 0; p < kPairs; ++p)
        {
            const auto &n = kPairNodes[at(p)];
            const auto &pre = design.precoders[at(p)];
            const auto &fwd = msgs.bits[at(n.left)][at(n.right)];
            const auto &bwd = msgs.bits[at(n.right)][at(n.left)];
            for (std::size_t k = 0; k < fwd.size(); ++k)
            {
                const auto c = static_cast<Eigen::Index>(k);
                y_r += ch.uplink[at(n.left)] * pre.left.col(c) * antipodal(fwd[k]);
                y_r += ch.uplink[at(n.right)] * pre.right.col(c) * antipodal(bwd[k]);
            }
        }
        y_r += noise.draw(design.N);

        const Bits xor_bits = relay_decode(pseudo_inverse(design.mac_basis, tol), y_r);

        ExchangeResult res;
        res.recovered = MessageSet::zeros(design.allocation);
        for (int p = 0; p < kPairs; ++p)
        {
            const auto &n = kPairNodes[at(p)];
            for (int k = 0; k < design.allocation.per_pair[at(p)]; ++k)
            {
                const std::uint8_t truth = msgs.bits[at(n.left)][at(n.right)][at(k)] ^ msgs.bits[at(n.right)][at(n.left)][at(k)];
                res.relay_xor_errors += xor_bits[at(design.allocation.offset(p) + k)] != truth;
            }
        }

        // BC phase
        ComplexVector q(total);
        for (int k = 0; k < total; ++k)
            q(k) = antipodal(xor_bits[at(k)]);
        const ComplexVector x_r = design.relay_beamformers * q;

        for (int i = 0; i < kNodes; ++i)
        {
            const auto &D = design.receive_filters[at(i)];
            const auto &wanted = design.filter_streams[at(i)];
            if (wanted.empty())
                continue;

            const ComplexVector z = D * (ch.downlink[at(i)] * x_r + noise.draw(design.M));
            ComplexMatrix T(D.rows(), static_cast<Eigen::Index>(wanted.size()));
            const ComplexMatrix eff = D * ch.downlink[at(i)];
            for (std::size_t c = 0; c < wanted.size(); ++c)
                T.col(static_cast<Eigen::Index>(c)) = eff * design.relay_beamformers.col(wanted[c]);
            const ComplexVector est = pseudo_inverse(T, tol) * z;

            for (std::size_t c = 0; c < wanted.size(); ++c)
            {
                const int stream = wanted[c];
                const int p = design.pair_of_stream(stream);
                const int local = stream - design.allocation.offset(p);
                const auto &n = kPairNodes[at(p)];
                const int partner = n.left == i ? n.right : n.left;

                const std::uint8_t xor_hat = est(static_cast<Eigen::Index>(c)).real() < 0.0 ? 1 : 0;
                const std::uint8_t truth = msgs.bits[at(i)][at(partner)][at(local)] ^ msgs.bits[at(partner)][at(i)][at(local)];
                res.node_xor_errors += xor_hat != truth;

                const std::uint8_t own = msgs.bits[at(i)][at(partner)][at(local)];
                res.recovered.bits[at(partner)][at(i)][at(local)] = xor_hat ^ own;
            }
        }

        for (int i = 0; i < kNodes; ++i)
            for (int j = 0; j < kNodes; ++j)
            {
                const auto &sent = msgs.bits[at(i)][at(j)];
                const auto &got = res.recovered.bits[at(i)][at(j)];
                for (std::size_t k = 0; k < sent.size(); ++k)
                    res.bit_errors += sent[k] != got[k];
                res.bits_total += static_cast<int>(sent.size());
            }
        return res;
    }
}
