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

#include "xrelay/errors.hpp"
#include "xrelay/exchange.hpp"
#include "xrelay/reduced.hpp"
#include "xrelay/sajic.hpp"

#include <doctest.h>

using namespace xrelay;

namespace
{
    NetworkConfig config(int M, int N)
    {
        NetworkConfig cfg;
        cfg.M = M;
        cfg.N = N;
        return cfg;
    }

    TransceiverDesign build(Scheme s, const ChannelRealization &ch, const NetworkConfig &cfg)
    {
        return s == Scheme::sajic ? design_full(ch, cfg) : design_reduced(ch, cfg);
    }
}

TEST_CASE("PNC demapping thresholds")
{
    ComplexVector est(6);
    est << 0.0, 2.0, -2.0, Complex(0.5, 3.0), -0.9, 1.1;
    CHECK(pnc_demap(est) == Bits{1, 0, 0, 1, 1, 0});
}

TEST_CASE("relay decoding sees only the summed symbols")
{
    // Two bit assignments with equal XOR per stream give identical relay output.
    const ComplexMatrix G = ComplexMatrix::Identity(2, 2) * Complex(0.0, 1.0) + ComplexMatrix::Ones(2, 2);
    const ComplexMatrix F = G.inverse();
    ComplexVector s_a(2), s_b(2);
    s_a << (+1.0) + (+1.0), (+1.0) + (-1.0); // bits (0,0), (0,1)
    s_b << (-1.0) + (-1.0), (-1.0) + (+1.0); // bits (1,1), (1,0)
    const Bits a = relay_decode(F, G * s_a), b = relay_decode(F, G * s_b);
    CHECK(a == b);
    CHECK(a == Bits{0, 1});
}

TEST_CASE("MessageSet shapes follow the allocation")
{
    StreamAllocation a;
    a.per_pair = {1, 2, 2, 3};
    const MessageSet m = MessageSet::random(a, 5);
    CHECK(m.matches(a));
    CHECK(m.bits[0][3].size() == 2);
    CHECK(m.bits[3][0].size() == 2);
    CHECK(m.bits[1][3].size() == 3);
    CHECK(m.bits[0][1].empty());
    CHECK(MessageSet::random(a, 5) == m);
    a.per_pair[0] = 2;
    CHECK_FALSE(m.matches(a));
}

TEST_CASE("(5,8) fixture recovers all eight messages without noise")
{
    const NetworkConfig cfg = config(5, 8);
    const ChannelRealization ch = draw_channels(cfg, 1);
    const TransceiverDesign d = design_full(ch, cfg);
    const MessageSet msgs = MessageSet::random(d.allocation, 11);
    const ExchangeResult r = run_exchange(d, ch, msgs, 0.0);
    CHECK(r.bit_errors == 0);
    CHECK(r.relay_xor_errors == 0);
    CHECK(r.node_xor_errors == 0);
    CHECK(r.bits_total == 16);
    CHECK(r.recovered == msgs);
}

TEST_CASE("all-zero messages come back as zeros")
{
    for (Scheme s : {Scheme::sajic, Scheme::reduced})
    {
        const NetworkConfig cfg = config(3, 4);
        const ChannelRealization ch = draw_channels(cfg, 4);
        const TransceiverDesign d = build(s, ch, cfg);
        const MessageSet zeros = MessageSet::zeros(d.allocation);
        CHECK(run_exchange(d, ch, zeros, 0.0).recovered == zeros);
    }
}

TEST_CASE("noiseless correctness over 50 seeds for every feasible fixture")
{
    const std::array<std::tuple<Scheme, int, int>, 10> cases{{{Scheme::sajic, 3, 4},
                                                              {Scheme::sajic, 4, 6},
                                                              {Scheme::sajic, 5, 7},
                                                              {Scheme::sajic, 5, 8},
                                                              {Scheme::sajic, 5, 9},
                                                              {Scheme::sajic, 4, 4},
                                                              {Scheme::reduced, 3, 4},
                                                              {Scheme::reduced, 4, 4},
                                                              {Scheme::reduced, 4, 5},
                                                              {Scheme::reduced, 6, 8}}};
    for (const auto &[scheme, M, N] : cases)
    {
        const NetworkConfig cfg = config(M, N);
        int errors = 0;
        for (std::uint64_t s = 0; s < 50; ++s)
        {
            const ChannelRealization ch = draw_channels(cfg, s);
            const TransceiverDesign d = build(scheme, ch, cfg);
            const MessageSet msgs = MessageSet::random(d.allocation, s + 1000);
            const ExchangeResult r = run_exchange(d, ch, msgs, 0.0, s);
            errors += r.bit_errors + r.relay_xor_errors + r.node_xor_errors;
        }
        CHECK_MESSAGE(errors == 0, to_string(scheme) << " M=" << M << " N=" << N);
    }
}

TEST_CASE("bit-error rate does not grow with SNR")
{
    const NetworkConfig cfg = config(3, 4);
    const std::array<double, 4> noise{1.0, 0.1, 0.01, 1e-4};
    std::array<double, 4> ber{};
    for (std::size_t n = 0; n < noise.size(); ++n)
    {
        long errs = 0, bits = 0;
        for (std::uint64_t s = 0; s < 300; ++s)
        {
            const ChannelRealization ch = draw_channels(cfg, s);
            const TransceiverDesign d = design_full(ch, cfg);
            const ExchangeResult r = run_exchange(d, ch, MessageSet::random(d.allocation, s), noise[n], s + 77);
            errs += r.bit_errors;
            bits += r.bits_total;
        }
        ber[n] = static_cast<double>(errs) / static_cast<double>(bits);
    }
    CHECK(ber[0] > 0.0);
    for (std::size_t n = 1; n < ber.size(); ++n)
        CHECK(ber[n] <= ber[n - 1] + 0.01);
    CHECK(ber[3] < ber[0]);
}

TEST_CASE("a corrupted design is refused")
{
    const NetworkConfig cfg = config(5, 8);
    const ChannelRealization ch = draw_channels(cfg, 1);
    TransceiverDesign d = design_full(ch, cfg);
    d.relay_beamformers(0, 0) += 0.3;
    CHECK_THROWS_AS(run_exchange(d, ch, MessageSet::zeros(d.allocation), 0.0), DesignInvalid);
}
