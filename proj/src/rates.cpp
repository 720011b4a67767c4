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

#include "xrelay/rates.hpp"
#include "xrelay/errors.hpp"
#include "xrelay/reduced.hpp"
#include "xrelay/sajic.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace xrelay
{
    namespace
    {
        std::size_t at(int i) { return static_cast<std::size_t>(i); }

        // log2 det(I + X^H K^-1 X) for Hermitian positive definite K.
        double log2det_gain(const ComplexMatrix &X, const ComplexMatrix &K)
        {
            if (X.cols() == 0)
                return 0.0;
            const Eigen::LLT<ComplexMatrix> chol(K);
            const ComplexMatrix A = chol.matrixL().solve(X); // L^-1 X
            ComplexMatrix S = ComplexMatrix::Identity(X.cols(), X.cols()) + A.adjoint() * A;
            const Eigen::LLT<ComplexMatrix> s_chol(S);
            double acc = 0.0;
            for (Eigen::Index k = 0; k < S.rows(); ++k)
                acc += std::log2(std::real(s_chol.matrixL()(k, k)));
            return 2.0 * acc;
        }

        ComplexMatrix gather_cols(const ComplexMatrix &A, const std::vector<int> &cols)
        {
            ComplexMatrix out(A.rows(), static_cast<Eigen::Index>(cols.size()));
            for (std::size_t c = 0; c < cols.size(); ++c)
                out.col(static_cast<Eigen::Index>(c)) = A.col(cols[c]);
            return out;
        }

        double zf_rate(double snr_numerator, double noise_var, double enhancement)
        {
            return std::log2(1.0 + snr_numerator / (noise_var * enhancement));
        }
    }

    PairRates instantaneous_rates(const TransceiverDesign &design, const ChannelRealization &ch,
                                  const NetworkConfig &cfg, const TolerancePolicy &tol)
    {
        cfg.validate();
        if (design.M != cfg.M || design.N != cfg.N)
            throw DesignInvalid("design dimensions do not match the network configuration");
        const auto &alloc = design.allocation;
        if (design.mac_basis.cols() != alloc.total() || design.relay_beamformers.cols() != alloc.total())
            throw DesignInvalid("design matrices do not match the stream allocation");

        PairRates out;
        const double ps = design.stream_power(cfg);
        const double pr = design.relay_power(cfg);
        const double snr_r = pr / cfg.noise_var;

        const ComplexMatrix F = pseudo_inverse(design.mac_basis, tol);
        for (int p = 0; p < kPairs; ++p)
            for (int k = 0; k < alloc.per_pair[at(p)]; ++k)
                out.mac[at(p)] += zf_rate(2.0 * ps, cfg.noise_var, F.row(alloc.offset(p) + k).squaredNorm());

        for (int i = 0; i < kNodes; ++i)
        {
            const auto &D = design.receive_filters[at(i)];
            if (D.rows() == 0)
                continue;
            const ComplexMatrix eff = D * ch.downlink[at(i)] * design.relay_beamformers;
            const ComplexMatrix noise = D * D.adjoint();

            for (int p = 0; p < kPairs; ++p)
            {
                if (!pair_contains(p, i) || alloc.per_pair[at(p)] == 0)
                    continue;
                std::vector<int> own, other;
                for (int k : design.desired_streams(i))
                    (design.pair_of_stream(k) == p ? own : other).push_back(k);

                const ComplexMatrix To = gather_cols(eff, other);
                const ComplexMatrix K = noise + snr_r * To * To.adjoint();
                const ComplexMatrix Tp = std::sqrt(snr_r) * gather_cols(eff, own);
                out.bc_at_node[at(i)][at(p)] = log2det_gain(Tp, K);
            }
        }

        for (int p = 0; p < kPairs; ++p)
        {
            if (alloc.per_pair[at(p)] == 0)
                continue;
            const auto &n = kPairNodes[at(p)];
            out.bc[at(p)] = std::min(out.bc_at_node[at(n.left)][at(p)], out.bc_at_node[at(n.right)][at(p)]);
            out.pair[at(p)] = std::min(out.mac[at(p)], out.bc[at(p)]);
            out.sum_rate += 2.0 * out.pair[at(p)];
        }
        return out;
    }

    double timeshare_pair_rate(const ChannelRealization &ch, const NetworkConfig &cfg, int pair,
                               const TolerancePolicy &tol)
    {
        cfg.validate();
        const int M = cfg.M, N = cfg.N;
        const int streams = std::min(M, N);
        const int aligned = std::max(0, 2 * streams - N);
        const int separate = streams - aligned;
        const auto &n = kPairNodes.at(at(pair));
        const ComplexMatrix &Ha = ch.uplink[at(n.left)];
        const ComplexMatrix &Hb = ch.uplink[at(n.right)];

        // MAC precoders: aligned directions first, then orthogonal complements.
        ComplexMatrix Va(M, aligned), Vb(M, aligned), G(N, aligned + 2 * separate);
        if (aligned > 0)
        {
            const ComplexMatrix common = column_space_intersection(Ha, Hb, tol);
            if (common.cols() < aligned)
                throw RankDeficient("pair intersection smaller than generic dimension");
            const ComplexMatrix Ha_pinv = pseudo_inverse(Ha, tol), Hb_pinv = pseudo_inverse(Hb, tol);
            for (int k = 0; k < aligned; ++k)
            {
                ComplexVector g = common.col(k);
                ComplexVector va = Ha_pinv * g, vb = Hb_pinv * g;
                const double s = std::max(va.norm(), vb.norm());
                Va.col(k) = va / s;
                Vb.col(k) = vb / s;
                G.col(k) = g / s;
            }
        }
        if (separate > 0)
        {
            auto complement = [&](const ComplexMatrix &V)
            {
                return aligned > 0 ? ComplexMatrix(null_space_basis(V.adjoint(), tol).leftCols(separate))
                                   : ComplexMatrix(ComplexMatrix::Identity(M, M).leftCols(separate));
            };
            G.middleCols(aligned, separate) = Ha * complement(Va);
            G.middleCols(aligned + separate, separate) = Hb * complement(Vb);
        }
        if (numerical_rank(G, tol) != G.cols())
            throw RankDeficient("time-sharing MAC matrix is rank deficient");

        const double p = cfg.power_P / streams;
        const ComplexMatrix F = pseudo_inverse(G, tol);
        double mac = 0.0;
        for (int k = 0; k < aligned; ++k)
            mac += zf_rate(2.0 * p, cfg.noise_var, F.row(k).squaredNorm());
        for (int k = 0; k < separate; ++k)
        {
            const double ra = zf_rate(p, cfg.noise_var, F.row(aligned + k).squaredNorm());
            const double rb = zf_rate(p, cfg.noise_var, F.row(aligned + separate + k).squaredNorm());
            mac += std::min(ra, rb);
        }

        // BC: common XOR streams along the strongest joint directions.
        ComplexMatrix both(2 * M, N);
        both << ch.downlink[at(n.left)], ch.downlink[at(n.right)];
        Eigen::JacobiSVD<ComplexMatrix> svd(both, Eigen::ComputeFullV);
        const ComplexMatrix U = svd.matrixV().leftCols(streams);
        const double snr_r = cfg.power_P / streams / cfg.noise_var;
        const ComplexMatrix I = ComplexMatrix::Identity(M, M);
        const double bc_a = log2det_gain(std::sqrt(snr_r) * ch.downlink[at(n.left)] * U, I);
        const double bc_b = log2det_gain(std::sqrt(snr_r) * ch.downlink[at(n.right)] * U, I);

        return std::min(mac, std::min(bc_a, bc_b));
    }

    double timeshare_sum_rate(const ChannelRealization &ch, const NetworkConfig &cfg, const TolerancePolicy &tol)
    {
        double acc = 0.0;
        for (int p = 0; p < kPairs; ++p)
            acc += timeshare_pair_rate(ch, cfg, p, tol);
        return 0.5 * acc;
    }

    double fit_slope_per_3db(const std::vector<RatePoint> &points)
    {
        const std::size_t n = points.size();
        if (n < 2)
            return 0.0;
        const std::size_t use = std::max<std::size_t>(2, (n + 1) / 2);
        const std::size_t first = n - use;

        double mx = 0.0, my = 0.0;
        for (std::size_t k = first; k < n; ++k)
        {
            mx += points[k].snr_db;
            my += points[k].mean_sum_rate;
        }
        mx /= static_cast<double>(use);
        my /= static_cast<double>(use);
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t k = first; k < n; ++k)
        {
            const double dx = points[k].snr_db - mx;
            sxy += dx * (points[k].mean_sum_rate - my);
            sxx += dx * dx;
        }
        return 3.0 * sxy / sxx;
    }

    void require_feasible(Scheme scheme, int M, int N)
    {
        if (M < 1 || N < 1)
            throw std::invalid_argument("antenna counts must be >= 1");
        switch (scheme)
        {
        case Scheme::sajic:
            if (N >= 2 * M)
                throw InfeasibleRegime("N >= 2M: SAJIC has no alignment subspace");
            break;
        case Scheme::reduced:
            if (N >= 2 * M)
                throw InfeasibleRegime("N >= 2M: no alignment subspace");
            if (3 * N > 4 * M)
                throw ReducedInfeasible("N > floor(4M/3)");
            break;
        case Scheme::timeshare:
            break;
        }
    }

    namespace
    {
        struct TrialOutcome
        {
            double rate = 0.0;
            int redraws = 0;
        };

        TrialOutcome run_trial(const NetworkConfig &cfg, Scheme scheme, std::uint64_t seed, const TolerancePolicy &tol)
        {
            constexpr int kMaxAttempts = 32;
            TrialOutcome out;
            for (int attempt = 0; attempt < kMaxAttempts; ++attempt)
            {
                const std::uint64_t s = attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt), 0xA5);
                const ChannelRealization ch = draw_channels(cfg, s);
                try
                {
                    switch (scheme)
                    {
                    case Scheme::sajic:
                        out.rate = instantaneous_rates(design_full(ch, cfg, tol), ch, cfg, tol).sum_rate;
                        break;
                    case Scheme::reduced:
                        out.rate = instantaneous_rates(design_reduced(ch, cfg, tol), ch, cfg, tol).sum_rate;
                        break;
                    case Scheme::timeshare:
                        out.rate = timeshare_sum_rate(ch, cfg, tol);
                        break;
                    }
                    return out;
                }
                catch (const RankDeficient &)
                {
                    ++out.redraws;
                }
            }
            throw RankDeficient("no non-degenerate realization after repeated redraws");
        }
    }

    RateCurve ergodic_sweep(const NetworkConfig &cfg, Scheme scheme, const std::vector<double> &snr_grid_db,
                            const SweepOptions &opts)
    {
        cfg.validate();
        opts.tol.validate();
        if (opts.trials < 1)
            throw std::invalid_argument("trials must be >= 1");
        for (std::size_t k = 1; k < snr_grid_db.size(); ++k)
            if (!(snr_grid_db[k] > snr_grid_db[k - 1]))
                throw std::invalid_argument("SNR grid must be strictly increasing");
        require_feasible(scheme, cfg.M, cfg.N);

        RateCurve curve;
        curve.scheme = scheme;
        curve.M = cfg.M;
        curve.N = cfg.N;

        const auto trials = static_cast<std::size_t>(opts.trials);
        const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(trials)));

        for (std::size_t s = 0; s < snr_grid_db.size(); ++s)
        {
            NetworkConfig point = cfg;
            point.power_P = cfg.noise_var * std::pow(10.0, snr_grid_db[s] / 10.0);

            std::vector<TrialOutcome> results(trials);
            auto work = [&](unsigned w)
            {
                for (std::size_t t = w; t < trials; t += workers)
                    results[t] = run_trial(point, scheme, derive_seed(opts.seed, s, t), opts.tol);
            };
            if (workers == 1)
                work(0);
            else
            {
                std::vector<std::thread> pool;
                for (unsigned w = 0; w < workers; ++w)
                    pool.emplace_back(work, w);
                for (auto &th : pool)
                    th.join();
            }

            // Ordered fold keeps the result independent of scheduling.
            double sum = 0.0;
            for (const auto &r : results)
            {
                sum += r.rate;
                curve.redraws += r.redraws;
            }
            const double mean = sum / static_cast<double>(trials);
            double ss = 0.0;
            for (const auto &r : results)
                ss += (r.rate - mean) * (r.rate - mean);
            const double se = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;

            curve.points.push_back({snr_grid_db[s], mean, opts.trials, se});
        }
        curve.fitted_slope_per_3db = fit_slope_per_3db(curve.points);
        return curve;
    }

    RateCurve timeshare_sweep(const NetworkConfig &cfg, const std::vector<double> &snr_grid_db, const SweepOptions &opts)
    {
        return ergodic_sweep(cfg, Scheme::timeshare, snr_grid_db, opts);
    }
}
