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

#include "cli.hpp"

#include "xrelay/analysis.hpp"
#include "xrelay/errors.hpp"
#include "xrelay/exchange.hpp"
#include "xrelay/reduced.hpp"
#include "xrelay/sajic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#ifndef XRELAY_VERSION
#define XRELAY_VERSION "0.0.0"
#endif

namespace xrelay::cli
{
    using json = nlohmann::json;

    IntRange parse_range(const std::string &text)
    {
        auto to_int = [&](const std::string &s)
        {
            std::size_t used = 0;
            int v = 0;
            try
            {
                v = std::stoi(s, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != s.size())
                throw std::invalid_argument("bad integer '" + s + "' in range '" + text + "'");
            return v;
        };

        IntRange r;
        const auto dots = text.find("..");
        if (dots == std::string::npos)
            r.first = r.last = to_int(text);
        else
        {
            r.first = to_int(text.substr(0, dots));
            r.last = to_int(text.substr(dots + 2));
        }
        if (r.first < 1)
            throw std::invalid_argument("antenna counts must be >= 1 in '" + text + "'");
        if (r.last < r.first)
            throw std::invalid_argument("empty range '" + text + "'");
        return r;
    }

    std::vector<double> parse_snr_grid(const std::string &text)
    {
        std::vector<double> parts;
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ':'))
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(item, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != item.size())
                throw std::invalid_argument("bad number '" + item + "' in SNR grid '" + text + "'");
            parts.push_back(v);
        }
        if (parts.size() != 3)
            throw std::invalid_argument("SNR grid must be start:step:stop, got '" + text + "'");
        const double start = parts[0], step = parts[1], stop = parts[2];
        if (!(step > 0.0) || stop < start)
            throw std::invalid_argument("SNR grid needs step > 0 and stop >= start");

        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> grid;
        for (long k = 0; k < count; ++k)
            grid.push_back(start + static_cast<double>(k) * step);
        return grid;
    }

    std::string curves_to_csv(const std::vector<RateCurve> &curves)
    {
        std::string out = "scheme,M,N,snr_db,mean_sum_rate,std_err,trials\n";
        char line[256];
        for (const auto &c : curves)
            for (const auto &p : c.points)
            {
                std::snprintf(line, sizeof line, "%s,%d,%d,%.6f,%.6f,%.6f,%d\n", to_string(c.scheme).c_str(), c.M,
                              c.N, p.snr_db, p.mean_sum_rate, p.std_err, p.trials);
                out += line;
            }
        return out;
    }

    namespace
    {
        struct Common
        {
            std::string M = "1";
            std::string N = "1";
            std::string scheme = "sajic";
            std::uint64_t seed = 1;
            double tol_rank = TolerancePolicy{}.relative_rank_eps;
            double tol_residual = TolerancePolicy{}.residual_eps;

            TolerancePolicy tol() const
            {
                TolerancePolicy t;
                t.relative_rank_eps = tol_rank;
                t.residual_eps = tol_residual;
                t.validate();
                return t;
            }
        };

        struct UsageError : std::invalid_argument
        {
            using std::invalid_argument::invalid_argument;
        };

        std::string timestamp_utc()
        {
            const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
            std::tm tm{};
            gmtime_r(&now, &tm);
            std::ostringstream os;
            os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
            return os.str();
        }

        json manifest(const std::string &subcommand, const std::vector<std::string> &args, std::uint64_t seed,
                      const std::string &started)
        {
            return json{{"subcommand", subcommand},
                        {"args", std::vector<std::string>(args.begin() + 1, args.end())},
                        {"seed", seed},
                        {"version", XRELAY_VERSION},
                        {"started_at", started}};
        }

        json matrix_json(const ComplexMatrix &A)
        {
            std::vector<double> re, im;
            for (Eigen::Index r = 0; r < A.rows(); ++r)
                for (Eigen::Index c = 0; c < A.cols(); ++c)
                {
                    re.push_back(A(r, c).real());
                    im.push_back(A(r, c).imag());
                }
            return json{{"rows", A.rows()}, {"cols", A.cols()}, {"re", re}, {"im", im}};
        }

        int single_value(const std::string &text, const char *flag)
        {
            const IntRange r = parse_range(text);
            if (r.first != r.last)
                throw UsageError(std::string(flag) + " takes a single value here");
            return r.first;
        }

        void add_common(CLI::App *sub, Common &c, bool with_scheme)
        {
            sub->add_option("--M", c.M, "antennas per source node");
            sub->add_option("--N", c.N, "antennas at the relay");
            if (with_scheme)
                sub->add_option("--scheme", c.scheme, "sajic | reduced");
            sub->add_option("--seed", c.seed, "master seed")->envname("XRELAY_SEED");
            sub->add_option("--tol-rank", c.tol_rank, "relative rank threshold");
            sub->add_option("--tol-residual", c.tol_residual, "residual tolerance");
        }

        TransceiverDesign build(Scheme scheme, const ChannelRealization &ch, const NetworkConfig &cfg,
                                const TolerancePolicy &tol)
        {
            switch (scheme)
            {
            case Scheme::sajic:
                return design_full(ch, cfg, tol);
            case Scheme::reduced:
                return design_reduced(ch, cfg, tol);
            default:
                throw UsageError("scheme '" + to_string(scheme) + "' has no transceiver design");
            }
        }

        // ---------------------------------------------------------------- analyze

        int cmd_analyze(const Common &c, bool half_duplex, std::ostream &out)
        {
            const IntRange Ms = parse_range(c.M);
            const IntRange Ns = parse_range(c.N);
            out << "   M    N  upper  sajic  reduced_full  timeshare\n";
            for (int M = Ms.first; M <= Ms.last; ++M)
                for (int N = Ns.first; N <= Ns.last; ++N)
                {
                    DofReport r = dof_report(M, N);
                    if (half_duplex)
                        r = r.half_duplex();
                    out << std::setw(4) << M << ' ' << std::setw(4) << N << ' ' << std::setw(6) << r.upper_bound << ' '
                        << std::setw(6) << r.sajic_dof << ' ' << std::setw(13) << (r.reduced_full ? "yes" : "no") << ' '
                        << std::setw(10) << r.time_share_dof << '\n';
                }
            return kSuccess;
        }

        // ----------------------------------------------------------------- design

        int cmd_design(const Common &c, const std::string &json_path, const std::vector<std::string> &args,
                       const std::string &started, std::ostream &out, std::ostream &err)
        {
            NetworkConfig cfg;
            cfg.M = single_value(c.M, "--M");
            cfg.N = single_value(c.N, "--N");
            const Scheme scheme = scheme_from_string(c.scheme);
            const TolerancePolicy tol = c.tol();

            const ChannelRealization ch = draw_channels(cfg, c.seed);
            const TransceiverDesign d = build(scheme, ch, cfg, tol);
            const DesignDiagnostics g = diagnose(d, ch, cfg, tol);
            const auto failures = g.failures(tol, cfg.power_P);

            const auto &a = d.allocation.per_pair;
            out << "design scheme=" << to_string(scheme) << " M=" << cfg.M << " N=" << cfg.N << " seed=" << c.seed << '\n';
            out << "allocation d13=" << a[0] << " d14=" << a[1] << " d23=" << a[2] << " d24=" << a[3]
                << " total=" << d.total_streams() << '\n';
            if (d.allocation.relay_null_splits)
            {
                const auto &s = *d.allocation.relay_null_splits;
                out << "relay null splits d13^1=" << s[0] << " d14^1=" << s[1] << " d23^1=" << s[2] << " d24^1=" << s[3]
                    << '\n';
            }
            out << "rank(G_r)=" << g.mac_rank << " rank(U_r)=" << g.relay_rank << " expected=" << g.total_streams << '\n';
            out << std::scientific << std::setprecision(3);
            out << "max MAC alignment residual " << g.mac_alignment_residual << '\n';
            out << "max BC alignment residual  " << g.bc_alignment_residual << '\n';
            out << "max interference leakage   " << g.max_leakage << '\n';
            out << "max relay null residual    " << g.relay_null_residual << '\n';
            out << "max node power " << g.max_node_power << " relay power " << g.relay_power << " (P=" << cfg.power_P
                << ")\n";
            out << std::defaultfloat;
            out << "desired link ranks";
            for (int i = 0; i < kNodes; ++i)
                out << " node" << i + 1 << '=' << g.desired_rank[static_cast<std::size_t>(i)] << '/'
                    << g.desired_streams[static_cast<std::size_t>(i)];
            out << '\n';
            for (const auto &f : failures)
                out << "violated: " << f << '\n';
            out << (failures.empty() ? "PASS" : "FAIL") << '\n';

            if (!json_path.empty())
            {
                json doc;
                doc["manifest"] = manifest("design", args, c.seed, started);
                doc["scheme"] = to_string(scheme);
                doc["M"] = cfg.M;
                doc["N"] = cfg.N;
                doc["allocation"] = a;
                if (d.allocation.relay_null_splits)
                    doc["relay_null_splits"] = *d.allocation.relay_null_splits;
                doc["diagnostics"] = {{"mac_alignment_residual", g.mac_alignment_residual},
                                      {"bc_alignment_residual", g.bc_alignment_residual},
                                      {"max_leakage", g.max_leakage},
                                      {"relay_null_residual", g.relay_null_residual},
                                      {"mac_rank", g.mac_rank},
                                      {"relay_rank", g.relay_rank},
                                      {"desired_rank", g.desired_rank},
                                      {"desired_streams", g.desired_streams},
                                      {"max_node_power", g.max_node_power},
                                      {"relay_power", g.relay_power},
                                      {"pass", failures.empty()}};
                doc["mac_basis"] = matrix_json(d.mac_basis);
                doc["relay_beamformers"] = matrix_json(d.relay_beamformers);
                for (int p = 0; p < kPairs; ++p)
                {
                    const auto &n = kPairNodes[static_cast<std::size_t>(p)];
                    const auto &pre = d.precoders[static_cast<std::size_t>(p)];
                    doc["precoders"]["V" + std::to_string(n.left + 1) + std::to_string(n.right + 1)] = matrix_json(pre.left);
                    doc["precoders"]["V" + std::to_string(n.right + 1) + std::to_string(n.left + 1)] = matrix_json(pre.right);
                }
                for (int i = 0; i < kNodes; ++i)
                {
                    doc["receive_filters"]["D" + std::to_string(i + 1)] =
                        matrix_json(d.receive_filters[static_cast<std::size_t>(i)]);
                    doc["filter_streams"]["D" + std::to_string(i + 1)] = d.filter_streams[static_cast<std::size_t>(i)];
                }
                std::ofstream f(json_path);
                if (!f)
                {
                    err << "cannot write " << json_path << '\n';
                    return kIoError;
                }
                f << doc.dump(2) << '\n';
            }
            return failures.empty() ? kSuccess : kNumerical;
        }

        // ----------------------------------------------------------------- verify

        int cmd_verify(const Common &c, int trials, double noise_var, std::ostream &out)
        {
            NetworkConfig cfg;
            cfg.M = single_value(c.M, "--M");
            cfg.N = single_value(c.N, "--N");
            const Scheme scheme = scheme_from_string(c.scheme);
            const TolerancePolicy tol = c.tol();
            if (trials < 1)
                throw UsageError("--trials must be >= 1");
            if (noise_var < 0.0)
                throw UsageError("--noise-var must be >= 0");
            require_feasible(scheme, cfg.M, cfg.N);

            long relay_errors = 0, node_errors = 0, bit_errors = 0, bits = 0;
            for (int t = 0; t < trials; ++t)
            {
                const auto tt = static_cast<std::uint64_t>(t);
                const ChannelRealization ch = draw_channels(cfg, derive_seed(c.seed, 0, tt));
                const TransceiverDesign d = build(scheme, ch, cfg, tol);
                const MessageSet msgs = MessageSet::random(d.allocation, derive_seed(c.seed, 1, tt));
                const ExchangeResult r = run_exchange(d, ch, msgs, noise_var, derive_seed(c.seed, 2, tt), tol);
                relay_errors += r.relay_xor_errors;
                node_errors += r.node_xor_errors;
                bit_errors += r.bit_errors;
                bits += r.bits_total;
            }

            out << "verify scheme=" << to_string(scheme) << " M=" << cfg.M << " N=" << cfg.N << " trials=" << trials
                << " seed=" << c.seed << " noise_var=" << noise_var << '\n';
            out << "relay XOR errors " << relay_errors << ", node XOR errors " << node_errors << ", bit errors "
                << bit_errors << " / " << bits << '\n';
            out << (bit_errors == 0 ? "PASS" : "FAIL") << '\n';
            return bit_errors == 0 ? kSuccess : kVerifyFailed;
        }

        // --------------------------------------------------------------- simulate

        struct SimulateArgs
        {
            std::string snr = "0:5:60";
            int trials = 1000;
            unsigned threads = 1;
            std::string out_path;
        };

        int cmd_simulate(const Common &c, const SimulateArgs &s, const std::vector<std::string> &args,
                         const std::string &started, std::ostream &out, std::ostream &err)
        {
            const IntRange Ms = parse_range(c.M);
            const IntRange Ns = parse_range(c.N);
            const std::vector<double> grid = parse_snr_grid(s.snr);
            if (s.trials < 1)
                throw UsageError("--trials must be >= 1");

            std::vector<Scheme> schemes;
            if (c.scheme == "all")
                schemes = {Scheme::sajic, Scheme::reduced, Scheme::timeshare};
            else
                schemes = {scheme_from_string(c.scheme)};

            SweepOptions opts;
            opts.trials = s.trials;
            opts.seed = c.seed;
            opts.threads = std::max(1u, s.threads);
            opts.tol = c.tol();

            const bool single = schemes.size() == 1 && Ms.first == Ms.last && Ns.first == Ns.last;
            std::vector<RateCurve> curves;
            for (Scheme scheme : schemes)
                for (int M = Ms.first; M <= Ms.last; ++M)
                    for (int N = Ns.first; N <= Ns.last; ++N)
                    {
                        try
                        {
                            require_feasible(scheme, M, N);
                        }
                        catch (const InfeasibleRegime &e)
                        {
                            if (single)
                                throw;
                            err << "skipping " << to_string(scheme) << " M=" << M << " N=" << N << ": " << e.name()
                                << ": " << e.what() << '\n';
                            continue;
                        }
                        NetworkConfig cfg;
                        cfg.M = M;
                        cfg.N = N;
                        curves.push_back(ergodic_sweep(cfg, scheme, grid, opts));
                    }

            const std::string csv = curves_to_csv(curves);
            std::ostream &summary = s.out_path.empty() ? err : out;
            json outputs = json::array();
            for (const auto &cv : curves)
            {
                summary << "curve scheme=" << to_string(cv.scheme) << " M=" << cv.M << " N=" << cv.N
                        << " slope_per_3db=" << std::fixed << std::setprecision(3) << cv.fitted_slope_per_3db
                        << std::defaultfloat << " redraws=" << cv.redraws << '\n';
                outputs.push_back({{"scheme", to_string(cv.scheme)},
                                   {"M", cv.M},
                                   {"N", cv.N},
                                   {"fitted_slope_per_3db", cv.fitted_slope_per_3db},
                                   {"redraws", cv.redraws}});
            }

            if (s.out_path.empty())
            {
                out << csv;
                return kSuccess;
            }

            std::ofstream f(s.out_path, std::ios::binary);
            if (!f)
            {
                err << "cannot write " << s.out_path << '\n';
                return kIoError;
            }
            f << csv;
            f.close();

            json m = manifest("simulate", args, c.seed, started);
            m["output"] = s.out_path;
            m["curves"] = outputs;
            std::ofstream mf(s.out_path + ".manifest.json");
            if (!mf)
            {
                err << "cannot write manifest for " << s.out_path << '\n';
                return kIoError;
            }
            mf << m.dump(2) << '\n';
            out << "wrote " << s.out_path << " (" << curves.size() << " curves)\n";
            return kSuccess;
        }

        // ----------------------------------------------------------------- replay

        int cmd_replay(const std::string &manifest_path, const std::string &out_override, std::ostream &out,
                       std::ostream &err)
        {
            std::ifstream f(manifest_path);
            if (!f)
            {
                err << "cannot read " << manifest_path << '\n';
                return kIoError;
            }
            json m;
            try
            {
                m = json::parse(f);
            }
            catch (const json::exception &e)
            {
                throw UsageError(std::string("malformed manifest: ") + e.what());
            }
            if (!m.contains("args") || !m["args"].is_array())
                throw UsageError("manifest has no argument list");

            std::vector<std::string> args{"xrelay"};
            for (const auto &a : m["args"])
                args.push_back(a.get<std::string>());
            if (!args.empty() && args.size() > 1 && args[1] == "replay")
                throw UsageError("refusing to replay a replay");
            if (!out_override.empty())
            {
                bool replaced = false;
                for (std::size_t k = 0; k + 1 < args.size(); ++k)
                    if (args[k] == "--out" || args[k] == "--json")
                    {
                        args[k + 1] = out_override;
                        replaced = true;
                    }
                if (!replaced)
                {
                    args.push_back("--out");
                    args.push_back(out_override);
                }
            }
            return run(args, out, err);
        }
    }

    int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
    {
        const std::string started = timestamp_utc();

        CLI::App app{"MIMO two-way X relay channel: DOF analysis, transceiver design and rate simulation", "xrelay"};
        app.require_subcommand(1);
        app.set_version_flag("--version", XRELAY_VERSION);

        Common common;
        bool half_duplex = false;
        std::string json_path;
        int verify_trials = 100;
        double noise_var = 0.0;
        SimulateArgs sim;
        std::string manifest_path, out_override;

        auto *analyze = app.add_subcommand("analyze", "tabulate closed-form DOF over antenna ranges");
        analyze->add_option("--M", common.M, "antennas per source node (value or a..b)")->required();
        analyze->add_option("--N", common.N, "antennas at the relay (value or a..b)")->required();
        analyze->add_flag("--half-duplex", half_duplex, "report half-duplex DOF (all values halved)");

        auto *design = app.add_subcommand("design", "build one transceiver design and print its diagnostics");
        add_common(design, common, true);
        design->add_option("--json", json_path, "also write the design and diagnostics as JSON");

        auto *verify = app.add_subcommand("verify", "bit-exact two-phase exchange over many channel draws");
        add_common(verify, common, true);
        verify->add_option("--trials", verify_trials, "channel realizations");
        verify->add_option("--noise-var", noise_var, "noise variance (0 = noiseless)");

        auto *simulate = app.add_subcommand("simulate", "ergodic sum-rate sweep written as CSV");
        add_common(simulate, common, true);
        simulate->add_option("--snr", sim.snr, "start:step:stop in dB");
        simulate->add_option("--trials", sim.trials, "realizations per SNR point");
        simulate->add_option("--threads", sim.threads, "worker threads (output is independent of this)");
        simulate->add_option("--out", sim.out_path, "CSV path (a .manifest.json is written next to it)");

        auto *replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
        replay->add_option("manifest", manifest_path, "manifest JSON")->required();
        replay->add_option("--out", out_override, "write to this path instead");

        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());

        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return kSuccess;
        }
        catch (const CLI::CallForVersion &)
        {
            out << XRELAY_VERSION << '\n';
            return kSuccess;
        }
        catch (const CLI::ParseError &e)
        {
            err << e.what() << '\n';
            return kUsage;
        }

        try
        {
            if (*analyze)
                return cmd_analyze(common, half_duplex, out);
            if (*design)
                return cmd_design(common, json_path, args, started, out, err);
            if (*verify)
                return cmd_verify(common, verify_trials, noise_var, out);
            if (*simulate)
                return cmd_simulate(common, sim, args, started, out, err);
            if (*replay)
                return cmd_replay(manifest_path, out_override, out, err);
        }
        catch (const InfeasibleRegime &e)
        {
            err << e.name() << ": " << e.what() << '\n';
            return kInfeasible;
        }
        catch (const AlignmentInfeasible &e)
        {
            err << e.name() << ": " << e.what() << '\n';
            return kInfeasible;
        }
        catch (const Error &e)
        {
            err << e.name() << ": " << e.what() << '\n';
            return kNumerical;
        }
        catch (const std::invalid_argument &e)
        {
            err << "usage error: " << e.what() << '\n';
            return kUsage;
        }
        return kUsage;
    }
}
