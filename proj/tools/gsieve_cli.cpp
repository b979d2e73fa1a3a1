// Command-line front end: configure, run, and export sieve experiments as
// CSV. Subcommands: verify, scan, extremal, counts, approx, selftest.
// Exit codes: 0 success, 2 usage error, 3 I/O error, 4 budget exceeded,
// 5 acceptance failure in selftest.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "gsieve/acceptance.hpp"
#include "gsieve/cli_support.hpp"
#include "gsieve/csv.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitBudget = 4;
constexpr int kExitAcceptance = 5;

struct CommonOpts {
    std::string set = "all";
    std::string q_spec;
    std::string n_spec;
    std::string n_rule_spec;
    std::string seq = "random_phase";
    std::uint64_t seed = 1;
    std::string bounds = "huxley";
    double epsilon = 0.05;
    double delta = 0.5;
    std::string output;
    int threads = 1;
    bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_q) {
    cmd->add_option("--set", o.set, "moduli set: all|squares|primes")
        ->default_val("all");
    auto* q = cmd->add_option("--Q", o.q_spec, "Q value or sweep lo:hi:*k / lo:hi:+k");
    if (needs_q) q->required();
    cmd->add_option("--N", o.n_spec, "N value or sweep lo:hi:*k / lo:hi:+k");
    cmd->add_option("--N-rule", o.n_rule_spec, "N rule pow:<p>,div:<d> (N = Q^p / d)");
    cmd->add_option("--seq", o.seq, "sequence: ones|random_phase|random_gaussian|spike")
        ->default_val("random_phase");
    cmd->add_option("--seed", o.seed, "random seed")->default_val(1);
    cmd->add_option("--bounds", o.bounds,
                    "comma list: huxley,trivial,thm2,thm3,thm4")
        ->default_val("huxley");
    cmd->add_option("--epsilon", o.epsilon, "epsilon exponent knob")->default_val(0.05);
    cmd->add_option("--delta", o.delta, "delta for the prime-moduli bound")
        ->default_val(0.5);
    cmd->add_option("--output", o.output, "CSV output path (default: stdout)");
    cmd->add_option("--threads", o.threads, "worker threads for sweeps")->default_val(1);
    cmd->add_flag("--timing", o.timing,
                  "report wall times in the seconds column (off: zeros, so "
                  "identical reruns emit byte-identical CSV)");
}

std::vector<gsieve::ExperimentConfig> build_configs(const CommonOpts& o) {
    using namespace gsieve;
    std::vector<std::int64_t> Qs = parse_sweep(o.q_spec);
    if (o.n_spec.empty() && o.n_rule_spec.empty())
        throw std::invalid_argument("one of --N or --N-rule is required");
    if (!o.n_spec.empty() && !o.n_rule_spec.empty())
        throw std::invalid_argument("--N and --N-rule are mutually exclusive");

    std::vector<BoundName> bounds = parse_bounds_list(o.bounds);
    SetKind set = parse_set_kind(o.set);
    SeqKind seq = parse_seq_kind(o.seq);

    std::vector<ExperimentConfig> configs;
    for (std::int64_t Q : Qs) {
        std::vector<std::int64_t> Ns;
        if (!o.n_rule_spec.empty())
            Ns.push_back(apply_n_rule(parse_n_rule(o.n_rule_spec), Q));
        else
            Ns = parse_sweep(o.n_spec);
        for (std::int64_t N : Ns) {
            ExperimentConfig cfg;
            cfg.set = set;
            cfg.Q = Q;
            cfg.N = N;
            cfg.seq = seq;
            cfg.seed = o.seed;
            for (BoundName b : bounds) {
                BoundSpec spec{b};
                spec.epsilon = o.epsilon;
                spec.delta = o.delta;
                cfg.bounds.push_back(spec);
            }
            configs.push_back(cfg);
        }
    }
    return configs;
}

// Run the configurations on a worker pool; results keep configuration order
// (final CSV is sorted anyway, so completion order never matters).
std::vector<gsieve::SieveReport> run_all(const std::vector<gsieve::ExperimentConfig>& configs,
                                         int threads) {
    std::vector<gsieve::SieveReport> reports(configs.size());
    if (threads < 1) threads = 1;
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= configs.size()) return;
            try {
                reports[i] = gsieve::run_experiment(configs[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    return reports;
}

int write_output(const std::string& csv, const std::string& path) {
    if (path.empty()) {
        std::fputs(csv.c_str(), stdout);
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "error: cannot open %s\n", path.c_str());
        return kExitIo;
    }
    f << csv;
    if (!f) {
        std::fprintf(stderr, "error: write failed for %s\n", path.c_str());
        return kExitIo;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace gsieve;
    CLI::App app{"Large-sieve experiment laboratory for the Gaussian integers"};
    app.require_subcommand(1);

    CommonOpts verify_opts, scan_opts;
    auto* cmd_verify = app.add_subcommand("verify", "run one experiment configuration");
    add_common(cmd_verify, verify_opts, true);
    auto* cmd_scan = app.add_subcommand("scan", "sweep Q and/or N over a grid");
    add_common(cmd_scan, scan_opts, true);

    std::string ex_set = "all";
    std::int64_t ex_Q = 8, ex_N = 16;
    int ex_samples = 2;
    std::string ex_output;
    auto* cmd_ex = app.add_subcommand(
        "extremal", "extremal counting quantities (K, condition-X, sampled master bound)");
    cmd_ex->add_option("--set", ex_set, "moduli set")->default_val("all");
    cmd_ex->add_option("--Q", ex_Q, "set bound")->required();
    cmd_ex->add_option("--N", ex_N, "sequence norm bound")->required();
    cmd_ex->add_option("--samples", ex_samples, "sampling density")->default_val(2);
    cmd_ex->add_option("--output", ex_output, "output path (default: stdout)");

    std::string ct_set = "all";
    std::int64_t ct_Q = 8;
    std::string ct_output;
    auto* cmd_counts = app.add_subcommand("counts", "set cardinalities and node counts");
    cmd_counts->add_option("--set", ct_set, "moduli set")->default_val("all");
    cmd_counts->add_option("--Q", ct_Q, "set bound")->required();
    cmd_counts->add_option("--output", ct_output, "output path (default: stdout)");

    double ap_re = 0, ap_im = 0, ap_tau = 4;
    auto* cmd_approx = app.add_subcommand("approx", "Dirichlet approximation of a point");
    cmd_approx->add_option("--re", ap_re, "real part of alpha")->required();
    cmd_approx->add_option("--im", ap_im, "imaginary part of alpha")->required();
    cmd_approx->add_option("--tau", ap_tau, "denominator bound tau >= 1")->default_val(4.0);

    std::string st_outdir = ".";
    auto* cmd_selftest =
        app.add_subcommand("selftest", "run the full acceptance suite (CI entry point)");
    cmd_selftest->add_option("--outdir", st_outdir, "directory for CSV artifacts")
        ->default_val(".");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_verify || *cmd_scan) {
            const CommonOpts& o = *cmd_verify ? verify_opts : scan_opts;
            auto reports = run_all(build_configs(o), o.threads);
            return write_output(render_csv(to_records(reports, !o.timing)), o.output);
        }
        if (*cmd_ex) {
            ModuliSet s = build_set(parse_set_kind(ex_set), ex_Q);
            double Delta = 1.0 / static_cast<double>(ex_N);
            std::vector<std::array<double, 2>> pts;
            for (const FareyNode& n : enumerate_farey(s)) pts.push_back(node_r2_coords(n));
            int K = pts.empty() ? 0 : count_K(Delta, pts);
            auto cond = min_X_condition11(s, static_cast<double>(s.norm_bound),
                                          static_cast<double>(ex_N));
            double master = theorem1_rhs_sampled(s, static_cast<double>(ex_N), ex_samples);
            std::string text =
                "set=" + to_string(s.kind) + " Q=" + std::to_string(ex_Q) +
                " N=" + std::to_string(ex_N) + "\nK(1/N)=" + std::to_string(K) +
                "\nmin_X_condition=" + format_sig17(cond.X) +
                "\nmaster_bound_sampled_lower=" + format_sig17(master) + "\n";
            return write_output(text, ex_output);
        }
        if (*cmd_counts) {
            ModuliSet s = build_set(parse_set_kind(ct_set), ct_Q);
            std::int64_t phi_sum = 0;
            for (GaussInt q : s.elements) phi_sum += euler_phi(q);
            std::string text = "set=" + to_string(s.kind) + " Q=" + std::to_string(ct_Q) +
                               "\nelements=" + std::to_string(s.elements.size()) +
                               "\nnorm_bound=" + std::to_string(s.norm_bound) +
                               "\nfarey_nodes=" + std::to_string(phi_sum) + "\n";
            std::size_t slice_idx = 0;
            for (const auto& sl : dyadic_slices(s))
                text += "slice" + std::to_string(slice_idx++) + " Q0=" +
                        format_sig17(sl.Q0) + " count=" + std::to_string(sl.elements.size()) +
                        "\n";
            return write_output(text, ct_output);
        }
        if (*cmd_approx) {
            Approximant ap = dirichlet_approx({ap_re, ap_im}, ap_tau);
            std::printf("b=%lld%+lldi r=%lld%+lldi |z|=%s tau=%s\n",
                        static_cast<long long>(ap.b.re), static_cast<long long>(ap.b.im),
                        static_cast<long long>(ap.r.re), static_cast<long long>(ap.r.im),
                        format_sig17(std::abs(ap.z)).c_str(),
                        format_sig17(ap.tau).c_str());
            return 0;
        }
        if (*cmd_selftest) {
            AcceptanceOutcome out = run_acceptance(GSIEVE_GOLDEN_DIR);
            for (const CriterionResult& r : out.results)
                std::printf("[%2d] %s  %s  (%s)\n", r.id, r.passed ? "PASS" : "FAIL",
                            r.name.c_str(), r.detail.c_str());
            {
                std::ofstream f(st_outdir + "/selftest_huxley.csv", std::ios::binary);
                if (!f) return kExitIo;
                f << out.huxley_csv;
                std::ofstream g(st_outdir + "/selftest_thm3.csv", std::ios::binary);
                if (!g) return kExitIo;
                g << out.thm3_csv;
            }
            return out.all_passed() ? 0 : kExitAcceptance;
        }
    } catch (const budget_error& e) {
        std::fprintf(stderr, "error: budget exceeded: %s\n", e.what());
        return kExitBudget;
    } catch (const io_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
