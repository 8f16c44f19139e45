/* swplab: command-line laboratory for the gamma-weight lattice polymer.
 *
 * One subcommand per experiment.  Every run writes its payload files plus a
 * manifest.json (resolved inputs, version, seed derivation, wall time) into
 * --out.  With a fixed --seed and fixed inputs all payload files are
 * byte-identical across runs; manifest.json differs only in
 * "wall_time_seconds", which is why determinism checks must ignore that one
 * key.
 *
 * Exit codes: 0 success, 2 usage/config error, 3 numerical failure
 * (non-convergence or overflow).  Errors are reported as a JSON object on
 * stderr: {"error": {"type": "usage"|"numerical", "message": "..."}}.
 */

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "swp/asymptotics.hpp"
#include "swp/fredholm.hpp"
#include "swp/moments.hpp"
#include "swp/polymer.hpp"
#include "swp/qtasep.hpp"
#include "swp/rng.hpp"
#include "swp/stationary.hpp"
#include "swp/stats.hpp"

namespace {

using nlohmann::json;

constexpr const char* kVersion = "v1.0.0";
constexpr const char* kSeedDerivation =
    "replica r draws from the stream stream_seed(seed, r) (splitmix64); "
    "auxiliary samplers use masters seed+1, seed+2, ...";

/* Shortest round-trip decimal form, identical across runs of the same build. */
std::string num(double x) { return json(x).dump(); }

struct Common {
    std::string config;
    std::string out = ".";
    std::uint64_t seed = 1;
    int threads = 1;
};

/* Deferred "config file fills anything the command line left alone". */
class ConfigBinder {
  public:
    template <class T>
    void bind(CLI::Option* opt, const std::string& key, T& var) {
        keys_.insert(key);
        appliers_.push_back([opt, key, &var](const json& cfg) {
            if (opt->count() == 0 && cfg.contains(key)) var = cfg.at(key).get<T>();
        });
    }

    void apply(const json& cfg) const {
        if (!cfg.is_object()) throw std::domain_error("config: top level must be a JSON object");
        for (const auto& item : cfg.items())
            if (keys_.count(item.key()) == 0)
                throw std::domain_error("config: unknown key \"" + item.key() +
                                        "\" for this subcommand");
        for (const auto& f : appliers_) f(cfg);
    }

  private:
    std::set<std::string> keys_;
    std::vector<std::function<void(const json&)>> appliers_;
};

void add_common(CLI::App& sub, Common& c, ConfigBinder& b) {
    sub.add_option("--config", c.config, "JSON config file; explicit flags win over it");
    b.bind(sub.add_option("--seed", c.seed, "master seed for all random streams"), "seed",
           c.seed);
    b.bind(sub.add_option("--out", c.out, "output directory (created if missing)"), "out",
           c.out);
    b.bind(sub.add_option("--threads", c.threads, "worker threads for replica loops"),
           "threads", c.threads);
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw std::domain_error("config: cannot open \"" + path + "\"");
    return json::parse(in);
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open \"" + path + "\" for writing");
    out << body;
    if (!out) throw std::runtime_error("write to \"" + path + "\" failed");
}

void write_manifest(const std::string& dir, const std::string& command, const Common& c,
                    const json& inputs, const std::vector<std::string>& outputs,
                    double wall_seconds) {
    json m;
    m["command"] = command;
    m["version"] = kVersion;
    m["seed"] = c.seed;
    m["threads"] = c.threads;
    m["seed_derivation"] = kSeedDerivation;
    m["inputs"] = inputs;
    m["outputs"] = outputs;
    m["wall_time_seconds"] = wall_seconds;
    write_text(dir + "/manifest.json", m.dump(2) + "\n");
}

/* replicas independent draws of log Z(t,n) (delta initial data). */
std::vector<double> sample_logz(const swp::GammaParams& params, int t, int n, int replicas,
                                std::uint64_t master_seed, int threads) {
    std::vector<double> out(static_cast<std::size_t>(replicas));
    swp::parallel_for(replicas, threads, [&](std::int64_t r) {
        swp::Rng rng = swp::Rng::for_replica(master_seed, static_cast<std::uint64_t>(r));
        swp::LogPartitionField f = swp::simulate_field(params, t, n, rng);
        out[static_cast<std::size_t>(r)] = f.at(t, n);
    });
    return out;
}

/* All weakly decreasing index vectors of length 1..max_len with entries in
   1..max_entry, shortest first, lexicographically within a length. */
std::vector<std::vector<int>> decreasing_vectors(int max_len, int max_entry) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int cap) {
        if (!cur.empty()) out.push_back(cur);
        if (remaining == 0) return;
        for (int v = cap; v >= 1; --v) {
            cur.push_back(v);
            rec(remaining - 1, v);
            cur.pop_back();
        }
    };
    // Group by length: generate length-L vectors for L = 1..max_len.
    out.clear();
    for (int len = 1; len <= max_len; ++len) {
        std::vector<int> vec(len);
        std::function<void(int, int)> fill = [&](int pos, int cap) {
            if (pos == len) {
                out.push_back(vec);
                return;
            }
            for (int v = cap; v >= 1; --v) {
                vec[pos] = v;
                fill(pos + 1, v);
            }
        };
        fill(0, max_entry);
    }
    return out;
}

// ---------------------------------------------------------------------------
// simulate-polymer
// ---------------------------------------------------------------------------

struct SimulatePolymerArgs {
    Common c;
    double k = 1.0, theta = 1.0;
    int kappa = 2, n = 8, replicas = 1000;
};

int run_simulate_polymer(const SimulatePolymerArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    swp::GammaParams params(a.k, a.theta);
    std::vector<double> logz =
        swp::sample_free_energy(params, a.kappa, a.n, a.replicas, a.c.seed, a.c.threads);

    std::ostringstream csv;
    csv << "replica,n,kappa,k,theta,log_Z\n";
    for (int r = 0; r < a.replicas; ++r)
        csv << r << ',' << a.n << ',' << a.kappa << ',' << num(a.k) << ',' << num(a.theta)
            << ',' << num(logz[static_cast<std::size_t>(r)]) << '\n';
    write_text(a.c.out + "/samples.csv", csv.str());

    json inputs{{"k", a.k},         {"theta", a.theta},       {"kappa", a.kappa},
                {"n", a.n},         {"replicas", a.replicas}};
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(a.c.out, "simulate-polymer", a.c, inputs, {"samples.csv"}, wall);
    return 0;
}

// ---------------------------------------------------------------------------
// qtasep-converge
// ---------------------------------------------------------------------------

struct QtasepArgs {
    Common c;
    double theta = 1.0, m1 = 1.0;
    int t = 3, n = 2, replicas = 20000, dump_replicas = 10;
    std::vector<double> epsilons{0.1, 0.05, 0.02};
};

int run_qtasep(const QtasepArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    if (a.n < 1 || a.t < 0) throw std::domain_error("qtasep-converge: need n >= 1, t >= 0");
    if (a.epsilons.empty()) throw std::domain_error("qtasep-converge: need at least one epsilon");
    const double shape = a.m1 / a.theta;
    swp::GammaParams params(shape, a.theta);

    // Reference law: exp(log Z(t,n)) from the polymer recursion (master seed+1).
    std::vector<double> zref;
    if (a.t >= 1) {
        std::vector<double> logz =
            sample_logz(params, a.t, a.n, a.replicas, a.c.seed + 1, a.c.threads);
        zref.resize(logz.size());
        for (std::size_t i = 0; i < logz.size(); ++i) zref[i] = std::exp(logz[i]);
    }

    json rows = json::array();
    for (std::size_t e = 0; e < a.epsilons.size(); ++e) {
        swp::ScalingParams sp{a.epsilons[e], a.theta, a.m1};
        std::vector<double> f =
            swp::sample_fluctuations(sp, a.t, a.n, a.replicas, a.c.seed, a.c.threads);
        for (double& x : f) x = std::exp(x);
        json row{{"epsilon", a.epsilons[e]}};
        if (!zref.empty()) {
            double d = swp::ks_statistic_two_sample(f, zref);
            double n_eff = static_cast<double>(a.replicas) / 2.0;
            row["ks_two_sample"] = d;
            row["p_value"] = swp::ks_pvalue(d, n_eff);
        }
        rows.push_back(row);
    }
    json summary{{"t", a.t},       {"n", a.n},           {"theta", a.theta},
                 {"m1", a.m1},     {"shape", shape},      {"replicas", a.replicas},
                 {"rows", rows}};
    write_text(a.c.out + "/summary.json", summary.dump(2) + "\n");

    // Trajectory dump at the smallest epsilon, using the same replica streams
    // as the fluctuation samples above.
    swp::ScalingParams sp{a.epsilons.back(), a.theta, a.m1};
    swp::QParams qp = sp.qparams();
    std::ostringstream csv;
    csv << "replica,t,n,X\n";
    const int dump = std::min(a.dump_replicas, a.replicas);
    for (int r = 0; r < dump; ++r) {
        swp::Rng rng = swp::Rng::for_replica(a.c.seed, static_cast<std::uint64_t>(r));
        swp::QTasepState st = swp::QTasepState::step_initial(a.n);
        for (int i = 1; i <= a.n; ++i)
            csv << r << ",0," << i << ',' << st.x[static_cast<std::size_t>(i - 1)] << '\n';
        for (int s = 1; s <= a.t; ++s) {
            swp::step(st, qp, rng);
            for (int i = 1; i <= a.n; ++i)
                csv << r << ',' << s << ',' << i << ','
                    << st.x[static_cast<std::size_t>(i - 1)] << '\n';
        }
    }
    write_text(a.c.out + "/trajectories.csv", csv.str());

    json inputs{{"theta", a.theta},   {"m1", a.m1},
                {"t", a.t},           {"n", a.n},
                {"replicas", a.replicas}, {"dump_replicas", a.dump_replicas},
                {"epsilons", a.epsilons}};
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(a.c.out, "qtasep-converge", a.c, inputs,
                   {"summary.json", "trajectories.csv"}, wall);
    return 0;
}

// ---------------------------------------------------------------------------
// moments-crosscheck
// ---------------------------------------------------------------------------

struct MomentsArgs {
    Common c;
    double k = 1.0, theta = 1.0;
    int t = 3;
    std::vector<int> nvec;  // empty: enumerate all decreasing vectors, len <= 3
};

int run_moments(const MomentsArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    swp::GammaParams params(a.k, a.theta);

    std::vector<std::vector<int>> vectors;
    if (!a.nvec.empty()) {
        for (std::size_t i = 1; i < a.nvec.size(); ++i)
            if (a.nvec[i] > a.nvec[i - 1])
                throw std::domain_error("moments-crosscheck: --nvec must be weakly decreasing");
        vectors.push_back(a.nvec);
    } else {
        vectors = decreasing_vectors(3, a.t + 1);
    }

    json rows = json::array();
    for (const auto& nv : vectors) {
        double ur = swp::moment_recursion(params, a.t, nv);
        double uc = swp::moment_contour(params, a.t, nv);
        double rel = std::abs(uc - ur) / std::max(1.0, std::abs(ur));
        rows.push_back(json{{"t", a.t},
                            {"nvec", nv},
                            {"u_recursion", ur},
                            {"u_contour", uc},
                            {"rel_err", rel}});
    }
    json report{{"k", a.k}, {"theta", a.theta}, {"rows", rows}};
    write_text(a.c.out + "/moments.json", report.dump(2) + "\n");

    json inputs{{"k", a.k}, {"theta", a.theta}, {"t", a.t}, {"nvec", a.nvec}};
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(a.c.out, "moments-crosscheck", a.c, inputs, {"moments.json"}, wall);
    return 0;
}

// ---------------------------------------------------------------------------
// fredholm-laplace
// ---------------------------------------------------------------------------

struct FredholmArgs {
    Common c;
    double k = 1.0, theta = 1.0;
    int t = 4, n = 2, mc_replicas = 100000, nodes = 64, max_doublings = 3;
    std::vector<double> u{0.2, 0.5, 1.0};
    double tw_lo = 0.0, tw_hi = 0.0, tw_step = 0.0;  // tw_step > 0 enables the table
    int tw_nodes = 160;
};

int run_fredholm(const FredholmArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    swp::GammaParams params(a.k, a.theta);
    swp::LaplaceOptions opts;
    opts.circle_nodes = a.nodes;
    opts.max_doublings = a.max_doublings;

    std::vector<double> logz;
    if (a.mc_replicas > 0)
        logz = sample_logz(params, a.t, a.n, a.mc_replicas, a.c.seed, a.c.threads);

    std::ostringstream csv;
    csv << "u,det,mc_estimate,mc_stderr\n";
    for (double u : a.u) {
        double det = swp::laplace_transform(params, a.t, a.n, u, opts);
        csv << num(u) << ',' << num(det) << ',';
        if (!logz.empty()) {
            std::vector<double> obs(logz.size());
            for (std::size_t i = 0; i < logz.size(); ++i) obs[i] = std::exp(-u * std::exp(logz[i]));
            swp::MeanVar mv = swp::mean_var(obs);
            csv << num(mv.mean) << ',' << num(mv.se);
        } else {
            csv << ',';
        }
        csv << '\n';
    }
    write_text(a.c.out + "/laplace.csv", csv.str());
    std::vector<std::string> outputs{"laplace.csv"};

    if (a.tw_step > 0.0) {
        if (!(a.tw_hi > a.tw_lo))
            throw std::domain_error("fredholm-laplace: need --tw-hi > --tw-lo");
        swp::TracyWidomTable table =
            swp::TracyWidomTable::build(a.tw_lo, a.tw_hi, a.tw_step, a.tw_nodes);
        std::ostringstream tw;
        tw << "r,F\n";
        const auto& vals = table.values();
        for (std::size_t i = 0; i < vals.size(); ++i)
            tw << num(a.tw_lo + a.tw_step * static_cast<double>(i)) << ',' << num(vals[i])
               << '\n';
        write_text(a.c.out + "/tw_table.csv", tw.str());
        outputs.push_back("tw_table.csv");
    }

    json inputs{{"k", a.k},
                {"theta", a.theta},
                {"t", a.t},
                {"n", a.n},
                {"u", a.u},
                {"mc_replicas", a.mc_replicas},
                {"nodes", a.nodes},
                {"max_doublings", a.max_doublings},
                {"tw_lo", a.tw_lo},
                {"tw_hi", a.tw_hi},
                {"tw_step", a.tw_step},
                {"tw_nodes", a.tw_nodes}};
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(a.c.out, "fredholm-laplace", a.c, inputs, outputs, wall);
    return 0;
}

// ---------------------------------------------------------------------------
// critical-point
// ---------------------------------------------------------------------------

struct CriticalArgs {
    Common c;
    double k = 1.0, theta = 1.0, kappa = 2.0;
};

int run_critical(const CriticalArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    swp::GammaParams params(a.k, a.theta);
    swp::CriticalPoint cp = swp::solve_critical_point(a.k, a.kappa);

    json report{{"k", a.k}, {"theta", a.theta}, {"kappa", a.kappa}, {"found", cp.found}};
    if (cp.found) {
        swp::CriticalData cd = swp::critical_data(params, a.kappa);
        report["t_bar"] = cd.t_bar;
        report["residual"] = cp.residual;
        report["f_bar"] = cd.f_bar;
        report["g_bar"] = cd.g_bar;
    }
    if (a.kappa >= 1.0) {
        swp::VariationalResult vr = swp::variational_free_energy(params, a.kappa);
        json v{{"interior", vr.interior}, {"value", vr.value}};
        if (std::isfinite(vr.beta_star))
            v["beta_star"] = vr.beta_star;
        else
            v["beta_star"] = nullptr;
        report["variational"] = v;
    }
    write_text(a.c.out + "/critical_point.json", report.dump(2) + "\n");

    json inputs{{"k", a.k}, {"theta", a.theta}, {"kappa", a.kappa}};
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(a.c.out, "critical-point", a.c, inputs, {"critical_point.json"}, wall);
    return 0;
}

// ---------------------------------------------------------------------------
// lln
// ---------------------------------------------------------------------------

struct LlnArgs {
    Common c;
    double k = 1.0, theta = 1.0;
    int kappa = 20, replicas = 1000;
    std::vector<int> n{25, 50, 100, 200};
};

int run_lln(const LlnArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    swp::GammaParams params(a.k, a.theta);
    swp::CriticalData cd = swp::critical_data(params, static_cast<double>(a.kappa));

    json rows = json::array();
    std::ostringstream csv;
    csv << "n,replicas,mean_over_n,se_over_n,f_bar,deviation\n";
    for (std::size_t i = 0; i < a.n.size(); ++i) {
        swp::LlnResult r = swp::lln_experiment(params, a.kappa, a.n[i], a.replicas,
                                               a.c.seed + i, a.c.threads);
        rows.push_back(json{{"n", r.n},
                            {"mean_over_n", r.mean_over_n},
                            {"se_over_n", r.se_over_n},
                            {"deviation", r.deviation}});
        csv << r.n << ',' << r.replicas << ',' << num(r.mean_over_n) << ','
            << num(r.se_over_n) << ',' << num(r.f_bar) << ',' << num(r.deviation) << '\n';
    }
    json report{{"k", a.k},           {"theta", a.theta}, {"kappa", a.kappa},
                {"replicas", a.replicas}, {"t_bar", cd.t_bar},  {"f_bar", cd.f_bar},
                {"g_bar", cd.g_bar},  {"rows", rows}};
    write_text(a.c.out + "/lln.json", report.dump(2) + "\n");
    write_text(a.c.out + "/lln.csv", csv.str());

    json inputs{{"k", a.k},   {"theta", a.theta},       {"kappa", a.kappa},
                {"n", a.n},   {"replicas", a.replicas}};
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(a.c.out, "lln", a.c, inputs, {"lln.json", "lln.csv"}, wall);
    return 0;
}

// ---------------------------------------------------------------------------
// tw-fluctuations
// ---------------------------------------------------------------------------

struct TwArgs {
    Common c;
    double k = 1.0, theta = 1.0;
    int kappa = 20, replicas = 1000;
    std::vector<int> n{50, 100, 200};
    double table_lo = -12.0, table_hi = 6.0, table_step = 0.05;
    int table_nodes = 160;
};

int run_tw(const TwArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    swp::GammaParams params(a.k, a.theta);
    swp::CriticalData cd = swp::critical_data(params, static_cast<double>(a.kappa));
    swp::TracyWidomTable table =
        swp::TracyWidomTable::build(a.table_lo, a.table_hi, a.table_step, a.table_nodes);

    std::ostringstream tw;
    tw << "r,F\n";
    for (std::size_t i = 0; i < table.values().size(); ++i)
        tw << num(a.table_lo + a.table_step * static_cast<double>(i)) << ','
           << num(table.values()[i]) << '\n';
    write_text(a.c.out + "/tw_table.csv", tw.str());

    json rows = json::array();
    std::ostringstream csv;
    csv << "n,replica,s\n";
    for (std::size_t i = 0; i < a.n.size(); ++i) {
        const int n = a.n[i];
        std::vector<double> logz = swp::sample_free_energy(params, a.kappa, n, a.replicas,
                                                           a.c.seed + i, a.c.threads);
        const double scale = std::cbrt(cd.g_bar * static_cast<double>(n) / 2.0);
        std::vector<double> rescaled(logz.size());
        for (std::size_t r = 0; r < logz.size(); ++r) {
            rescaled[r] = (logz[r] - static_cast<double>(n) * cd.f_bar) / scale;
            csv << n << ',' << r << ',' << num(rescaled[r]) << '\n';
        }
        double d = swp::ks_statistic(rescaled, [&table](double s) { return table.cdf(s); });
        rows.push_back(json{{"n", n},
                            {"ks", d},
                            {"p_value", swp::ks_pvalue(d, static_cast<double>(a.replicas))}});
    }
    write_text(a.c.out + "/rescaled_samples.csv", csv.str());

    json report{{"k", a.k},           {"theta", a.theta}, {"kappa", a.kappa},
                {"replicas", a.replicas}, {"t_bar", cd.t_bar},  {"f_bar", cd.f_bar},
                {"g_bar", cd.g_bar},  {"rows", rows}};
    write_text(a.c.out + "/report.json", report.dump(2) + "\n");

    json inputs{{"k", a.k},
                {"theta", a.theta},
                {"kappa", a.kappa},
                {"n", a.n},
                {"replicas", a.replicas},
                {"table_lo", a.table_lo},
                {"table_hi", a.table_hi},
                {"table_step", a.table_step},
                {"table_nodes", a.table_nodes}};
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(a.c.out, "tw-fluctuations", a.c, inputs,
                   {"tw_table.csv", "rescaled_samples.csv", "report.json"}, wall);
    return 0;
}

// ---------------------------------------------------------------------------
// stationary-tests
// ---------------------------------------------------------------------------

struct StationaryArgs {
    Common c;
    double beta = 1.0, k = 1.0, theta = 1.0;
    int t0 = 3, n0 = 3, samples = 5000, dump_samples = 2000, lln_n = 2000;
    int decomp_t = 8, decomp_n = 6;
    std::vector<int> shifts{0, 0, 1, 0, 0, 1, 3, 2};  // flattened (dt,dn) pairs
};

int run_stationary(const StationaryArgs& a) {
    auto t0 = std::chrono::steady_clock::now();
    if (a.shifts.size() % 2 != 0)
        throw std::domain_error("stationary-tests: --shifts takes flattened (dt,dn) pairs");
    std::vector<std::pair<int, int>> shifts;
    for (std::size_t i = 0; i + 1 < a.shifts.size(); i += 2)
        shifts.emplace_back(a.shifts[i], a.shifts[i + 1]);
    swp::StationaryConfig config{a.beta, swp::GammaParams(a.k, a.theta)};

    std::vector<swp::ShiftKsRow> ks =
        swp::shift_invariance_test(config, a.t0, a.n0, shifts, a.samples, a.c.seed,
                                   a.c.threads);
    json rows = json::array();
    for (const auto& r : ks)
        rows.push_back(json{{"dt", r.dt},
                            {"dn", r.dn},
                            {"edge_class", r.horizontal ? "horizontal" : "vertical"},
                            {"ks_two_sample", r.ks_two_sample},
                            {"p_two_sample", r.p_two_sample},
                            {"ks_vs_law", r.ks_vs_law},
                            {"p_vs_law", r.p_vs_law}});

    swp::Rng decomp_rng(swp::stream_seed(a.c.seed + 1, 0));
    swp::StationaryField field =
        swp::build_stationary_field(config, a.decomp_t, a.decomp_n, decomp_rng);
    double max_residual = 0.0;
    for (int t = 1; t <= a.decomp_t; ++t)
        for (int n = 1; n <= a.decomp_n; ++n)
            max_residual = std::max(max_residual, swp::decomposition_residual(field, t, n));

    swp::StationaryLln lln = swp::stationary_lln_trajectory(config, a.lln_n, a.c.seed + 2);

    json report{{"beta", a.beta},
                {"k", a.k},
                {"theta", a.theta},
                {"t0", a.t0},
                {"n0", a.n0},
                {"samples", a.samples},
                {"rows", rows},
                {"decomposition",
                 json{{"t_max", a.decomp_t}, {"n_max", a.decomp_n},
                      {"max_residual", max_residual}}},
                {"lln", json{{"n", lln.n},
                             {"value", lln.value},
                             {"limit", lln.limit},
                             {"tol", lln.tol},
                             {"within_tol", std::abs(lln.value - lln.limit) < lln.tol}}}};
    write_text(a.c.out + "/ks_report.json", report.dump(2) + "\n");

    // Raw edge-ratio samples at (t0,n0) for plotting; independent replica
    // fields under master seed+3.
    std::ostringstream csv;
    csv << "replica,edge_class,value\n";
    const int dump = std::min(a.dump_samples, a.samples);
    for (int r = 0; r < dump; ++r) {
        swp::Rng rng = swp::Rng::for_replica(a.c.seed + 3, static_cast<std::uint64_t>(r));
        swp::StationaryField f = swp::build_stationary_field(config, a.t0, a.n0, rng);
        csv << r << ",horizontal," << num(f.u(a.t0, a.n0)) << '\n';
        csv << r << ",vertical," << num(f.v(a.t0, a.n0)) << '\n';
    }
    write_text(a.c.out + "/samples.csv", csv.str());

    json inputs{{"beta", a.beta},       {"k", a.k},
                {"theta", a.theta},     {"t0", a.t0},
                {"n0", a.n0},           {"samples", a.samples},
                {"dump_samples", a.dump_samples}, {"lln_n", a.lln_n},
                {"decomp_t", a.decomp_t}, {"decomp_n", a.decomp_n},
                {"shifts", a.shifts}};
    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(a.c.out, "stationary-tests", a.c, inputs,
                   {"ks_report.json", "samples.csv"}, wall);
    return 0;
}

void report_error(const char* type, const std::string& message) {
    json err{{"error", json{{"type", type}, {"message", message}}}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"swplab: numerical laboratory for the gamma-weight lattice polymer"};
    app.require_subcommand(1);

    SimulatePolymerArgs sp;
    ConfigBinder sp_b;
    CLI::App* sp_cmd = app.add_subcommand(
        "simulate-polymer", "sample log Z(kappa n, n) and dump free-energy samples");
    add_common(*sp_cmd, sp.c, sp_b);
    sp_b.bind(sp_cmd->add_option("--k", sp.k, "gamma shape"), "k", sp.k);
    sp_b.bind(sp_cmd->add_option("--theta", sp.theta, "gamma scale"), "theta", sp.theta);
    sp_b.bind(sp_cmd->add_option("--kappa", sp.kappa, "time/space slope t = kappa n"),
              "kappa", sp.kappa);
    sp_b.bind(sp_cmd->add_option("--n", sp.n, "spatial endpoint"), "n", sp.n);
    sp_b.bind(sp_cmd->add_option("--replicas", sp.replicas, "independent samples"),
              "replicas", sp.replicas);

    QtasepArgs qt;
    ConfigBinder qt_b;
    CLI::App* qt_cmd = app.add_subcommand(
        "qtasep-converge", "geometric q-TASEP height functional versus the polymer law");
    add_common(*qt_cmd, qt.c, qt_b);
    qt_b.bind(qt_cmd->add_option("--theta", qt.theta, "gamma scale (q = exp(-theta eps))"),
              "theta", qt.theta);
    qt_b.bind(qt_cmd->add_option("--m1", qt.m1, "jump rate scale (alpha = exp(-m1 eps))"),
              "m1", qt.m1);
    qt_b.bind(qt_cmd->add_option("--t", qt.t, "number of update steps"), "t", qt.t);
    qt_b.bind(qt_cmd->add_option("--n", qt.n, "tagged particle index"), "n", qt.n);
    qt_b.bind(qt_cmd->add_option("--replicas", qt.replicas, "replicas per epsilon"),
              "replicas", qt.replicas);
    qt_b.bind(qt_cmd->add_option("--dump-replicas", qt.dump_replicas,
                                 "trajectories written to CSV"),
              "dump_replicas", qt.dump_replicas);
    qt_b.bind(qt_cmd->add_option("--epsilons", qt.epsilons, "scaling parameters, largest first")
                  ->expected(-1),
              "epsilons", qt.epsilons);

    MomentsArgs mo;
    ConfigBinder mo_b;
    CLI::App* mo_cmd = app.add_subcommand(
        "moments-crosscheck", "joint moments: evolution recursion versus contour integrals");
    add_common(*mo_cmd, mo.c, mo_b);
    mo_b.bind(mo_cmd->add_option("--k", mo.k, "gamma shape"), "k", mo.k);
    mo_b.bind(mo_cmd->add_option("--theta", mo.theta, "gamma scale"), "theta", mo.theta);
    mo_b.bind(mo_cmd->add_option("--t", mo.t, "time"), "t", mo.t);
    mo_b.bind(mo_cmd->add_option("--nvec", mo.nvec,
                                 "weakly decreasing indices; omit to sweep all with length <= 3")
                  ->expected(-1),
              "nvec", mo.nvec);

    FredholmArgs fr;
    ConfigBinder fr_b;
    CLI::App* fr_cmd = app.add_subcommand(
        "fredholm-laplace", "Laplace transform by Fredholm determinant, with MC cross-check");
    add_common(*fr_cmd, fr.c, fr_b);
    fr_b.bind(fr_cmd->add_option("--k", fr.k, "gamma shape"), "k", fr.k);
    fr_b.bind(fr_cmd->add_option("--theta", fr.theta, "gamma scale"), "theta", fr.theta);
    fr_b.bind(fr_cmd->add_option("--t", fr.t, "time"), "t", fr.t);
    fr_b.bind(fr_cmd->add_option("--n", fr.n, "space"), "n", fr.n);
    fr_b.bind(fr_cmd->add_option("--u", fr.u, "Laplace variables")->expected(-1), "u", fr.u);
    fr_b.bind(fr_cmd->add_option("--mc-replicas", fr.mc_replicas,
                                 "Monte Carlo replicas (0 skips the cross-check)"),
              "mc_replicas", fr.mc_replicas);
    fr_b.bind(fr_cmd->add_option("--nodes", fr.nodes, "initial quadrature nodes on the circle"),
              "nodes", fr.nodes);
    fr_b.bind(fr_cmd->add_option("--max-doublings", fr.max_doublings,
                                 "node-doubling passes allowed"),
              "max_doublings", fr.max_doublings);
    fr_b.bind(fr_cmd->add_option("--tw-lo", fr.tw_lo, "GUE table lower end"), "tw_lo", fr.tw_lo);
    fr_b.bind(fr_cmd->add_option("--tw-hi", fr.tw_hi, "GUE table upper end"), "tw_hi", fr.tw_hi);
    fr_b.bind(fr_cmd->add_option("--tw-step", fr.tw_step,
                                 "GUE table step (> 0 writes tw_table.csv)"),
              "tw_step", fr.tw_step);
    fr_b.bind(fr_cmd->add_option("--tw-nodes", fr.tw_nodes, "quadrature nodes for the table"),
              "tw_nodes", fr.tw_nodes);

    CriticalArgs cr;
    ConfigBinder cr_b;
    CLI::App* cr_cmd = app.add_subcommand(
        "critical-point", "free-energy critical point, both solver routes");
    add_common(*cr_cmd, cr.c, cr_b);
    cr_b.bind(cr_cmd->add_option("--k", cr.k, "gamma shape"), "k", cr.k);
    cr_b.bind(cr_cmd->add_option("--theta", cr.theta, "gamma scale"), "theta", cr.theta);
    cr_b.bind(cr_cmd->add_option("--kappa", cr.kappa, "time/space slope"), "kappa", cr.kappa);

    LlnArgs ll;
    ConfigBinder ll_b;
    CLI::App* ll_cmd =
        app.add_subcommand("lln", "law of large numbers: mean log Z(kappa n, n)/n versus f_bar");
    add_common(*ll_cmd, ll.c, ll_b);
    ll_b.bind(ll_cmd->add_option("--k", ll.k, "gamma shape"), "k", ll.k);
    ll_b.bind(ll_cmd->add_option("--theta", ll.theta, "gamma scale"), "theta", ll.theta);
    ll_b.bind(ll_cmd->add_option("--kappa", ll.kappa, "time/space slope"), "kappa", ll.kappa);
    ll_b.bind(ll_cmd->add_option("--n", ll.n, "system sizes")->expected(-1), "n", ll.n);
    ll_b.bind(ll_cmd->add_option("--replicas", ll.replicas, "replicas per size"), "replicas",
              ll.replicas);

    TwArgs tw;
    ConfigBinder tw_b;
    CLI::App* tw_cmd = app.add_subcommand(
        "tw-fluctuations", "rescaled fluctuations against the GUE Tracy-Widom law");
    add_common(*tw_cmd, tw.c, tw_b);
    tw_b.bind(tw_cmd->add_option("--k", tw.k, "gamma shape"), "k", tw.k);
    tw_b.bind(tw_cmd->add_option("--theta", tw.theta, "gamma scale"), "theta", tw.theta);
    tw_b.bind(tw_cmd->add_option("--kappa", tw.kappa, "time/space slope"), "kappa", tw.kappa);
    tw_b.bind(tw_cmd->add_option("--n", tw.n, "system sizes")->expected(-1), "n", tw.n);
    tw_b.bind(tw_cmd->add_option("--replicas", tw.replicas, "replicas per size"), "replicas",
              tw.replicas);
    tw_b.bind(tw_cmd->add_option("--table-lo", tw.table_lo, "GUE table lower end"), "table_lo",
              tw.table_lo);
    tw_b.bind(tw_cmd->add_option("--table-hi", tw.table_hi, "GUE table upper end"), "table_hi",
              tw.table_hi);
    tw_b.bind(tw_cmd->add_option("--table-step", tw.table_step, "GUE table step"), "table_step",
              tw.table_step);
    tw_b.bind(tw_cmd->add_option("--table-nodes", tw.table_nodes,
                                 "quadrature nodes for the table"),
              "table_nodes", tw.table_nodes);

    StationaryArgs st;
    ConfigBinder st_b;
    CLI::App* st_cmd = app.add_subcommand(
        "stationary-tests", "stationary boundary field: shift invariance, decomposition, LLN");
    add_common(*st_cmd, st.c, st_b);
    st_b.bind(st_cmd->add_option("--beta", st.beta, "boundary tilt"), "beta", st.beta);
    st_b.bind(st_cmd->add_option("--k", st.k, "bulk gamma shape"), "k", st.k);
    st_b.bind(st_cmd->add_option("--theta", st.theta, "gamma scale"), "theta", st.theta);
    st_b.bind(st_cmd->add_option("--t0", st.t0, "origin time"), "t0", st.t0);
    st_b.bind(st_cmd->add_option("--n0", st.n0, "origin space"), "n0", st.n0);
    st_b.bind(st_cmd->add_option("--samples", st.samples, "replicas for the KS tests"),
              "samples", st.samples);
    st_b.bind(st_cmd->add_option("--dump-samples", st.dump_samples,
                                 "edge-ratio samples written to CSV"),
              "dump_samples", st.dump_samples);
    st_b.bind(st_cmd->add_option("--lln-n", st.lln_n, "diagonal length for the LLN check"),
              "lln_n", st.lln_n);
    st_b.bind(st_cmd->add_option("--decomp-t", st.decomp_t, "decomposition window, time"),
              "decomp_t", st.decomp_t);
    st_b.bind(st_cmd->add_option("--decomp-n", st.decomp_n, "decomposition window, space"),
              "decomp_n", st.decomp_n);
    st_b.bind(st_cmd->add_option("--shifts", st.shifts, "flattened (dt,dn) pairs")
                  ->expected(-1),
              "shifts", st.shifts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("usage", e.what());
        return 2;
    }

    try {
        if (sp_cmd->parsed()) {
            sp_b.apply(load_config(sp.c.config));
            std::filesystem::create_directories(sp.c.out);
            return run_simulate_polymer(sp);
        }
        if (qt_cmd->parsed()) {
            qt_b.apply(load_config(qt.c.config));
            std::filesystem::create_directories(qt.c.out);
            return run_qtasep(qt);
        }
        if (mo_cmd->parsed()) {
            mo_b.apply(load_config(mo.c.config));
            std::filesystem::create_directories(mo.c.out);
            return run_moments(mo);
        }
        if (fr_cmd->parsed()) {
            fr_b.apply(load_config(fr.c.config));
            std::filesystem::create_directories(fr.c.out);
            return run_fredholm(fr);
        }
        if (cr_cmd->parsed()) {
            cr_b.apply(load_config(cr.c.config));
            std::filesystem::create_directories(cr.c.out);
            return run_critical(cr);
        }
        if (ll_cmd->parsed()) {
            ll_b.apply(load_config(ll.c.config));
            std::filesystem::create_directories(ll.c.out);
            return run_lln(ll);
        }
        if (tw_cmd->parsed()) {
            tw_b.apply(load_config(tw.c.config));
            std::filesystem::create_directories(tw.c.out);
            return run_tw(tw);
        }
        if (st_cmd->parsed()) {
            st_b.apply(load_config(st.c.config));
            std::filesystem::create_directories(st.c.out);
            return run_stationary(st);
        }
        report_error("usage", "no subcommand selected");
        return 2;
    } catch (const nlohmann::json::exception& e) {
        report_error("usage", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        report_error("usage", e.what());
        return 2;
    } catch (const std::exception& e) {
        report_error("numerical", e.what());
        return 3;
    }
}
