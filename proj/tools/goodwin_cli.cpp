// goodwin: analyze / simulate / reproduce / sweep for coupled Goodwin
// oscillator networks. Talks to the shared library exclusively through the
// C API so the binary exercises the same surface other language bindings
// would use.

#include <array>
#include <atomic>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "goodwinnet/goodwinnet.h"

using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
    int exit_code;
    CliError(int code, const std::string& msg) : std::runtime_error(msg), exit_code(code) {}
};

[[noreturn]] void config_error(const std::string& msg) { throw CliError(2, msg); }
[[noreturn]] void numeric_error(const std::string& msg) { throw CliError(3, msg); }

void check(gw_status st, const std::string& what) {
    if (st == GW_OK) return;
    const std::string msg = what + ": " + gw_status_string(st);
    switch (st) {
        case GW_ERR_INVALID_ARGUMENT:
        case GW_ERR_INVALID_TOPOLOGY:
        case GW_ERR_DIMENSION_MISMATCH:
        case GW_ERR_NULL_POINTER:
            config_error(msg);
        default:
            numeric_error(msg);
    }
}

using TopologyPtr = std::unique_ptr<gw_topology, decltype(&gw_topology_free)>;
using TrajectoryPtr = std::unique_ptr<gw_trajectory, decltype(&gw_trajectory_free)>;

TopologyPtr wrap(gw_topology* t) { return TopologyPtr(t, gw_topology_free); }
TrajectoryPtr wrap(gw_trajectory* t) { return TrajectoryPtr(t, gw_trajectory_free); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) config_error("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CliError(3, "cannot write output file: " + path.string());
    out << body;
}

// ---- configuration -------------------------------------------------------

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> t_end;
};

struct RunConfig {
    gw_params params{};
    TopologyPtr topology{nullptr, gw_topology_free};
    double coupling_scale = 1.0;
    gw_sim_config sim{};
    std::string output_dir = ".";
    json raw;
    std::string config_hash;
};

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        config_error("config: missing or non-numeric field \"" + key + "\"");
    return j[key].get<double>();
}

gw_params parse_params(const json& cfg) {
    const bool has_b = cfg.contains("b");
    const bool has_dim = cfg.contains("dimensional");
    if (has_b && has_dim)
        config_error("config: give either \"b\" or \"dimensional\", not both");
    if (!has_b && !has_dim) config_error("config: no parameter block (\"b\" or \"dimensional\")");

    if (has_dim) {
        const json& d = cfg["dimensional"];
        gw_dimensional_params dim{};
        dim.v0 = require_number(d, "v0");
        dim.v1 = require_number(d, "v1");
        dim.v2 = require_number(d, "v2");
        dim.k1 = require_number(d, "k1");
        dim.k2 = require_number(d, "k2");
        dim.k3 = require_number(d, "k3");
        dim.km = require_number(d, "km");
        dim.p = require_number(cfg, "p");
        gw_params g{};
        check(gw_nondimensionalize(&dim, &g), "nondimensionalize");
        return g;
    }

    const json& b = cfg["b"];
    if (!b.is_array() || b.size() != 3)
        config_error("config: \"b\" must be an array [b1, b2, b3]");
    gw_params g{};
    g.b1 = b[0].get<double>();
    g.b2 = b[1].get<double>();
    g.b3 = b[2].get<double>();
    g.p = require_number(cfg, "p");
    g.has_sigma_time = 0;
    return g;
}

TopologyPtr parse_topology(const json& cfg, double* scale_out) {
    json coupling = cfg.value("coupling", json{{"kind", "table1"}});
    const std::string kind = coupling.value("kind", std::string("table1"));
    gw_topology* raw = nullptr;
    gw_status st = GW_OK;
    if (kind == "table1") {
        st = gw_topology_table1(&raw);
    } else if (kind == "single") {
        st = gw_topology_single(&raw);
    } else if (kind == "complete") {
        st = gw_topology_complete(static_cast<int>(require_number(coupling, "n")),
                                  require_number(coupling, "weight"), &raw);
    } else if (kind == "ring") {
        st = gw_topology_ring(static_cast<int>(require_number(coupling, "n")),
                              require_number(coupling, "weight"), &raw);
    } else if (kind == "matrix") {
        if (!coupling.contains("weights") || !coupling["weights"].is_array())
            config_error("config: coupling kind \"matrix\" needs a \"weights\" array");
        const json& rows = coupling["weights"];
        const int n = static_cast<int>(rows.size());
        std::vector<double> w;
        w.reserve(static_cast<size_t>(n) * n);
        for (const json& row : rows) {
            if (!row.is_array() || static_cast<int>(row.size()) != n)
                config_error("config: coupling weights must be a square matrix");
            for (const json& v : row) w.push_back(v.get<double>());
        }
        st = gw_topology_from_weights(n, w.data(), &raw);
    } else {
        config_error("config: unknown coupling kind \"" + kind + "\"");
    }
    check(st, "coupling topology");
    TopologyPtr topo = wrap(raw);

    double scale = coupling.value("scale", 1.0);
    if (scale != 1.0) {
        gw_topology* scaled = nullptr;
        check(gw_topology_scaled(topo.get(), scale, &scaled), "coupling scale");
        topo = wrap(scaled);
    }
    if (scale_out) *scale_out = scale;
    return topo;
}

gw_sim_config parse_sim(const json& cfg, const Overrides& ov) {
    gw_sim_config sim{};
    gw_sim_config_default(&sim);
    if (cfg.contains("sim")) {
        const json& s = cfg["sim"];
        sim.dt = s.value("dt", sim.dt);
        sim.t_end = s.value("t_end", sim.t_end);
        sim.transient_fraction = s.value("transient_fraction", sim.transient_fraction);
        sim.seed = s.value("seed", sim.seed);
        sim.perturbation = s.value("perturbation", sim.perturbation);
    }
    if (ov.seed) sim.seed = *ov.seed;
    if (ov.dt) sim.dt = *ov.dt;
    if (ov.t_end) sim.t_end = *ov.t_end;
    if (!(sim.dt > 0.0)) config_error("config: sim.dt must be > 0");
    if (!(sim.t_end > 10.0 * sim.dt)) config_error("config: sim.t_end must exceed 10*dt");
    if (!(sim.transient_fraction >= 0.0 && sim.transient_fraction < 1.0))
        config_error("config: sim.transient_fraction must be in [0, 1)");
    if (!(sim.perturbation >= 0.0)) config_error("config: sim.perturbation must be >= 0");
    return sim;
}

RunConfig load_config(const std::string& path, const Overrides& ov,
                      const std::string& out_flag) {
    const std::string bytes = read_file(path);
    json cfg;
    try {
        cfg = json::parse(bytes);
    } catch (const json::parse_error& e) {
        config_error(std::string("config: invalid JSON: ") + e.what());
    }

    RunConfig rc;
    rc.raw = cfg;
    rc.params = parse_params(cfg);
    rc.topology = parse_topology(cfg, &rc.coupling_scale);
    rc.sim = parse_sim(cfg, ov);
    rc.output_dir = !out_flag.empty() ? out_flag : cfg.value("output", std::string("."));

    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016" PRIx64, fnv1a(bytes));
    rc.config_hash = hash;
    return rc;
}

std::filesystem::path ensure_out_dir(const std::string& dir) {
    std::filesystem::path p(dir);
    std::error_code ec;
    std::filesystem::create_directories(p, ec);
    if (ec) throw CliError(3, "cannot create output directory: " + dir);
    return p;
}

json provenance(const RunConfig& rc) {
    return json{{"config_hash", rc.config_hash},
                {"tool_version", gw_version()},
                {"seed", rc.sim.seed}};
}

// ---- shared result plumbing ----------------------------------------------

struct SimOutcome {
    TrajectoryPtr traj{nullptr, gw_trajectory_free};
    bool diverged = false;
    double diverged_at = 0.0;
    std::optional<gw_period_estimate> period;
    std::optional<gw_sync_metric> sync;
    std::optional<bool> oscillatory;
};

SimOutcome run_simulation(const gw_params& g, const gw_topology* topo,
                          const gw_sim_config& sim) {
    SimOutcome out;
    gw_trajectory* raw = nullptr;
    const gw_status st = gw_simulate(&g, topo, &sim, &raw);
    out.traj = wrap(raw);
    if (st == GW_ERR_DIVERGED) {
        out.diverged = true;
        gw_trajectory_diverged(raw, &out.diverged_at);
        return out;
    }
    check(st, "simulate");

    gw_period_estimate pe{};
    if (gw_estimate_period(raw, &sim, &pe) == GW_OK) out.period = pe;

    gw_sync_metric sm{};
    if (gw_measure_sync(raw, &sim, &sm) == GW_OK) out.sync = sm;

    int osc = 0;
    if (gw_classify_oscillation(raw, &sim, &g, &osc) == GW_OK) out.oscillatory = (osc != 0);
    return out;
}

std::string trajectory_csv(const gw_trajectory* traj) {
    const int n = gw_trajectory_size(traj);
    const size_t samples = gw_trajectory_samples(traj);
    std::vector<double> times(samples);
    std::vector<double> states(samples * 3 * n);
    check(gw_trajectory_copy_times(traj, times.data()), "trajectory times");
    check(gw_trajectory_copy_states(traj, states.data()), "trajectory states");

    std::string csv = "t";
    for (const char* comp : {"x1", "x2", "x3"})
        for (int i = 1; i <= n; ++i) csv += "," + std::string(comp) + "_" + std::to_string(i);
    csv += "\n";
    for (size_t k = 0; k < samples; ++k) {
        csv += fmt(times[k]);
        const double* row = states.data() + k * 3 * n;
        for (int j = 0; j < 3 * n; ++j) {
            csv += ',';
            csv += fmt(row[j]);
        }
        csv += '\n';
    }
    return csv;
}

json report_json(const gw_analysis_report& r) {
    json j{{"x0", r.x0},
           {"x1_star", r.x1_star},
           {"x2_star", r.x2_star},
           {"equilibrium_residual", r.equilibrium_residual},
           {"sigma", r.sigma},
           {"r", r.r},
           {"r_published", r.r_published},
           {"gamma", r.gamma},
           {"rho", r.rho},
           {"sync_threshold", r.sync_threshold},
           {"oscillation_predicted", r.oscillation_predicted != 0},
           {"sync_condition_met", r.sync_condition_met != 0},
           {"sync_applicable", r.sync_applicable != 0},
           {"w", r.w},
           {"t_collective", r.t_collective},
           {"xi_star", r.xi_star},
           {"eta_star", r.eta_star}};
    j["t_dimensional"] = r.has_t_dimensional ? json(r.t_dimensional) : json(nullptr);
    if (r.marginal_stability < 0)
        j["marginal_stability"] = nullptr;
    else
        j["marginal_stability"] = (r.marginal_stability != 0);
    return j;
}

// ---- commands -------------------------------------------------------------

int cmd_analyze(const RunConfig& rc, const std::string& format) {
    gw_analysis_report rep{};
    check(gw_analyze(&rc.params, rc.topology.get(), &rep), "analyze");

    std::printf("equilibrium x0      = %s\n", fmt(rep.x0).c_str());
    std::printf("sigma               = %s\n", fmt(rep.sigma).c_str());
    std::printf("oscillation index R = %s  (%s)\n", fmt(rep.r).c_str(),
                rep.oscillation_predicted ? "oscillatory" : "quiescent");
    std::printf("gamma               = %s\n", fmt(rep.gamma).c_str());
    if (rep.sync_applicable) {
        std::printf("rho                 = %s\n", fmt(rep.rho).c_str());
        std::printf("sync threshold      = %s  (condition %s)\n",
                    fmt(rep.sync_threshold).c_str(),
                    rep.sync_condition_met ? "met" : "not met");
    } else {
        std::printf("sync condition      = not applicable (disconnected topology)\n");
    }
    std::printf("w                   = %s\n", fmt(rep.w).c_str());
    std::printf("T_collective        = %s\n", fmt(rep.t_collective).c_str());
    if (rep.has_t_dimensional)
        std::printf("T_dimensional       = %s\n", fmt(rep.t_dimensional).c_str());

    const std::filesystem::path out = ensure_out_dir(rc.output_dir);
    if (format != "csv") {
        json doc{{"schema", 1}, {"provenance", provenance(rc)}, {"analysis", report_json(rep)}};
        write_file(out / "analysis.json", doc.dump(2) + "\n");
    }
    if (format != "json") {
        std::string csv =
            "b1,b2,b3,p,x0,sigma,r,r_published,gamma,rho,sync_threshold,"
            "oscillation_predicted,sync_condition_met,sync_applicable,w,t_collective\n";
        csv += fmt(rc.params.b1) + "," + fmt(rc.params.b2) + "," + fmt(rc.params.b3) + "," +
               fmt(rc.params.p) + "," + fmt(rep.x0) + "," + fmt(rep.sigma) + "," + fmt(rep.r) +
               "," + fmt(rep.r_published) + "," + fmt(rep.gamma) + "," + fmt(rep.rho) + "," +
               fmt(rep.sync_threshold) + "," + std::to_string(rep.oscillation_predicted) + "," +
               std::to_string(rep.sync_condition_met) + "," +
               std::to_string(rep.sync_applicable) + "," + fmt(rep.w) + "," +
               fmt(rep.t_collective) + "\n";
        write_file(out / "analysis.csv", csv);
    }
    return 0;
}

int cmd_simulate(const RunConfig& rc, const std::string& format) {
    gw_analysis_report rep{};
    check(gw_analyze(&rc.params, rc.topology.get(), &rep), "analyze");

    const SimOutcome res = run_simulation(rc.params, rc.topology.get(), rc.sim);
    const std::filesystem::path out = ensure_out_dir(rc.output_dir);

    if (format != "json") write_file(out / "trajectory.csv", trajectory_csv(res.traj.get()));

    json bundle{{"schema", 1}, {"provenance", provenance(rc)}, {"analysis", report_json(rep)}};
    json sim_json{{"dt", rc.sim.dt},
                  {"t_end", rc.sim.t_end},
                  {"transient_fraction", rc.sim.transient_fraction},
                  {"seed", rc.sim.seed},
                  {"perturbation", rc.sim.perturbation},
                  {"samples", gw_trajectory_samples(res.traj.get())},
                  {"oscillators", gw_trajectory_size(res.traj.get())}};
    bundle["simulation"] = sim_json;
    bundle["diverged_at"] = res.diverged ? json(res.diverged_at) : json(nullptr);
    bundle["period"] =
        res.period ? json{{"mean", res.period->period_mean},
                          {"std", res.period->period_std},
                          {"cycles", res.period->n_cycles}}
                   : json(nullptr);
    bundle["sync"] = res.sync ? json{{"error", res.sync->sync_error},
                                     {"amplitude", res.sync->amplitude},
                                     {"synchronized", res.sync->is_synchronized != 0}}
                              : json(nullptr);
    bundle["oscillatory"] = res.oscillatory ? json(*res.oscillatory) : json(nullptr);
    if (format != "csv") write_file(out / "report.json", bundle.dump(2) + "\n");

    if (res.diverged) {
        std::fprintf(stderr, "integration diverged at t = %s; partial trajectory written\n",
                     fmt(res.diverged_at).c_str());
        return 3;
    }

    std::printf("samples             = %zu\n", gw_trajectory_samples(res.traj.get()));
    if (res.period)
        std::printf("measured period     = %s (std %s, %d cycles)\n",
                    fmt(res.period->period_mean).c_str(), fmt(res.period->period_std).c_str(),
                    res.period->n_cycles);
    else
        std::printf("measured period     = n/a (not oscillatory)\n");
    if (res.sync)
        std::printf("sync error          = %s (%ssynchronized)\n",
                    fmt(res.sync->sync_error).c_str(),
                    res.sync->is_synchronized ? "" : "not ");
    if (res.oscillatory)
        std::printf("verdict             = %s\n", *res.oscillatory ? "oscillatory" : "quiescent");
    return 0;
}

int cmd_reproduce_table2(const std::filesystem::path& out, const gw_sim_config& sim) {
    struct Row {
        double p, b1, b2, b3, r_ref;
        bool ref_oscillates;
    };
    // reference column of the oscillation/synchronization benchmark table
    static const Row rows[] = {
        {17, 0.4, 0.4, 0.4, 1.7102, true},  {17, 0.5, 0.5, 0.5, 1.6541, true},
        {17, 0.6, 0.6, 0.6, 1.5286, true},  {17, 0.7, 0.7, 0.7, 1.3266, true},
        {17, 0.8, 0.8, 0.8, 1.0421, true},  {17, 0.85, 0.85, 0.85, 0.8686, false},
        {17, 0.9, 0.9, 0.9, 0.676, false},  {17, 1.0, 1.0, 1.0, 0.2620, false},
        {17, 0.7, 0.8, 0.9, 1.0433, true},  {17, 0.9, 0.8, 0.8, 0.9300, false},
    };

    gw_topology* raw = nullptr;
    check(gw_topology_table1(&raw), "table1 topology");
    TopologyPtr topo = wrap(raw);

    std::string csv =
        "p,b1,b2,b3,r_formula,r_published,r_reference,reference_verdict,"
        "predicted_verdict,simulated_oscillation,simulated_sync\n";
    std::printf("%4s %4s %4s %4s  %9s %11s %11s  %-12s %-12s %-12s\n", "p", "b1", "b2", "b3",
                "R_formula", "R_published", "R_reference", "reference", "simulated", "sync");

    for (const Row& row : rows) {
        gw_params g{row.b1, row.b2, row.b3, row.p, 0.0, 0};
        double r_formula = 0.0, r_published = 0.0;
        check(gw_oscillation_index(&g, &r_formula), "oscillation index");
        check(gw_published_oscillation_index(&g, &r_published), "published index");

        const SimOutcome res = run_simulation(g, topo.get(), sim);
        if (res.diverged) numeric_error("table2: simulation diverged");
        const bool oscillates = res.oscillatory.value_or(false);
        const bool synced = oscillates && res.sync && res.sync->is_synchronized;

        csv += fmt(row.p) + "," + fmt(row.b1) + "," + fmt(row.b2) + "," + fmt(row.b3) + "," +
               fmt(r_formula) + "," + fmt(r_published) + "," + fmt4(row.r_ref) + "," +
               (row.ref_oscillates ? "oscillation" : "quiescent") + "," +
               (r_formula > 1.0 ? "oscillation" : "quiescent") + "," +
               (oscillates ? "oscillation" : "quiescent") + "," +
               (synced ? "synchronized" : "not_synchronized") + "\n";
        std::printf("%4g %4g %4g %4g  %9.4f %11.4f %11.4f  %-12s %-12s %-12s\n", row.p, row.b1,
                    row.b2, row.b3, r_formula, r_published, row.r_ref,
                    row.ref_oscillates ? "oscillation" : "quiescent",
                    oscillates ? "oscillation" : "quiescent", synced ? "yes" : "no");
    }
    write_file(out / "table2.csv", csv);
    return 0;
}

int cmd_reproduce_table3(const std::filesystem::path& out, const gw_sim_config& sim) {
    static const double b_values[] = {0.4, 0.5, 0.6, 0.7, 0.8};
    static const double ref_actual[] = {10.68, 8.00, 6.31, 5.23, 4.53};
    static const double ref_estimated[] = {11.35, 7.26, 6.05, 5.19, 4.54};

    gw_topology* raw = nullptr;
    check(gw_topology_table1(&raw), "table1 topology");
    TopologyPtr topo = wrap(raw);

    std::string csv =
        "b,t_measured,t_formula,reference_actual,reference_estimated,"
        "pct_error_vs_actual,footnote\n";
    std::printf("%4s  %10s %10s %10s %10s %8s\n", "b", "measured", "formula", "ref_act",
                "ref_est", "err%");

    for (int k = 0; k < 5; ++k) {
        const double b = b_values[k];
        gw_params g{b, b, b, 17.0, 0.0, 0};
        double w = 0.0, t_formula = 0.0;
        check(gw_predict_period(&g, &w, &t_formula), "predict period");

        const SimOutcome res = run_simulation(g, topo.get(), sim);
        if (res.diverged || !res.period) numeric_error("table3: period measurement failed");
        const double measured = res.period->period_mean;
        const double pct = 100.0 * (measured - ref_actual[k]) / ref_actual[k];

        // the b=0.4 reference estimate does not follow from the stated
        // frequency formula; flag it rather than match it
        const std::string note =
            (k == 0) ? "reference estimate 11.35 is inconsistent with the frequency formula "
                       "(which gives " + fmt4(t_formula) + ")"
                     : "";
        csv += fmt(b) + "," + fmt(measured) + "," + fmt(t_formula) + "," + fmt(ref_actual[k]) +
               "," + fmt(ref_estimated[k]) + "," + fmt(pct) + "," + note + "\n";
        std::printf("%4g  %10.4f %10.4f %10.2f %10.2f %7.2f%%%s\n", b, measured, t_formula,
                    ref_actual[k], ref_estimated[k], pct, k == 0 ? "  (*)" : "");
    }
    std::printf("(*) reference estimate inconsistent with the stated frequency formula\n");
    write_file(out / "table3.csv", csv);
    return 0;
}

int cmd_sweep(const RunConfig& rc) {
    if (!rc.raw.contains("sweep")) config_error("config: sweep command needs a \"sweep\" block");
    const json& sw = rc.raw["sweep"];

    std::vector<std::array<double, 3>> b_grid;
    if (sw.contains("b_values")) {
        for (const json& v : sw["b_values"]) {
            if (v.is_number()) {
                const double b = v.get<double>();
                b_grid.push_back({b, b, b});
            } else if (v.is_array() && v.size() == 3) {
                b_grid.push_back({v[0].get<double>(), v[1].get<double>(), v[2].get<double>()});
            } else {
                config_error("config: sweep.b_values entries must be numbers or [b1,b2,b3]");
            }
        }
    } else {
        b_grid.push_back({rc.params.b1, rc.params.b2, rc.params.b3});
    }

    std::vector<double> p_grid;
    if (sw.contains("p_values"))
        for (const json& v : sw["p_values"]) p_grid.push_back(v.get<double>());
    else
        p_grid.push_back(rc.params.p);

    std::vector<double> scale_grid;
    if (sw.contains("coupling_scales"))
        for (const json& v : sw["coupling_scales"]) scale_grid.push_back(v.get<double>());
    else
        scale_grid.push_back(1.0);

    const size_t total = b_grid.size() * p_grid.size() * scale_grid.size();
    if (total > 10000) config_error("config: sweep grid exceeds 10000 points");

    struct Point {
        std::array<double, 3> b;
        double p;
        double scale;
    };
    std::vector<Point> grid;
    grid.reserve(total);
    for (const auto& b : b_grid)
        for (double p : p_grid)
            for (double scale : scale_grid) grid.push_back({b, p, scale});

    std::vector<std::string> rows(total);
    std::atomic<size_t> next{0};

    auto worker = [&]() {
        for (size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
            const Point& pt = grid[i];
            std::string& row = rows[i];
            row = std::to_string(i) + "," + fmt(pt.b[0]) + "," + fmt(pt.b[1]) + "," +
                  fmt(pt.b[2]) + "," + fmt(pt.p) + "," + fmt(pt.scale) + ",";
            try {
                gw_params g{pt.b[0], pt.b[1], pt.b[2], pt.p, 0.0, 0};
                gw_topology* scaled = nullptr;
                check(gw_topology_scaled(rc.topology.get(), pt.scale, &scaled),
                      "coupling scale");
                TopologyPtr topo = wrap(scaled);

                double r = 0.0, w = 0.0, t_formula = 0.0;
                check(gw_oscillation_index(&g, &r), "oscillation index");
                check(gw_predict_period(&g, &w, &t_formula), "predict period");

                const SimOutcome res = run_simulation(g, topo.get(), rc.sim);
                row += fmt(r) + "," + (r > 1.0 ? "1" : "0") + "," + fmt(t_formula) + ",";
                if (res.diverged) {
                    row += ",,,,diverged";
                } else {
                    row += res.period ? fmt(res.period->period_mean) : std::string();
                    row += ",";
                    row += res.period ? fmt(res.period->period_std) : std::string();
                    row += ",";
                    row += res.sync ? fmt(res.sync->sync_error) : std::string();
                    row += ",";
                    row += (res.oscillatory && *res.oscillatory) ? "1" : "0";
                    row += ",";
                    row += res.period ? "ok" : "not_oscillatory";
                }
            } catch (const CliError& e) {
                std::string msg = e.what();
                for (char& c : msg)
                    if (c == ',' || c == '\n') c = ';';
                row += ",,,,,,,error: " + msg;
            }
            row += "\n";
        }
    };

    size_t n_threads = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("GOODWIN_NET_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n_threads = static_cast<size_t>(v);
    }
    n_threads = std::max<size_t>(1, std::min(n_threads, total == 0 ? 1 : total));

    std::vector<std::thread> pool;
    for (size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::string csv =
        "index,b1,b2,b3,p,coupling_scale,r,oscillation_predicted,t_formula,"
        "t_measured,period_std,sync_error,oscillatory,status\n";
    for (const std::string& row : rows) csv += row;

    const std::filesystem::path out = ensure_out_dir(rc.output_dir);
    write_file(out / "sweep.csv", csv);
    std::printf("sweep: %zu points -> %s\n", total, (out / "sweep.csv").string().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled Goodwin oscillator network analysis and simulation"};
    app.require_subcommand(1);

    std::string config_path, out_dir, format = "both", which;
    Overrides ov;
    std::uint64_t seed_flag = 0;
    double dt_flag = 0.0, t_end_flag = 0.0;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* c = sub->add_option("--config", config_path, "run configuration file (JSON)");
        if (config_required) c->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed_flag, "override the simulation seed");
        sub->add_option("--dt", dt_flag, "override the integration step");
        sub->add_option("--t-end", t_end_flag, "override the integration horizon");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "both"}));
    };

    CLI::App* analyze = app.add_subcommand("analyze", "closed-form analysis of one config");
    add_common(analyze, true);
    CLI::App* simulate = app.add_subcommand("simulate", "integrate and measure one config");
    add_common(simulate, true);
    CLI::App* reproduce = app.add_subcommand("reproduce", "reproduce a benchmark table");
    reproduce->add_option("which", which, "table2 or table3")
        ->required()
        ->check(CLI::IsMember({"table2", "table3"}));
    add_common(reproduce, false);
    CLI::App* sweep = app.add_subcommand("sweep", "run a parameter grid to CSV");
    add_common(sweep, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        auto overrides_from_flags = [&](CLI::App* sub) {
            if (sub->count("--seed")) ov.seed = seed_flag;
            if (sub->count("--dt")) ov.dt = dt_flag;
            if (sub->count("--t-end")) ov.t_end = t_end_flag;
        };

        if (analyze->parsed()) {
            overrides_from_flags(analyze);
            RunConfig rc = load_config(config_path, ov, out_dir);
            return cmd_analyze(rc, format);
        }
        if (simulate->parsed()) {
            overrides_from_flags(simulate);
            RunConfig rc = load_config(config_path, ov, out_dir);
            return cmd_simulate(rc, format);
        }
        if (sweep->parsed()) {
            overrides_from_flags(sweep);
            RunConfig rc = load_config(config_path, ov, out_dir);
            return cmd_sweep(rc);
        }
        if (reproduce->parsed()) {
            overrides_from_flags(reproduce);
            gw_sim_config sim{};
            gw_sim_config_default(&sim);
            if (!config_path.empty()) {
                RunConfig rc = load_config(config_path, ov, out_dir);
                sim = rc.sim;
            } else {
                if (ov.seed) sim.seed = *ov.seed;
                if (ov.dt) sim.dt = *ov.dt;
                if (ov.t_end) sim.t_end = *ov.t_end;
            }
            const std::filesystem::path out = ensure_out_dir(out_dir.empty() ? "." : out_dir);
            return which == "table2" ? cmd_reproduce_table2(out, sim)
                                     : cmd_reproduce_table3(out, sim);
        }
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
