#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "riotwave/equilibria.hpp"
#include "riotwave/kpp.hpp"
#include "riotwave/pde.hpp"
#include "riotwave/reduced.hpp"
#include "riotwave/spectra.hpp"

using nlohmann::ordered_json;
using namespace riotwave;

namespace {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* approach_name(Approach a) {
    return a == Approach::Oscillatory ? "Oscillatory" : "Monotone";
}

ordered_json complex_pair(const std::complex<double>& z) {
    return ordered_json::array({z.real(), z.imag()});
}

void echo_model(ordered_json& out, const ModelParams& mp) {
    out["gamma"] = mp.gamma;
    out["beta"] = mp.beta;
    out["p"] = mp.p;
    out["omega"] = mp.omega;
    out["alpha"] = mp.alpha;
    out["c"] = mp.c;
    out["d1"] = mp.d1;
    out["d2"] = mp.d2;
}

void add_model_flags(CLI::App* sub, ModelParams& mp) {
    sub->add_option("--gamma", mp.gamma, "cohesion ratio")->capture_default_str();
    sub->add_option("--beta", mp.beta, "gate steepness")->capture_default_str();
    sub->add_option("--p", mp.p, "tension decay exponent")->capture_default_str();
    sub->add_option("--omega", mp.omega, "unrest/tension rate ratio")
        ->capture_default_str();
    sub->add_option("--alpha", mp.alpha, "gate threshold")->capture_default_str();
    sub->add_option("--c", mp.c, "frame speed")->capture_default_str();
    sub->add_option("--d1", mp.d1, "unrest diffusivity")->capture_default_str();
    sub->add_option("--d2", mp.d2, "tension diffusivity")->capture_default_str();
}

// Flat config file: known keys seed the defaults, explicit flags override,
// anything else (e.g. a previous run's outputs) is ignored.
void cfg_num(const ordered_json& c, const char* k, double& v) {
    if (c.contains(k) && c.at(k).is_number()) v = c.at(k).get<double>();
}
void cfg_int(const ordered_json& c, const char* k, int& v) {
    if (c.contains(k) && c.at(k).is_number()) v = c.at(k).get<int>();
}
void cfg_str(const ordered_json& c, const char* k, std::string& v) {
    if (c.contains(k) && c.at(k).is_string()) v = c.at(k).get<std::string>();
}

void apply_model_config(const ordered_json& c, ModelParams& mp) {
    cfg_num(c, "gamma", mp.gamma);
    cfg_num(c, "beta", mp.beta);
    cfg_num(c, "p", mp.p);
    cfg_num(c, "omega", mp.omega);
    cfg_num(c, "alpha", mp.alpha);
    cfg_num(c, "c", mp.c);
    cfg_num(c, "d1", mp.d1);
    cfg_num(c, "d2", mp.d2);
}

void print_json(const ordered_json& out) { std::cout << out.dump(2) << "\n"; }

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ModelError("cannot create output directory " + dir);
}

void write_orbit_csv(const std::string& path, const Trajectory<2>& orbit) {
    std::ofstream f(path);
    if (!f) throw ModelError("cannot write " + path);
    f << "xi,u,v\n";
    for (std::size_t i = 0; i < orbit.xi.size(); ++i)
        f << fmt17(orbit.xi[i]) << ',' << fmt17(orbit.states[i][0]) << ','
          << fmt17(orbit.states[i][1]) << '\n';
}

void write_snapshot_csv(const std::string& dir, std::size_t idx,
                        const FieldState& s, const std::vector<double>& x) {
    char name[40];
    std::snprintf(name, sizeof name, "snapshot_%06zu.csv", idx);
    std::string path = dir + "/" + name;
    std::ofstream f(path);
    if (!f) throw ModelError("cannot write " + path);
    f << "# tau=" << fmt17(s.tau) << "\n";
    bool has_v = !s.v.empty();
    f << (has_v ? "x,u,v\n" : "x,u\n");
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        f << fmt17(x[i]) << ',' << fmt17(s.u[i]);
        if (has_v) f << ',' << fmt17(s.v[i]);
        f << '\n';
    }
}

int cmd_equilibria(const ModelParams& mp) {
    Equilibrium B = equilibrium_B(mp);
    ordered_json out;
    out["u_bar"] = B.u_star;
    out["v_bar"] = B.v_star;
    out["residual"] = B.residual;
    out["gamma"] = mp.gamma;
    out["beta"] = mp.beta;
    out["p"] = mp.p;
    out["alpha"] = mp.alpha;
    print_json(out);
    return 0;
}

int cmd_spectrum(const ModelParams& mp, const std::string& at) {
    Spectrum s = at == "A" ? eigen_A(mp) : eigen_B(mp);
    ordered_json out;
    out["at"] = at;
    out["lambda1"] = complex_pair(s.lambda1);
    out["lambda2"] = complex_pair(s.lambda2);
    out["class"] = classification_name(s.classification);
    out["omega1"] = nullptr;
    out["omega2"] = nullptr;
    if (at == "B") {
        try {
            OmegaThresholds th = omega_thresholds(mp);
            out["omega1"] = th.omega1;
            out["omega2"] = th.omega2;
        } catch (const ModelError&) {
            // thresholds undefined for this parameter set; eigenvalues stand
        }
    }
    echo_model(out, mp);
    print_json(out);
    return 0;
}

int cmd_shoot(const ModelParams& mp, double delta_seed, double capture_radius,
              const std::string& out_dir) {
    HeteroclinicResult res = shoot_heteroclinic(mp, delta_seed, capture_radius);
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        write_orbit_csv(out_dir + "/orbit.csv", res.orbit);
    }
    ordered_json out;
    out["connected"] = res.connected;
    out["approach"] = approach_name(res.approach);
    out["distance_to_B"] = res.distance_to_B;
    echo_model(out, mp);
    out["delta_seed"] = delta_seed;
    out["capture_radius"] = capture_radius;
    print_json(out);
    return 0;
}

int cmd_kpp_check(const ModelParams& mp, int samples) {
    KppVerdict v = kpp_verdict(mp, samples);
    ordered_json out;
    out["p_threshold"] = v.p_threshold;
    out["guaranteed"] = v.guaranteed_by_region;
    out["numeric_concave"] = v.numeric_concave;
    out["max_f2"] = v.max_f2;
    out["min_speed"] = v.min_speed;
    echo_model(out, mp);
    out["samples"] = samples;
    print_json(out);
    return 0;
}

int cmd_simulate(ModelParams mp, const GridConfig& grid, double A_opt,
                 bool A_set, double k, double B, int snapshot_every,
                 const std::string& frame, const std::string& mode,
                 double level_opt, bool level_set, double t_from,
                 const std::string& out_dir) {
    if (frame == "lab") mp.c = 0.0;
    double ub = -1.0;
    auto ubar_lazy = [&]() {
        if (ub < 0.0) ub = solve_ubar(mp);
        return ub;
    };
    InitialData init{A_set ? A_opt : ubar_lazy(), k, B};
    double level = level_set ? level_opt : 0.5 * ubar_lazy();

    SimulationResult res = mode == "scalar"
                               ? simulate_scalar(mp, grid, init, snapshot_every)
                               : simulate(mp, grid, init, snapshot_every);

    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        std::vector<double> x = grid_x(grid);
        for (std::size_t i = 0; i < res.snapshots.size(); ++i)
            write_snapshot_csv(out_dir, i, res.snapshots[i], x);
    }

    ordered_json out;
    out["front_speed"] = nullptr;
    out["fit_residual"] = nullptr;
    try {
        FrontSpeed fs = measure_front_speed(res.snapshots, grid, level, t_from);
        out["front_speed"] = fs.speed;
        out["fit_residual"] = fs.fit_residual;
    } catch (const ModelError&) {
        // no front to track; summary still reports the run
    }
    ordered_json series = ordered_json::array();
    for (std::size_t i = 1; i < res.snapshots.size(); ++i)
        series.push_back(
            stationarity_residual(res.snapshots[i - 1], res.snapshots[i]));
    out["stationarity_residual_series"] = series;
    out["min_u"] = res.min_u;
    out["min_v"] = res.min_v;
    echo_model(out, mp);
    out["L"] = grid.L;
    out["nx"] = grid.nx;
    out["dtau"] = grid.dtau;
    out["t_end"] = grid.t_end;
    out["A"] = init.A;
    out["k"] = init.k;
    out["B"] = init.B;
    out["snapshot_every"] = snapshot_every;
    out["frame"] = frame;
    out["mode"] = mode;
    out["level"] = level;
    out["t_from"] = t_from;
    print_json(out);
    return 0;
}

int cmd_front_speed(const std::string& dir, double level, double t_from) {
    std::vector<std::string> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        std::string name = e.path().filename().string();
        if (name.rfind("snapshot_", 0) == 0 && name.size() > 4 &&
            name.substr(name.size() - 4) == ".csv")
            files.push_back(e.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ModelError("no snapshot_*.csv files in " + dir);

    std::vector<FieldState> snapshots;
    std::vector<double> x;
    for (const std::string& path : files) {
        std::ifstream f(path);
        if (!f) throw ModelError("cannot read " + path);
        std::string line;
        if (!std::getline(f, line) || line.find("tau=") == std::string::npos)
            throw ModelError(path + ": missing '# tau=' header");
        FieldState s;
        s.tau = std::stod(line.substr(line.find("tau=") + 4));
        std::getline(f, line);  // column header
        bool first_file = x.empty();
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            std::istringstream row(line);
            std::string cell;
            std::getline(row, cell, ',');
            if (first_file) x.push_back(std::stod(cell));
            std::getline(row, cell, ',');
            s.u.push_back(std::stod(cell));
        }
        snapshots.push_back(std::move(s));
    }
    if (x.size() < 2) throw ModelError("snapshots too short");

    GridConfig grid;
    grid.L = x.back() - x.front();
    grid.nx = static_cast<int>(x.size());
    grid.dtau = 1.0;
    grid.t_end = 1.0;
    FrontSpeed fs = measure_front_speed(snapshots, grid, level, t_from);

    ordered_json out;
    out["speed"] = fs.speed;
    out["fit_residual"] = fs.fit_residual;
    out["n_points"] = fs.n_points;
    out["dir"] = dir;
    out["level"] = level;
    out["t_from"] = t_from;
    print_json(out);
    return 0;
}

struct SweepRow {
    double omega;
    bool connected;
    Approach approach;
    bool crossed;
    double cu;
    double cv;
};

SweepRow sweep_point(ModelParams mp, double delta_seed, double capture_radius) {
    SweepRow row{};
    row.omega = mp.omega;
    HeteroclinicResult res = shoot_heteroclinic(mp, delta_seed, capture_radius);
    row.connected = res.connected;
    row.approach = res.approach;
    row.crossed = false;
    const auto& st = res.orbit.states;
    double gprev = st[0][0] - nullcline_u_of_v(st[0][1], mp);
    for (std::size_t i = 1; i < st.size(); ++i) {
        double g = st[i][0] - nullcline_u_of_v(st[i][1], mp);
        if (gprev == 0.0) {
            row.crossed = true;
            row.cu = st[i - 1][0];
            row.cv = st[i - 1][1];
            break;
        }
        if (gprev * g < 0.0) {
            double t = gprev / (gprev - g);
            row.crossed = true;
            row.cu = st[i - 1][0] + t * (st[i][0] - st[i - 1][0]);
            row.cv = st[i - 1][1] + t * (st[i][1] - st[i - 1][1]);
            break;
        }
        gprev = g;
    }
    return row;
}

int cmd_sweep(const ModelParams& base, double start, double stop, int count,
              const std::string& scale, double delta_seed, double capture_radius,
              const std::string& out_dir) {
    std::vector<double> omegas(count);
    for (int i = 0; i < count; ++i) {
        double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        omegas[i] = scale == "log"
                        ? std::exp(std::log(start) + t * (std::log(stop) - std::log(start)))
                        : start + t * (stop - start);
    }
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(count);
    for (double w : omegas) {
        ModelParams mp = base;
        mp.omega = w;
        jobs.push_back(std::async(std::launch::async, sweep_point, mp, delta_seed,
                                  capture_radius));
    }
    std::ostringstream csv;
    csv << "omega,connected,approach,crossing_u,crossing_v\n";
    for (auto& j : jobs) {
        SweepRow r = j.get();
        csv << fmt17(r.omega) << ',' << (r.connected ? "true" : "false") << ','
            << approach_name(r.approach) << ','
            << (r.crossed ? fmt17(r.cu) : "nan") << ','
            << (r.crossed ? fmt17(r.cv) : "nan") << '\n';
    }
    std::cout << csv.str();
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        std::ofstream f(out_dir + "/sweep.csv");
        if (!f) throw ModelError("cannot write " + out_dir + "/sweep.csv");
        f << csv.str();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    // the config file seeds defaults before parsing, so flags always win
    ordered_json cfg = ordered_json::object();
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        std::string path;
        if (a == "--config" && i + 1 < argc)
            path = argv[i + 1];
        else if (a.rfind("--config=", 0) == 0)
            path = a.substr(9);
        if (path.empty()) continue;
        std::ifstream f(path);
        if (!f) {
            std::cerr << "error: cannot open config file " << path << "\n";
            return 2;
        }
        ordered_json parsed = ordered_json::parse(f, nullptr, false);
        if (parsed.is_discarded() || !parsed.is_object()) {
            std::cerr << "error: config file " << path
                      << " is not a JSON object\n";
            return 2;
        }
        cfg = std::move(parsed);
    }

    CLI::App app{"riotwave: traveling fronts of the unrest/tension system"};
    app.require_subcommand(1);

    std::string config_path;
    long seed = 0;

    ModelParams mp;
    apply_model_config(cfg, mp);

    // equilibria
    CLI::App* eq = app.add_subcommand("equilibria", "locate the excited state B");
    add_model_flags(eq, mp);

    // spectrum
    std::string at = "B";
    cfg_str(cfg, "at", at);
    CLI::App* sp = app.add_subcommand("spectrum", "eigenvalues of the reduced flow");
    add_model_flags(sp, mp);
    sp->add_option("--at", at, "equilibrium to linearize at")
        ->check(CLI::IsMember({"A", "B"}))
        ->capture_default_str();

    // shoot
    double delta_seed = 1e-6, capture_radius = 1e-3;
    std::string out_dir;
    cfg_num(cfg, "delta_seed", delta_seed);
    cfg_num(cfg, "capture_radius", capture_radius);
    cfg_str(cfg, "out", out_dir);
    CLI::App* sh = app.add_subcommand("shoot", "shoot the connecting orbit from A");
    add_model_flags(sh, mp);
    sh->add_option("--delta_seed", delta_seed, "offset along the stable eigenvector")
        ->capture_default_str();
    sh->add_option("--capture_radius", capture_radius,
                   "capture ball radius relative to |B - A|")
        ->capture_default_str();
    sh->add_option("--out", out_dir, "directory for orbit.csv");

    // kpp-check
    int samples = 1000;
    cfg_int(cfg, "samples", samples);
    CLI::App* kp = app.add_subcommand("kpp-check", "scalar-front concavity report");
    add_model_flags(kp, mp);
    kp->add_option("--samples", samples, "concavity scan resolution")
        ->capture_default_str();

    // simulate
    GridConfig grid{20.0, 2001, 1e-3, 10.0};
    cfg_num(cfg, "L", grid.L);
    cfg_int(cfg, "nx", grid.nx);
    cfg_num(cfg, "dtau", grid.dtau);
    cfg_num(cfg, "t_end", grid.t_end);
    double A_opt = -1.0, k_init = 5.0, B_init = 1.0;
    cfg_num(cfg, "A", A_opt);
    cfg_num(cfg, "k", k_init);
    cfg_num(cfg, "B", B_init);
    int snapshot_every = 1000;
    cfg_int(cfg, "snapshot_every", snapshot_every);
    std::string frame = "moving", mode = "system";
    cfg_str(cfg, "frame", frame);
    cfg_str(cfg, "mode", mode);
    double level_opt = -1.0, t_from = -1.0;
    cfg_num(cfg, "level", level_opt);
    cfg_num(cfg, "t_from", t_from);
    CLI::App* sim = app.add_subcommand("simulate", "semi-implicit front simulation");
    add_model_flags(sim, mp);
    sim->add_option("--L", grid.L, "domain length")->capture_default_str();
    sim->add_option("--nx", grid.nx, "grid nodes")->capture_default_str();
    sim->add_option("--dtau", grid.dtau, "time step")->capture_default_str();
    sim->add_option("--t_end", grid.t_end, "final time")->capture_default_str();
    auto* sim_A = sim->add_option("--A", A_opt, "initial amplitude (default: u_bar)");
    sim->add_option("--k", k_init, "initial decay rate")->capture_default_str();
    sim->add_option("--B", B_init, "initial tension")->capture_default_str();
    sim->add_option("--snapshot_every", snapshot_every, "steps between snapshots")
        ->capture_default_str();
    sim->add_option("--frame", frame, "lab drops the c u_x transport term")
        ->check(CLI::IsMember({"lab", "moving"}))
        ->capture_default_str();
    sim->add_option("--mode", mode, "two-field system or scalar reduction")
        ->check(CLI::IsMember({"system", "scalar"}))
        ->capture_default_str();
    auto* sim_level =
        sim->add_option("--level", level_opt, "front tracking level (default: u_bar/2)");
    sim->add_option("--t_from", t_from, "discard snapshots before this time in the fit")
        ->capture_default_str();
    sim->add_option("--out", out_dir, "directory for snapshot CSV files");

    // front-speed
    std::string snap_dir;
    cfg_str(cfg, "dir", snap_dir);
    CLI::App* fsv = app.add_subcommand("front-speed", "fit a speed to stored snapshots");
    auto* fs_dir = fsv->add_option("--dir", snap_dir, "directory of snapshot_*.csv");
    if (!cfg.contains("dir")) fs_dir->required();
    auto* fs_level = fsv->add_option("--level", level_opt, "front tracking level");
    if (!cfg.contains("level")) fs_level->required();
    fsv->add_option("--t_from", t_from, "discard earlier snapshots")
        ->capture_default_str();

    // sweep
    double w_start = 1e-2, w_stop = 1e2;
    int w_count = 9;
    std::string w_scale = "log";
    cfg_num(cfg, "start", w_start);
    cfg_num(cfg, "stop", w_stop);
    cfg_int(cfg, "count", w_count);
    cfg_str(cfg, "scale", w_scale);
    CLI::App* sw = app.add_subcommand("sweep", "shoot across a range of omega");
    add_model_flags(sw, mp);
    auto* sw_start = sw->add_option("--start", w_start, "first omega");
    auto* sw_stop = sw->add_option("--stop", w_stop, "last omega");
    auto* sw_count = sw->add_option("--count", w_count, "number of points")
                         ->check(CLI::PositiveNumber);
    if (!cfg.contains("start")) sw_start->required();
    if (!cfg.contains("stop")) sw_stop->required();
    if (!cfg.contains("count")) sw_count->required();
    sw->add_option("--scale", w_scale, "point spacing")
        ->check(CLI::IsMember({"log", "linear"}))
        ->capture_default_str();
    sw->add_option("--delta_seed", delta_seed, "offset along the stable eigenvector")
        ->capture_default_str();
    sw->add_option("--capture_radius", capture_radius,
                   "capture ball radius relative to |B - A|")
        ->capture_default_str();
    sw->add_option("--out", out_dir, "directory for sweep.csv");

    for (CLI::App* s : {eq, sp, sh, kp, sim, fsv, sw}) {
        s->add_option("--config", config_path, "JSON config file (flags override)");
        s->add_option("--seed", seed, "seed for sampled property checks");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(eq)) return cmd_equilibria(mp);
        if (app.got_subcommand(sp)) return cmd_spectrum(mp, at);
        if (app.got_subcommand(sh))
            return cmd_shoot(mp, delta_seed, capture_radius, out_dir);
        if (app.got_subcommand(kp)) return cmd_kpp_check(mp, samples);
        if (app.got_subcommand(sim))
            return cmd_simulate(mp, grid, A_opt,
                                sim_A->count() > 0 || cfg.contains("A"), k_init,
                                B_init, snapshot_every, frame, mode, level_opt,
                                sim_level->count() > 0 || cfg.contains("level"),
                                t_from, out_dir);
        if (app.got_subcommand(fsv)) return cmd_front_speed(snap_dir, level_opt, t_from);
        if (app.got_subcommand(sw)) {
            if (w_scale == "log" && (w_start <= 0.0 || w_stop <= 0.0)) {
                std::cerr << "error: log sweep requires positive start and stop\n";
                return 2;
            }
            return cmd_sweep(mp, w_start, w_stop, w_count, w_scale, delta_seed,
                             capture_radius, out_dir);
        }
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
