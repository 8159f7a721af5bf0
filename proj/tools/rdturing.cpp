// rdturing: Turing instability analysis and simulation for two-component
// reaction-diffusion systems.
//
//   rdturing classify   --config run.cfg [--json]
//   rdturing dispersion --config run.cfg [--out DIR]
//   rdturing simulate   --config run.cfg [--seed N] [--out DIR]
//   rdturing analyze    --in DIR [--out DIR]
//   rdturing sweep      --config sweep.cfg [--workers N] [--full-scale] [--out DIR]
//
// Exit status: 0 success, 1 invalid input, 2 numerical blow-up.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "rdturing/analysis.hpp"
#include "rdturing/config.hpp"
#include "rdturing/errors.hpp"
#include "rdturing/linstab.hpp"
#include "rdturing/pde.hpp"
#include "rdturing/sweep.hpp"
#include "rdturing/theorems.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Options {
    std::string config;
    std::string in_dir;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    unsigned workers = 0;
    bool full_scale = false;
    bool json_out = false;
};

rdt::RunConfig load(const Options& o) {
    if (o.config.empty()) throw rdt::ValidationError("--config is required");
    rdt::RunConfig c = rdt::load_config(o.config);
    if (o.seed) c.run.seed = *o.seed;
    return c;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw rdt::ValidationError("cannot write " + path.string());
    os << text;
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

json modes_json(const std::vector<rdt::ModeIndex>& modes) {
    json arr = json::array();
    for (const auto& m : modes) arr.push_back(m.indices);
    return arr;
}

json verdict_json(const rdt::TuringVerdict& v) {
    json j;
    j["outcome"] = rdt::to_string(v.outcome);
    j["case"] = rdt::to_string(v.case_fired);
    if (v.window) {
        j["window"] = {v.window->lower, v.window->upper};
    } else {
        j["window"] = nullptr;
    }
    j["witnesses"] = modes_json(v.witnesses);
    j["witnesses_truncated"] = v.witnesses_truncated;
    j["sufficient"] = v.sufficient;
    j["infinite_order"] = v.infinite_order;
    j["zero_mode_unstable"] = v.zero_mode_unstable;
    j["boundary"] = v.boundary;
    return j;
}

json oracle_json(const rdt::ScanResult& s) {
    json j;
    j["lambda"] = s.capital_lambda;
    j["class"] = rdt::to_string(s.classification);
    j["argmax_modes"] = modes_json(s.argmax_modes);
    j["argmax_norm2"] = s.argmax_norm2();
    j["scanned_norm2_max"] = s.scanned_norm2_max;
    return j;
}

int cmd_classify(const Options& o) {
    const rdt::RunConfig c = load(o);
    const rdt::Model model = c.make_model();
    const rdt::Jacobian2x2 J0 = rdt::jacobian_at_fixed_point(model);
    const rdt::DomainSpec dom = c.domain.domain();
    const rdt::CrossValidation cv = rdt::cross_validate(J0, c.D, dom);

    json j;
    j["model"] = rdt::model_family_name(model);
    j["jacobian"] = {{J0.a11, J0.a12}, {J0.a21, J0.a22}};
    j["D"] = {c.D.D1, c.D.D2};
    j["k"] = dom.k;
    j["S"] = dom.S;
    if (c.D.D1 > 0.0 && c.D.D2 > 0.0) {
        const auto tp = rdt::thm_params(J0, c.D, dom);
        j["alpha"] = tp.alpha;
        j["delta"] = tp.delta;
        j["eps"] = tp.eps;
    }
    j["theorem"] = verdict_json(cv.thm);
    j["oracle"] = oracle_json(cv.oracle);
    j["agree"] = cv.agree;
    j["detail"] = cv.detail;
    if (c.family == rdt::ModelFamily::Brusselator) {
        const auto bc = rdt::brusselator_conditions(c.brusselator, c.D, dom);
        j["brusselator"] = {{"case_b", bc.case_b},   {"case_d", bc.case_d},   {"case_e", bc.case_e},
                            {"case_f", bc.case_f},   {"d2_zero", bc.d2_zero}, {"d1_zero", bc.d1_zero},
                            {"verdict", rdt::to_string(bc.verdict)}, {"hopf_threshold", rdt::brusselator_hopf_threshold(c.brusselator)}};
    } else {
        const auto nc = rdt::normal_form_conditions(c.normal_form, c.D, dom);
        j["normal_form"] = {{"i", nc.i}, {"ii", nc.ii}, {"iii", nc.iii}, {"iv", nc.iv}};
    }

    const std::string text = j.dump(2);
    if (!o.out_dir.empty()) write_text(ensure_dir(o.out_dir) / "classify.json", text + "\n");
    if (o.json_out || o.out_dir.empty()) {
        std::cout << text << '\n';
    }
    if (!o.json_out) {
        std::cerr << "theorem: " << rdt::to_string(cv.thm.outcome) << " (" << rdt::to_string(cv.thm.case_fired)
                  << "), oracle: " << rdt::to_string(cv.oracle.classification) << " Lambda = "
                  << cv.oracle.capital_lambda << ", agree = " << (cv.agree ? "yes" : "no") << '\n';
    }
    return 0;
}

int cmd_dispersion(const Options& o) {
    const rdt::RunConfig c = load(o);
    const rdt::Jacobian2x2 J0 = rdt::jacobian_at_fixed_point(c.make_model());
    const auto scan = rdt::scan_spectrum(J0, c.D, c.domain.domain(), rdt::CutoffPolicy::analytic(true));
    const std::string csv = rdt::dispersion_csv(scan);
    if (o.out_dir.empty()) {
        std::cout << csv;
    } else {
        write_text(ensure_dir(o.out_dir) / "dispersion.csv", csv);
    }
    return 0;
}

std::string snapshot_name(std::int64_t step) {
    std::ostringstream os;
    os << "snap_" << std::setw(10) << std::setfill('0') << step << ".bin";
    return os.str();
}

int cmd_simulate(const Options& o) {
    const rdt::RunConfig c = load(o);
    const rdt::Model model = c.make_model();
    const rdt::GridSpec grid = c.domain.grid();
    const rdt::IntegratorConfig ic = c.integrator();
    rdt::check_integrator(ic, c.D, grid);

    rdt::Field init = c.run.ic == rdt::IcKind::LimitCycle
                          ? rdt::limit_cycle_ic(model, grid, c.run.amplitude, c.run.seed)
                          : rdt::random_ic(grid, c.run.amplitude, c.run.seed);
    const auto result = rdt::integrate(std::move(init), model, c.D, ic);

    const fs::path dir = ensure_dir(o.out_dir.empty() ? "out" : o.out_dir);
    for (const auto& s : result.snapshots) rdt::write_snapshot((dir / snapshot_name(s.step)).string(), s.field, s.t);
    const double t_final = result.snapshots.back().t;
    rdt::write_snapshot((dir / "final.bin").string(), result.final_field, t_final);

    std::string sidecar = "# rdturing simulation sidecar; re-runs with: rdturing simulate --config run.cfg\n";
    if (grid.k == 2) {
        const auto r1 = rdt::write_pgm((dir / "final_phi1.pgm").string(), result.final_field.phi1, grid.n_cells);
        const auto r2 = rdt::write_pgm((dir / "final_phi2.pgm").string(), result.final_field.phi2, grid.n_cells);
        std::ostringstream os;
        os << std::setprecision(17) << "# pgm phi1 min = " << r1.min << ", max = " << r1.max << '\n'
           << "# pgm phi2 min = " << r2.min << ", max = " << r2.max << '\n';
        sidecar += os.str();
    }
    sidecar += rdt::to_config_text(c);
    write_text(dir / "run.cfg", sidecar);

    std::cerr << "simulated " << ic.steps << " steps to t = " << t_final << ", " << result.snapshots.size()
              << " snapshots in " << dir.string() << '\n';
    return 0;
}

int cmd_analyze(const Options& o) {
    if (o.in_dir.empty()) throw rdt::ValidationError("--in DIR is required");
    const fs::path in(o.in_dir);
    if (!fs::is_directory(in)) throw rdt::ValidationError("not a directory: " + o.in_dir);

    rdt::ClassifyOptions copts;
    if (fs::exists(in / "run.cfg")) copts = rdt::load_config((in / "run.cfg").string()).analysis;
    if (!o.config.empty()) copts = rdt::load_config(o.config).analysis;

    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(in)) {
        const auto name = e.path().filename().string();
        if (name.rfind("snap_", 0) == 0 && e.path().extension() == ".bin") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw rdt::ValidationError("no snap_*.bin files in " + o.in_dir);

    std::vector<rdt::Snapshot> snaps;
    for (const auto& f : files) {
        auto loaded = rdt::read_snapshot(f.string());
        snaps.push_back({0, loaded.t, std::move(loaded.field)});
    }
    const auto cls = rdt::classify_asymptotic(snaps, copts);
    const rdt::Field& last = snaps.back().field;
    const auto spec = rdt::cosine_spectrum(last);

    json j;
    j["class"] = rdt::to_string(cls.variant);
    j["temporal_amplitude"] = cls.temporal_amplitude;
    j["spatial_amplitude"] = cls.spatial_amplitude;
    j["excursion"] = cls.excursion;
    j["window_snapshots"] = cls.window_snapshots;
    j["t_end"] = snaps.back().t;
    if (last.grid.k == 1 && cls.spatial_amplitude >= copts.theta_space) {
        j["periods"] = rdt::count_spatial_periods(last, copts.theta_space);
    } else {
        j["periods"] = nullptr;
    }
    j["c0"] = spec.c[0];
    json top = json::array();
    for (int n : spec.dominant) top.push_back({{"n", n}, {"c", spec.c[static_cast<std::size_t>(n)]}});
    j["top_modes"] = top;
    std::vector<int> half(spec.half_wave.size() - 1);
    for (std::size_t i = 0; i < half.size(); ++i) half[i] = static_cast<int>(i) + 1;
    std::stable_sort(half.begin(), half.end(), [&](int a, int b) {
        return std::abs(spec.half_wave[static_cast<std::size_t>(a)]) >
               std::abs(spec.half_wave[static_cast<std::size_t>(b)]);
    });
    half.resize(std::min<std::size_t>(5, half.size()));
    j["half_wave_top"] = half;

    std::ostringstream csv;
    csv << "n,c,d\n" << std::setprecision(12);
    for (std::size_t n = 0; n < spec.c.size(); ++n) csv << n << ',' << spec.c[n] << ',' << spec.d[n] << '\n';

    const fs::path out = ensure_dir(o.out_dir.empty() ? o.in_dir : o.out_dir);
    write_text(out / "analysis.json", j.dump(2) + "\n");
    write_text(out / "spectrum.csv", csv.str());
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const Options& o) {
    const rdt::RunConfig c = load(o);
    const rdt::SweepSpec spec = rdt::SweepSpec::from_config(c, o.full_scale);
    const fs::path dir = ensure_dir(o.out_dir.empty() ? "out" : o.out_dir);
    std::ofstream csv(dir / "sweep.csv", std::ios::trunc);
    if (!csv) throw rdt::ValidationError("cannot write sweep.csv in " + dir.string());
    csv << rdt::sweep_csv_header() << '\n';

    const auto rows = rdt::run_sweep(spec, o.workers, [&](const rdt::SweepRow& row) {
        csv << rdt::sweep_csv_line(row) << '\n';
        csv.flush();
        std::cerr << "point " << row.idx << " (" << spec.axis1.name << " = " << row.param1 << ", "
                  << spec.axis2.name << " = " << row.param2 << "): "
                  << (row.thm ? rdt::to_string(row.thm->outcome) : "-") << " / "
                  << (row.sim ? rdt::to_string(row.sim->variant) : "-") << " in " << row.wall_seconds << " s"
                  << (row.error.empty() ? "" : " [error: " + row.error + "]") << '\n';
    });

    std::cerr << "region summary (theorem outcome x simulation class):\n";
    for (const auto& [cell, count] : rdt::region_summary(rows)) {
        std::cerr << "  " << cell.first << " x " << cell.second << ": " << count << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Turing instability analysis and simulation for two-component reaction-diffusion systems"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", o.config, "run configuration file");
        if (needs_config) opt->required();
        sub->add_option("--seed", o.seed, "override the configured seed");
        sub->add_option("--out", o.out_dir, "output directory");
        sub->add_flag("--json", o.json_out, "machine-readable output on stdout");
    };

    auto* classify = app.add_subcommand("classify", "closed-form criteria vs. spectral oracle (JSON)");
    add_common(classify, true);
    auto* dispersion = app.add_subcommand("dispersion", "full mode spectrum as CSV");
    add_common(dispersion, true);
    auto* simulate = app.add_subcommand("simulate", "integrate the PDE and write snapshots");
    add_common(simulate, true);
    auto* analyze = app.add_subcommand("analyze", "classify a snapshot directory");
    add_common(analyze, false);
    analyze->add_option("--in", o.in_dir, "snapshot directory")->required();
    auto* sweep = app.add_subcommand("sweep", "two-parameter grid to CSV");
    add_common(sweep, true);
    sweep->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    sweep->add_flag("--full-scale", o.full_scale, "N = 250, t = 1000 per point");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*classify) return cmd_classify(o);
        if (*dispersion) return cmd_dispersion(o);
        if (*simulate) return cmd_simulate(o);
        if (*analyze) return cmd_analyze(o);
        if (*sweep) return cmd_sweep(o);
    } catch (const rdt::NumericalBlowup& e) {
        std::cerr << "numerical blow-up: " << e.what() << '\n';
        return 2;
    } catch (const rdt::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
