#include "rdturing/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "rdturing/errors.hpp"

namespace rdt {

namespace {

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string csv_safe(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '"', '\'');
    return s;
}

void note(std::string& error, const std::string& stage, const std::exception& e) {
    if (!error.empty()) error += " | ";
    error += stage + ": " + e.what();
}

}  // namespace

SweepSpec SweepSpec::from_config(const RunConfig& c, bool full_scale) {
    if (!c.sweep.present) throw ValidationError("config has no [sweep] section");
    SweepSpec s;
    s.base = c;
    s.axis1 = c.sweep.axis1;
    s.axis2 = c.sweep.axis2;
    s.simulate = c.sweep.simulate;
    s.sim_N = full_scale ? 250 : c.sweep.N;
    s.sim_t_end = full_scale ? 1000.0 : c.sweep.t_end;
    s.dt_max = c.sweep.dt_max;
    return s;
}

void validate(const SweepSpec& spec) {
    for (const auto* axis : {&spec.axis1, &spec.axis2}) {
        if (axis->count < 2) throw ValidationError("sweep axis counts must be >= 2");
        if (!is_parameter_name(spec.base.family, axis->name)) {
            throw ValidationError("'" + axis->name + "' is not a sweepable parameter of the " +
                                  to_string(spec.base.family) + " family");
        }
        if (axis->log && !(axis->min > 0.0 && axis->max > 0.0)) {
            throw ValidationError("log axis needs positive bounds");
        }
    }
    if (spec.axis1.name == spec.axis2.name) throw ValidationError("sweep axes must differ");
    if (spec.simulate) {
        if (spec.sim_N < 2) throw ValidationError("sweep simulation needs N >= 2");
        if (!(spec.sim_t_end > 0.0) || !(spec.dt_max > 0.0)) {
            throw ValidationError("sweep simulation needs positive t_end and dt_max");
        }
        if (spec.base.domain.k > 2) throw ValidationError("sweep simulation supports k = 1 or 2");
    }
}

SweepRow run_sweep_point(const SweepSpec& spec, std::int64_t idx) {
    const auto started = std::chrono::steady_clock::now();
    SweepRow row;
    row.idx = idx;
    const int n2 = spec.axis2.count;
    row.param1 = spec.axis1.value(static_cast<int>(idx / n2));
    row.param2 = spec.axis2.value(static_cast<int>(idx % n2));

    RunConfig cfg = spec.base;
    std::optional<Model> model;
    try {
        set_parameter(cfg, spec.axis1.name, row.param1);
        set_parameter(cfg, spec.axis2.name, row.param2);
        validate(cfg.D);
        if (!(cfg.D.D1 + cfg.D.D2 > 0.0)) throw ValidationError("D1 + D2 must be positive");
        model = cfg.make_model();
    } catch (const std::exception& e) {
        note(row.error, "setup", e);
    }

    if (model) {
        const Jacobian2x2 J0 = jacobian_at_fixed_point(*model);
        const DomainSpec dom = cfg.domain.domain();
        try {
            row.thm = classify_turing(J0, cfg.D, dom);
        } catch (const std::exception& e) {
            note(row.error, "theorem", e);
        }
        try {
            row.oracle = scan_spectrum(J0, cfg.D, dom);
        } catch (const std::exception& e) {
            note(row.error, "oracle", e);
        }

        if (spec.simulate) {
            try {
                const double dmax = std::max(cfg.D.D1, cfg.D.D2);
                GridSpec grid{cfg.domain.k, spec.sim_N, cfg.domain.S / spec.sim_N};
                IntegratorConfig ic;
                ic.dt = std::min(spec.dt_max, cfg.domain.stability_ratio * grid.dx * grid.dx / dmax);
                ic.steps = std::llround(spec.sim_t_end / ic.dt);
                ic.snapshot_stride = std::max<std::int64_t>(1, ic.steps / 100);
                const std::uint64_t seed = cfg.run.seed ^ static_cast<std::uint64_t>(idx);
                Field init = cfg.run.ic == IcKind::LimitCycle ? limit_cycle_ic(*model, grid, cfg.run.amplitude, seed)
                                                              : random_ic(grid, cfg.run.amplitude, seed);
                const auto result = integrate(std::move(init), *model, cfg.D, ic);
                row.sim = classify_asymptotic(result.snapshots, cfg.analysis);
                if (grid.k == 1 && row.sim->spatial_amplitude >= cfg.analysis.theta_space) {
                    row.period_count = count_spatial_periods(result.final_field, cfg.analysis.theta_space);
                }
            } catch (const std::exception& e) {
                note(row.error, "simulation", e);
            }
        }
    }

    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers,
                                const std::function<void(const SweepRow&)>& on_row) {
    validate(spec);
    const auto total = static_cast<std::int64_t>(spec.axis1.count) * spec.axis2.count;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::int64_t>(workers, total));

    std::vector<std::optional<SweepRow>> slots(static_cast<std::size_t>(total));
    std::mutex mutex;
    std::condition_variable ready;
    std::atomic<std::int64_t> next{0};

    auto work = [&] {
        for (std::int64_t i = next++; i < total; i = next++) {
            SweepRow row = run_sweep_point(spec, i);
            {
                std::lock_guard lock(mutex);
                slots[static_cast<std::size_t>(i)] = std::move(row);
            }
            ready.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(total));
    for (std::int64_t i = 0; i < total; ++i) {
        std::unique_lock lock(mutex);
        ready.wait(lock, [&] { return slots[static_cast<std::size_t>(i)].has_value(); });
        rows.push_back(std::move(*slots[static_cast<std::size_t>(i)]));
        slots[static_cast<std::size_t>(i)].reset();
        lock.unlock();
        if (on_row) on_row(rows.back());
    }
    for (auto& t : pool) t.join();
    return rows;
}

std::string sweep_csv_header() {
    return "idx,param1,param2,thm_outcome,thm_case,window_lo,window_hi,oracle_lambda,oracle_class,argmax_norm2,"
           "sim_class,period_count,error";
}

std::string sweep_csv_line(const SweepRow& row) {
    std::ostringstream os;
    os << row.idx << ',' << num(row.param1) << ',' << num(row.param2) << ',';
    if (row.thm) {
        os << to_string(row.thm->outcome) << ',' << to_string(row.thm->case_fired) << ',';
        if (row.thm->window) {
            os << num(row.thm->window->lower) << ',' << num(row.thm->window->upper) << ',';
        } else {
            os << ",,";
        }
    } else {
        os << ",,,,";
    }
    if (row.oracle) {
        os << num(row.oracle->capital_lambda) << ',' << to_string(row.oracle->classification) << ',';
        const auto norms = row.oracle->argmax_norm2();
        for (std::size_t i = 0; i < norms.size(); ++i) os << (i ? ";" : "") << norms[i];
        os << ',';
    } else {
        os << ",,,";
    }
    os << (row.sim ? to_string(row.sim->variant) : "") << ',';
    if (row.period_count) os << *row.period_count;
    os << ',' << csv_safe(row.error);
    return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = sweep_csv_header() + "\n";
    for (const auto& r : rows) out += sweep_csv_line(r) + "\n";
    return out;
}

std::string region_outcome(const SweepRow& r) {
    if (!r.thm) return "Error";
    // A necessary-only case with lattice witnesses is settled by the oracle.
    if (r.thm->outcome == Outcome::Instability && !r.thm->sufficient && r.oracle) {
        const auto oc = r.oracle->classification;
        const bool turing =
            oc == SpectralClass::TuringInstability || oc == SpectralClass::TuringInstabilityInfiniteOrder;
        return to_string(turing ? Outcome::Instability : Outcome::NoInstability);
    }
    return to_string(r.thm->outcome);
}

RegionSummary region_summary(const std::vector<SweepRow>& rows) {
    RegionSummary out;
    for (const auto& r : rows) {
        const std::string thm = region_outcome(r);
        std::string sim = "NotSimulated";
        if (r.sim) {
            sim = to_string(r.sim->variant);
        } else if (!r.error.empty() && r.error.find("simulation") != std::string::npos) {
            sim = "Error";
        }
        ++out[{thm, sim}];
    }
    return out;
}

}  // namespace rdt
