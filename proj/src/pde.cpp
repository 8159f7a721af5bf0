#include "rdturing/pde.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rdturing/errors.hpp"

namespace rdt {

static_assert(std::endian::native == std::endian::little, "snapshot IO assumes a little-endian host");

namespace {

constexpr char kSnapshotMagic[8] = {'R', 'D', 'S', 'N', 'A', 'P', '0', '1'};
constexpr std::size_t kSnapshotHeaderBytes = 32;

struct NoKinetics {
    std::pair<double, double> rhs_shifted(double, double) const { return {0.0, 0.0}; }
};

[[noreturn]] void report_blowup(const Field& f, std::int64_t step_index) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        const int comp = !std::isfinite(f.phi1[i]) ? 1 : (!std::isfinite(f.phi2[i]) ? 2 : 0);
        if (comp) {
            std::ostringstream os;
            os << "non-finite value in phi" << comp << " at step " << step_index << ", cell " << i;
            throw NumericalBlowup(step_index, i, comp, os.str());
        }
    }
    throw NumericalBlowup(step_index, 0, 0, "non-finite lattice sum at step " + std::to_string(step_index));
}

// Writes one explicit step from `in` into `out`. Zero flux: the ghost cell
// beyond each face mirrors the cell inside it.
template <class Kinetics>
void advance(const Field& in, Field& out, const Kinetics& kin, double r1, double r2, double dt,
             std::int64_t step_index) {
    const int n = in.grid.n_cells;
    const double* u = in.phi1.data();
    const double* v = in.phi2.data();
    double* nu = out.phi1.data();
    double* nv = out.phi2.data();
    double checksum = 0.0;

    if (in.grid.k == 1) {
        for (int i = 0; i < n; ++i) {
            const int l = i > 0 ? i - 1 : 0;
            const int r = i < n - 1 ? i + 1 : n - 1;
            const auto [fu, fv] = kin.rhs_shifted(u[i], v[i]);
            nu[i] = u[i] + dt * fu + r1 * (u[l] - 2.0 * u[i] + u[r]);
            nv[i] = v[i] + dt * fv + r2 * (v[l] - 2.0 * v[i] + v[r]);
            checksum += nu[i] + nv[i];
        }
    } else {
        for (int row = 0; row < n; ++row) {
            const int up = (row > 0 ? row - 1 : 0) * n;
            const int down = (row < n - 1 ? row + 1 : n - 1) * n;
            const int here = row * n;
            for (int col = 0; col < n; ++col) {
                const int left = col > 0 ? col - 1 : 0;
                const int right = col < n - 1 ? col + 1 : n - 1;
                const int c = here + col;
                const auto [fu, fv] = kin.rhs_shifted(u[c], v[c]);
                const double lap_u = u[up + col] + u[down + col] + u[here + left] + u[here + right] - 4.0 * u[c];
                const double lap_v = v[up + col] + v[down + col] + v[here + left] + v[here + right] - 4.0 * v[c];
                nu[c] = u[c] + dt * fu + r1 * lap_u;
                nv[c] = v[c] + dt * fv + r2 * lap_v;
                checksum += nu[c] + nv[c];
            }
        }
    }
    if (!std::isfinite(checksum)) report_blowup(out, step_index);
}

void check_field(const Field& f) {
    validate(f.grid);
    if (f.phi1.size() != f.grid.size() || f.phi2.size() != f.grid.size()) {
        throw ValidationError("field storage does not match its grid");
    }
}

template <class Kinetics>
void step_with(Field& field, const Kinetics& kin, const DiffusionPair& D, double dt, std::int64_t step_index) {
    check_field(field);
    const double inv = 1.0 / (field.grid.dx * field.grid.dx);
    Field next = Field::zeros(field.grid);
    advance(field, next, kin, D.D1 * dt * inv, D.D2 * dt * inv, dt, step_index);
    field = std::move(next);
}

template <class Kinetics>
IntegrationResult integrate_with(Field current, const Kinetics& kin, const DiffusionPair& D,
                                 const IntegratorConfig& cfg) {
    const double inv = 1.0 / (current.grid.dx * current.grid.dx);
    const double r1 = D.D1 * cfg.dt * inv;
    const double r2 = D.D2 * cfg.dt * inv;

    IntegrationResult result;
    result.snapshots.push_back({0, 0.0, current});
    Field next = Field::zeros(current.grid);
    for (std::int64_t s = 1; s <= cfg.steps; ++s) {
        advance(current, next, kin, r1, r2, cfg.dt, s);
        std::swap(current, next);
        if (s % cfg.snapshot_stride == 0 || s == cfg.steps) {
            result.snapshots.push_back({s, static_cast<double>(s) * cfg.dt, current});
        }
    }
    result.final_field = std::move(current);
    return result;
}

template <class T>
void put(std::ostream& os, const T& value) {
    os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& is) {
    T value{};
    is.read(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
}

}  // namespace

std::size_t GridSpec::size() const {
    const auto n = static_cast<std::size_t>(std::max(n_cells, 0));
    return k == 2 ? n * n : n;
}

void validate(const GridSpec& grid) {
    if (grid.k != 1 && grid.k != 2) throw ValidationError("simulation supports k = 1 or k = 2 only");
    if (grid.n_cells < 2) throw ValidationError("grid needs at least 2 cells per axis");
    if (!(grid.dx > 0.0) || !std::isfinite(grid.dx)) throw ValidationError("grid spacing dx must be positive");
}

Field Field::zeros(const GridSpec& grid) {
    Field f;
    f.grid = grid;
    f.phi1.assign(grid.size(), 0.0);
    f.phi2.assign(grid.size(), 0.0);
    return f;
}

GridDerivation derive_grid(int n_cells, double dt, double d_max) {
    if (n_cells <= 0 || !(dt > 0.0) || !(d_max > 0.0)) {
        throw ValidationError("derive_grid needs positive N, dt and max diffusivity");
    }
    const double dx = std::sqrt(6.0 * dt * d_max);
    return {dx, n_cells * dx};
}

double stability_ratio(double dt, const DiffusionPair& D, double dx) {
    return dt * std::max(D.D1, D.D2) / (dx * dx);
}

void check_integrator(const IntegratorConfig& cfg, const DiffusionPair& D, const GridSpec& grid) {
    validate(grid);
    validate(D);
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ValidationError("time step dt must be positive");
    if (cfg.steps < 0) throw ValidationError("step count must be non-negative");
    if (cfg.snapshot_stride < 1) throw ValidationError("snapshot stride must be >= 1");
    const double ratio = stability_ratio(cfg.dt, D, grid.dx);
    if (ratio > kDefaultStabilityRatio + 1e-12) {
        std::ostringstream os;
        os << "stability ratio dt*max(D)/dx^2 = " << ratio << " exceeds 1/6";
        throw ValidationError(os.str());
    }
}

void step(Field& field, const Model& model, const DiffusionPair& D, double dt, std::int64_t step_index) {
    std::visit([&](const auto& m) { step_with(field, m, D, dt, step_index); }, model);
}

void step_diffusion_only(Field& field, const DiffusionPair& D, double dt) {
    step_with(field, NoKinetics{}, D, dt, 0);
}

IntegrationResult integrate(Field initial, const Model& model, const DiffusionPair& D, const IntegratorConfig& cfg) {
    check_field(initial);
    check_integrator(cfg, D, initial.grid);
    if (const auto* nf = std::get_if<NormalForm>(&model)) nf->validate_for_simulation();
    return std::visit([&](const auto& m) { return integrate_with(std::move(initial), m, D, cfg); }, model);
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Field random_ic(const GridSpec& grid, double amplitude, std::uint64_t seed) {
    validate(grid);
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw ValidationError("initial-condition amplitude must be finite and non-negative");
    }
    Field f = Field::zeros(grid);
    if (amplitude == 0.0) return f;
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.phi1[i] = amplitude * (2.0 * rng.uniform() - 1.0);
        f.phi2[i] = amplitude * (2.0 * rng.uniform() - 1.0);
    }
    return f;
}

std::pair<double, double> brusselator_cycle_point(const Brusselator& model, double relax_time) {
    constexpr double h = 1e-3;
    const auto n = static_cast<std::int64_t>(std::llround(relax_time / h));
    double u = 0.01, v = 0.0;
    for (std::int64_t s = 0; s < n; ++s) {
        const auto [k1u, k1v] = model.rhs_shifted(u, v);
        const auto [k2u, k2v] = model.rhs_shifted(u + 0.5 * h * k1u, v + 0.5 * h * k1v);
        const auto [k3u, k3v] = model.rhs_shifted(u + 0.5 * h * k2u, v + 0.5 * h * k2v);
        const auto [k4u, k4v] = model.rhs_shifted(u + h * k3u, v + h * k3v);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    }
    if (!std::isfinite(u) || !std::isfinite(v)) {
        throw NumericalBlowup(n, 0, 0, "local ODE diverged while relaxing onto the limit cycle");
    }
    return {u, v};
}

Field limit_cycle_ic(const Model& model, const GridSpec& grid, double amplitude, std::uint64_t seed) {
    double u0 = 0.0, v0 = 0.0;
    if (const auto* br = std::get_if<Brusselator>(&model)) {
        const double threshold = br->hopf_threshold();
        if (!(br->params().B > threshold)) {
            std::ostringstream os;
            os << "no limit cycle: B = " << br->params().B << " does not exceed the Hopf threshold " << threshold;
            throw ValidationError(os.str());
        }
        std::tie(u0, v0) = brusselator_cycle_point(*br);
    } else {
        const auto& nf = std::get<NormalForm>(model);
        nf.validate_for_simulation();
        if (!(nf.params().nu > 0.0)) throw ValidationError("no limit cycle: normal form needs nu > 0");
        u0 = limit_cycle_radius(nf.params());
    }
    Field f = random_ic(grid, amplitude, seed);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.phi1[i] += u0;
        f.phi2[i] += v0;
    }
    return f;
}

void write_snapshot(const std::string& path, const Field& field, double t) {
    check_field(field);
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("cannot open snapshot file for writing: " + path);
    os.write(kSnapshotMagic, sizeof kSnapshotMagic);
    put<std::int32_t>(os, field.grid.k);
    put<std::int32_t>(os, field.grid.n_cells);
    put<double>(os, field.grid.dx);
    put<double>(os, t);
    os.write(reinterpret_cast<const char*>(field.phi1.data()),
             static_cast<std::streamsize>(field.phi1.size() * sizeof(double)));
    os.write(reinterpret_cast<const char*>(field.phi2.data()),
             static_cast<std::streamsize>(field.phi2.size() * sizeof(double)));
    if (!os) throw ValidationError("failed writing snapshot: " + path);
}

LoadedSnapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ValidationError("cannot open snapshot file: " + path);
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kSnapshotMagic, sizeof magic) != 0) {
        throw ValidationError("not a snapshot file (bad magic): " + path);
    }
    LoadedSnapshot out;
    out.field.grid.k = get<std::int32_t>(is);
    out.field.grid.n_cells = get<std::int32_t>(is);
    out.field.grid.dx = get<double>(is);
    out.t = get<double>(is);
    if (!is) throw ValidationError("truncated snapshot header: " + path);
    validate(out.field.grid);
    const std::size_t n = out.field.grid.size();
    out.field.phi1.resize(n);
    out.field.phi2.resize(n);
    is.read(reinterpret_cast<char*>(out.field.phi1.data()), static_cast<std::streamsize>(n * sizeof(double)));
    is.read(reinterpret_cast<char*>(out.field.phi2.data()), static_cast<std::streamsize>(n * sizeof(double)));
    if (!is) throw ValidationError("truncated snapshot body: " + path);
    static_assert(kSnapshotHeaderBytes == 8 + 4 + 4 + 8 + 8);
    return out;
}

PgmRange write_pgm(const std::string& path, const std::vector<double>& values, int n_cells) {
    if (n_cells <= 0 || values.size() != static_cast<std::size_t>(n_cells) * n_cells) {
        throw ValidationError("PGM export needs an N x N lattice");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    PgmRange range{*lo, *hi};
    const double span = range.max - range.min;

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ValidationError("cannot open PGM file for writing: " + path);
    os << "P5\n" << n_cells << ' ' << n_cells << "\n65535\n";
    for (double x : values) {
        const double scaled = span > 0.0 ? (x - range.min) / span * 65535.0 : 0.0;
        const auto level = static_cast<std::uint16_t>(std::lround(std::clamp(scaled, 0.0, 65535.0)));
        const char bytes[2] = {static_cast<char>(level >> 8), static_cast<char>(level & 0xFF)};
        os.write(bytes, 2);
    }
    if (!os) throw ValidationError("failed writing PGM: " + path);
    return range;
}

}  // namespace rdt
