#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdturing/linstab.hpp"
#include "rdturing/model.hpp"

namespace rdt {

inline constexpr double kDefaultStabilityRatio = 1.0 / 6.0;

/// Uniform cell-centred grid on [0, S]^k, S = n_cells * dx. Cell i sits at (i + 1/2) dx.
struct GridSpec {
    int k = 1;
    int n_cells = 0;
    double dx = 0.0;

    double S() const { return n_cells * dx; }
    std::size_t size() const;
};

void validate(const GridSpec& grid);

/// Both components in shifted coordinates, row-major for k = 2 (index = row * N + col).
struct Field {
    GridSpec grid;
    std::vector<double> phi1;
    std::vector<double> phi2;

    static Field zeros(const GridSpec& grid);
    std::size_t size() const { return phi1.size(); }
};

struct GridDerivation {
    double dx;
    double S;
};

/// dx = sqrt(6 dt d_max) (ratio 1/6), S = n_cells dx.
GridDerivation derive_grid(int n_cells, double dt, double d_max);

struct IntegratorConfig {
    double dt = 0.001;
    std::int64_t steps = 0;
    std::int64_t snapshot_stride = 1;
};

/// dt max(D1, D2) / dx^2.
double stability_ratio(double dt, const DiffusionPair& D, double dx);

/// Throws ValidationError if the explicit scheme's ratio exceeds 1/6.
void check_integrator(const IntegratorConfig& cfg, const DiffusionPair& D, const GridSpec& grid);

/// One explicit step of the reaction-diffusion system. `step_index` only labels blow-up diagnostics.
void step(Field& field, const Model& model, const DiffusionPair& D, double dt, std::int64_t step_index = 0);

/// Same scheme with the kinetics switched off; used to test the stencil in isolation.
void step_diffusion_only(Field& field, const DiffusionPair& D, double dt);

struct Snapshot {
    std::int64_t step = 0;
    double t = 0.0;
    Field field;
};

struct IntegrationResult {
    std::vector<Snapshot> snapshots;  // step 0, every stride, and the final step
    Field final_field;
};

IntegrationResult integrate(Field initial, const Model& model, const DiffusionPair& D, const IntegratorConfig& cfg);

/// SplitMix64. Small, fast, and fully specified, so fields are bit-reproducible everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();

private:
    std::uint64_t state_;
};

/// Every cell of each component uniform in [-amplitude, amplitude] about the fixed point.
/// Draws alternate phi1, phi2 cell by cell.
Field random_ic(const GridSpec& grid, double amplitude, std::uint64_t seed);

/// Point on the Brusselator limit cycle in shifted coordinates, reached by
/// relaxing the local ODE (RK4, h = 1e-3) from (0.01, 0) for `relax_time`.
std::pair<double, double> brusselator_cycle_point(const Brusselator& model, double relax_time = 500.0);

/// Homogeneous field on the local limit cycle plus a random_ic perturbation.
/// Throws ValidationError when the local system has no stable cycle.
Field limit_cycle_ic(const Model& model, const GridSpec& grid, double amplitude, std::uint64_t seed);

/// Binary snapshot: "RDSNAP01", int32 k, int32 N, f64 dx, f64 t (little-endian), then phi1 and phi2.
void write_snapshot(const std::string& path, const Field& field, double t);

struct LoadedSnapshot {
    Field field;
    double t = 0.0;
};

LoadedSnapshot read_snapshot(const std::string& path);

struct PgmRange {
    double min = 0.0;
    double max = 0.0;
};

/// 16-bit binary PGM of a 2D lattice, linearly rescaled from [min, max] to [0, 65535].
PgmRange write_pgm(const std::string& path, const std::vector<double>& values, int n_cells);

}  // namespace rdt
