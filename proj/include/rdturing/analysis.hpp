#pragma once

#include <optional>
#include <vector>

#include "rdturing/pde.hpp"

namespace rdt {

enum class AsymptoticVariant {
    HomogeneousStationary,
    TuringPattern,
    HomogeneousOscillatory,
    InhomogeneousOscillatory,
    Undecided,
};

const char* to_string(AsymptoticVariant v);

struct ClassifyOptions {
    double theta_time = 1e-3;   // absolute floor on temporal amplitude
    double theta_space = 1e-3;  // spatial amplitude separating homogeneous from patterned
    /// A run is also called time-independent when its temporal amplitude is
    /// below this fraction of the largest |phi| in the window. Slow coarsening
    /// of a formed pattern then still counts as stationary.
    double theta_rel = 0.25;
    double window_fraction = 0.1;  // trailing share of the run that is analysed
};

struct AsymptoticClass {
    AsymptoticVariant variant = AsymptoticVariant::Undecided;
    double temporal_amplitude = 0.0;  // max over window and cells of |phi(t) - phi(t_end)|
    double spatial_amplitude = 0.0;   // max - min of phi1 at t_end
    double excursion = 0.0;           // max |phi| over window and cells
    std::size_t window_snapshots = 0;
};

AsymptoticClass classify_asymptotic(const std::vector<Snapshot>& snapshots, const ClassifyOptions& opts = {});

struct SpectrumReport {
    std::vector<double> c;          // phi1 coefficients, c[0] is the mean
    std::vector<double> d;          // phi2 coefficients
    std::vector<int> dominant;      // indices n >= 1 by decreasing |c_n|
    std::vector<double> half_wave;  // phi1 on cos(pi n x / S), diagnostic only
};

/// Projection of a sampled profile onto cos(2 pi n x / S) at cell centres,
/// c_n = (2/N) sum phi(x_i) cos(2 pi n x_i / S) for n >= 1, c_0 the mean.
std::vector<double> cosine_coefficients(const std::vector<double>& profile, int max_index);

/// Same for the half-wave basis cos(pi n x / S).
std::vector<double> half_wave_coefficients(const std::vector<double>& profile, int max_index);

/// Spectrum of a 1D field. For k = 2 the profile along `axis` is the mean over
/// the other axis (axis 0 averages rows into a function of the column).
/// Indices run to N/2; `top` bounds the dominant list.
SpectrumReport cosine_spectrum(const Field& field, int axis = 0, std::size_t top = 10);

/// Half the number of sign changes of phi1 minus its mean, after 1-2-1
/// smoothing, ignoring samples within 1e-9 of the mean. Rejects fields with
/// spatial amplitude below theta_space.
int count_spatial_periods(const Field& field, double theta_space = 1e-3);

}  // namespace rdt
