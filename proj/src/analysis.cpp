#include "rdturing/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rdturing/errors.hpp"

namespace rdt {

namespace {

std::vector<double> axis_profile(const Field& field, int axis) {
    const int n = field.grid.n_cells;
    if (field.grid.k == 1) return field.phi1;
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < n; ++col) {
            const double x = field.phi1[static_cast<std::size_t>(row) * n + col];
            out[static_cast<std::size_t>(axis == 0 ? col : row)] += x;
        }
    }
    for (double& x : out) x /= n;
    return out;
}

std::vector<double> profile_of(const std::vector<double>& values, const GridSpec& grid, int axis) {
    Field f;
    f.grid = grid;
    f.phi1 = values;
    return axis_profile(f, axis);
}

std::vector<double> project(const std::vector<double>& profile, int max_index, double freq_scale) {
    const auto n = static_cast<double>(profile.size());
    std::vector<double> c(static_cast<std::size_t>(max_index) + 1, 0.0);
    if (profile.empty()) return c;
    c[0] = std::accumulate(profile.begin(), profile.end(), 0.0) / n;
    for (int m = 1; m <= max_index; ++m) {
        double acc = 0.0;
        for (std::size_t i = 0; i < profile.size(); ++i) {
            const double x = (static_cast<double>(i) + 0.5) / n;
            acc += profile[i] * std::cos(freq_scale * std::numbers::pi * m * x);
        }
        c[static_cast<std::size_t>(m)] = 2.0 / n * acc;
    }
    return c;
}

}  // namespace

const char* to_string(AsymptoticVariant v) {
    switch (v) {
        case AsymptoticVariant::HomogeneousStationary: return "HomogeneousStationary";
        case AsymptoticVariant::TuringPattern: return "TuringPattern";
        case AsymptoticVariant::HomogeneousOscillatory: return "HomogeneousOscillatory";
        case AsymptoticVariant::InhomogeneousOscillatory: return "InhomogeneousOscillatory";
        case AsymptoticVariant::Undecided: return "Undecided";
    }
    return "?";
}

AsymptoticClass classify_asymptotic(const std::vector<Snapshot>& snapshots, const ClassifyOptions& opts) {
    AsymptoticClass out;
    if (snapshots.empty()) return out;

    const Snapshot& last = snapshots.back();
    const double t0 = snapshots.front().t;
    const double window_start = last.t - opts.window_fraction * (last.t - t0);
    std::size_t first = snapshots.size();
    while (first > 0 && snapshots[first - 1].t >= window_start) --first;
    out.window_snapshots = snapshots.size() - first;

    const auto& end1 = last.field.phi1;
    const auto& end2 = last.field.phi2;
    const auto [lo, hi] = std::minmax_element(end1.begin(), end1.end());
    out.spatial_amplitude = end1.empty() ? 0.0 : *hi - *lo;

    if (out.window_snapshots < 2) return out;

    for (std::size_t s = first; s < snapshots.size(); ++s) {
        const auto& f = snapshots[s].field;
        for (std::size_t i = 0; i < f.size(); ++i) {
            out.temporal_amplitude = std::max(
                {out.temporal_amplitude, std::abs(f.phi1[i] - end1[i]), std::abs(f.phi2[i] - end2[i])});
            out.excursion = std::max({out.excursion, std::abs(f.phi1[i]), std::abs(f.phi2[i])});
        }
    }

    const bool stationary =
        out.temporal_amplitude < std::max(opts.theta_time, opts.theta_rel * out.excursion);
    const bool patterned = out.spatial_amplitude >= opts.theta_space;
    if (stationary) {
        out.variant = patterned ? AsymptoticVariant::TuringPattern : AsymptoticVariant::HomogeneousStationary;
    } else {
        out.variant = patterned ? AsymptoticVariant::InhomogeneousOscillatory
                                : AsymptoticVariant::HomogeneousOscillatory;
    }
    return out;
}

std::vector<double> cosine_coefficients(const std::vector<double>& profile, int max_index) {
    return project(profile, max_index, 2.0);
}

std::vector<double> half_wave_coefficients(const std::vector<double>& profile, int max_index) {
    return project(profile, max_index, 1.0);
}

SpectrumReport cosine_spectrum(const Field& field, int axis, std::size_t top) {
    validate(field.grid);
    const int max_index = field.grid.n_cells / 2;
    const auto p1 = axis_profile(field, axis);
    const auto p2 = profile_of(field.phi2, field.grid, axis);

    SpectrumReport r;
    r.c = cosine_coefficients(p1, max_index);
    r.d = cosine_coefficients(p2, max_index);
    r.half_wave = half_wave_coefficients(p1, field.grid.n_cells - 1);

    std::vector<int> order(static_cast<std::size_t>(max_index));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(r.c[static_cast<std::size_t>(a)]) > std::abs(r.c[static_cast<std::size_t>(b)]);
    });
    order.resize(std::min(order.size(), top));
    r.dominant = std::move(order);
    return r;
}

int count_spatial_periods(const Field& field, double theta_space) {
    validate(field.grid);
    if (field.grid.k != 1) throw ValidationError("period counting is defined for 1D fields only");

    const auto& phi = field.phi1;
    const auto [lo, hi] = std::minmax_element(phi.begin(), phi.end());
    if (*hi - *lo < theta_space) {
        throw ValidationError("field is spatially homogeneous; period count undefined");
    }

    const std::size_t n = phi.size();
    std::vector<double> smooth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double l = phi[i > 0 ? i - 1 : 0];
        const double r = phi[i + 1 < n ? i + 1 : n - 1];
        smooth[i] = 0.25 * (l + 2.0 * phi[i] + r);
    }
    const double mean = std::accumulate(smooth.begin(), smooth.end(), 0.0) / static_cast<double>(n);

    int changes = 0;
    int previous = 0;
    for (double x : smooth) {
        const double d = x - mean;
        const int sign = d > 1e-9 ? 1 : (d < -1e-9 ? -1 : 0);
        if (sign == 0) continue;
        if (previous != 0 && sign != previous) ++changes;
        previous = sign;
    }
    return (changes + 1) / 2;
}

}  // namespace rdt
