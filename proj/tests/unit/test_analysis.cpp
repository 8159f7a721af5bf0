#include <doctest.h>

#include <cmath>
#include <random>

#include "../common/measure.hpp"
#include "rdturing/analysis.hpp"
#include "rdturing/errors.hpp"

using namespace rdt;
using rdt::testing::kPi;

namespace {

Field profile_field(const std::vector<double>& phi1) {
    Field f = Field::zeros({1, static_cast<int>(phi1.size()), 0.1});
    f.phi1 = phi1;
    return f;
}

std::vector<double> cosine(int N, double m, double amp = 1.0) {
    std::vector<double> v(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) v[static_cast<std::size_t>(i)] = amp * std::cos(2.0 * kPi * m * (i + 0.5) / N);
    return v;
}

// Snapshots at t = 0..n-1 of phi1(x, t) = f(i, t).
template <class F>
std::vector<Snapshot> synthetic_run(int N, int n, F f) {
    std::vector<Snapshot> out;
    for (int s = 0; s < n; ++s) {
        Snapshot snap{s, static_cast<double>(s), Field::zeros({1, N, 0.1})};
        for (int i = 0; i < N; ++i) snap.field.phi1[static_cast<std::size_t>(i)] = f(i, static_cast<double>(s));
        out.push_back(std::move(snap));
    }
    return out;
}

AsymptoticVariant desk_run(const Model& model, const DiffusionPair& D, bool cycle, std::uint64_t seed,
                           double t_end = 300.0) {
    const int N = 100;
    const double S = derive_grid(250, 0.001, std::max(D.D1, D.D2)).S;
    const GridSpec g{1, N, S / N};
    // Same step rule as sweep points: the kinetics near the cycle need dt <= 0.001.
    const double dt = std::min(0.001, kDefaultStabilityRatio * g.dx * g.dx / std::max(D.D1, D.D2));
    const auto steps = static_cast<std::int64_t>(std::llround(t_end / dt));
    const Field init = cycle ? limit_cycle_ic(model, g, 0.01, seed) : random_ic(g, 0.01, seed);
    return classify_asymptotic(integrate(init, model, D, {dt, steps, steps / 100}).snapshots).variant;
}

}  // namespace

TEST_SUITE("analysis") {
    TEST_CASE("cosine projection is orthogonal at cell centres") {
        const int N = 200;
        for (int m : {1, 7, 25, 50}) {
            const auto c = cosine_coefficients(cosine(N, m, 2.5), N / 4);
            for (int n = 0; n <= N / 4; ++n) {
                if (n == m) {
                    CHECK(std::abs(c[static_cast<std::size_t>(n)] - 2.5) <= 1e-9);
                } else {
                    CHECK(std::abs(c[static_cast<std::size_t>(n)]) <= 1e-9);
                }
            }
        }
    }

    TEST_CASE("synthesized spectra are recovered") {
        const int N = 160;
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        std::uniform_int_distribution<int> idx(0, N / 4);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> want(static_cast<std::size_t>(N / 4 + 1), 0.0);
            for (int j = 0; j < 6; ++j) want[static_cast<std::size_t>(idx(rng))] = amp(rng);
            std::vector<double> v(static_cast<std::size_t>(N), want[0]);
            for (int n = 1; n <= N / 4; ++n) {
                const auto mode = cosine(N, n, want[static_cast<std::size_t>(n)]);
                for (int i = 0; i < N; ++i) v[static_cast<std::size_t>(i)] += mode[static_cast<std::size_t>(i)];
            }
            const auto got = cosine_coefficients(v, N / 4);
            for (std::size_t n = 0; n < want.size(); ++n) CHECK(std::abs(got[n] - want[n]) <= 1e-9);
        }
    }

    TEST_CASE("spectrum of simple fields") {
        const auto flat = cosine_spectrum(profile_field(std::vector<double>(64, 0.75)));
        CHECK(flat.c[0] == doctest::Approx(0.75));
        for (std::size_t n = 1; n < flat.c.size(); ++n) CHECK(std::abs(flat.c[n]) <= 1e-12);
        CHECK(flat.c.size() == 33);

        const auto seven = cosine_spectrum(profile_field(cosine(250, 7)));
        REQUIRE(!seven.dominant.empty());
        CHECK(seven.dominant.front() == 7);
        CHECK(seven.dominant.size() == 10);
        REQUIRE(seven.half_wave.size() > 14);
        CHECK(std::abs(seven.half_wave[14] - 1.0) <= 1e-9);  // cos(2 pi 7 x / S) = cos(pi 14 x / S)
    }

    TEST_CASE("2D spectra use axis means") {
        const int N = 32;
        Field f = Field::zeros({2, N, 0.1});
        const auto col = cosine(N, 3), row = cosine(N, 5);
        for (int r = 0; r < N; ++r) {
            for (int c = 0; c < N; ++c) {
                f.phi1[static_cast<std::size_t>(r * N + c)] = col[static_cast<std::size_t>(c)] + row[static_cast<std::size_t>(r)];
            }
        }
        CHECK(cosine_spectrum(f, 0).dominant.front() == 3);
        CHECK(cosine_spectrum(f, 1).dominant.front() == 5);
    }

    TEST_CASE("period count of pure cosines") {
        const int N = 250;
        for (int m = 1; m <= N / 8; ++m) CHECK(count_spatial_periods(profile_field(cosine(N, m))) == m);
    }

    TEST_CASE("period count tolerates small noise") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> noise(-1.0, 1.0);
        auto v = cosine(250, 10);
        for (double& x : v) x += 0.01 * noise(rng);
        CHECK(count_spatial_periods(profile_field(v)) == 10);
    }

    TEST_CASE("period count rejects homogeneous and 2D fields") {
        CHECK_THROWS_AS(count_spatial_periods(profile_field(std::vector<double>(50, 2.0))), ValidationError);
        CHECK_THROWS_AS(count_spatial_periods(profile_field(cosine(50, 2, 1e-4))), ValidationError);
        CHECK_THROWS_AS(count_spatial_periods(Field::zeros({2, 8, 0.1})), ValidationError);
    }

    TEST_CASE("classification quadrants") {
        ClassifyOptions strict;
        strict.theta_rel = 0.0;
        strict.window_fraction = 0.5;
        const int N = 40;
        const auto pattern = synthetic_run(N, 21, [&](int i, double) { return std::cos(2 * kPi * 3 * (i + 0.5) / N); });
        const auto flat = synthetic_run(N, 21, [](int, double) { return 1e-6; });
        const auto hom_osc = synthetic_run(N, 21, [](int, double t) { return std::sin(t); });
        const auto inh_osc =
            synthetic_run(N, 21, [&](int i, double t) { return std::sin(t) * std::cos(2 * kPi * (i + 0.5) / N); });

        auto r = classify_asymptotic(pattern, strict);
        CHECK(r.variant == AsymptoticVariant::TuringPattern);
        CHECK(r.temporal_amplitude == 0.0);
        CHECK(r.spatial_amplitude == doctest::Approx(2.0).epsilon(0.01));
        CHECK(r.window_snapshots == 11);
        CHECK(classify_asymptotic(flat, strict).variant == AsymptoticVariant::HomogeneousStationary);
        r = classify_asymptotic(hom_osc, strict);
        CHECK(r.variant == AsymptoticVariant::HomogeneousOscillatory);
        CHECK(r.spatial_amplitude == 0.0);
        CHECK(classify_asymptotic(inh_osc, strict).variant == AsymptoticVariant::InhomogeneousOscillatory);

        // Every combination of amplitudes lands in exactly one non-Undecided class.
        for (double ta : {0.0, 1e-4, 1e-2, 1.0}) {
            for (double sa : {0.0, 1e-4, 1e-2, 1.0}) {
                const auto run = synthetic_run(N, 21, [&](int i, double t) {
                    return 0.5 * ta * std::sin(t) + sa * std::cos(2 * kPi * (i + 0.5) / N);
                });
                const auto v = classify_asymptotic(run, strict).variant;
                CHECK(v != AsymptoticVariant::Undecided);
            }
        }
    }

    TEST_CASE("relative threshold admits slow drift of a large pattern") {
        const int N = 40;
        const auto drifting =
            synthetic_run(N, 21, [&](int i, double t) { return 5.0 * std::cos(2 * kPi * 3 * (i + 0.5) / N) + 1e-2 * t; });
        ClassifyOptions strict;
        strict.theta_rel = 0.0;
        CHECK(classify_asymptotic(drifting, strict).variant == AsymptoticVariant::InhomogeneousOscillatory);
        CHECK(classify_asymptotic(drifting).variant == AsymptoticVariant::TuringPattern);
    }

    TEST_CASE("too few window snapshots is Undecided") {
        const auto two = synthetic_run(10, 2, [](int, double) { return 0.0; });
        CHECK(classify_asymptotic(two).variant == AsymptoticVariant::Undecided);  // window holds only t = 1
        CHECK(classify_asymptotic({}).variant == AsymptoticVariant::Undecided);
        ClassifyOptions wide;
        wide.window_fraction = 1.0;
        CHECK(classify_asymptotic(two, wide).variant == AsymptoticVariant::HomogeneousStationary);
    }

    TEST_CASE("patterned Brusselator point is TuringPattern for five seeds") {
        const Model m = Brusselator({2.0, 15.0, 1.0, 1.0, 1.0, 1.0});
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            CHECK(desk_run(m, {0.1, 1.0}, false, seed) == AsymptoticVariant::TuringPattern);
        }
    }

    TEST_CASE("desk-scale examples") {
        const Model p = Brusselator({2.0, 15.0, 1.0, 1.0, 1.0, 1.0});
        CHECK(desk_run(p, {0.1, 1.0}, true, 1) == AsymptoticVariant::HomogeneousOscillatory);
        const Model b4 = Brusselator({2.0, 4.0, 1.0, 1.0, 1.0, 1.0});
        CHECK(desk_run(b4, {1.0, 1.0}, false, 1) == AsymptoticVariant::HomogeneousStationary);
    }
}
