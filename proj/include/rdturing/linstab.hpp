#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rdturing/model.hpp"

namespace rdt {

/// k-dimensional cube [0, S]^k.
struct DomainSpec {
    int k = 1;
    double S = 1.0;
};

struct DiffusionPair {
    double D1 = 0.0;
    double D2 = 0.0;
};

void validate(const DomainSpec& dom);
void validate(const DiffusionPair& D);

/// Cosine eigenmode label (n1, ..., nk). Modes are ordered by norm2 = sum n_i^2.
struct ModeIndex {
    std::vector<int> indices;

    std::int64_t norm2() const;
    std::string to_string() const;  // "4 9"

    friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

struct ModeSpectrumEntry {
    ModeIndex mode;
    double trace = 0.0;
    double det = 0.0;
    std::complex<double> lambda_plus;
    std::complex<double> lambda_minus;

    bool is_real() const { return lambda_plus.imag() == 0.0; }
};

enum class SpectralClass { Stable, TuringInstability, OscillatoryInstability, TuringInstabilityInfiniteOrder };

const char* to_string(SpectralClass c);

/// How far the mode scan goes.
///
/// Analytic: for D1, D2 > 0 every norm2 up to the scaled-Gershgorin cutoff,
/// beyond which no mode can beat either 0 or the best mode found. With one zero
/// diffusivity the scan stops where lambda+ becomes monotone toward its limit.
/// Fixed: every norm2 up to `max_norm2` (diagnostics only, no guarantee).
struct CutoffPolicy {
    enum class Kind { Analytic, Fixed };
    Kind kind = Kind::Analytic;
    std::int64_t max_norm2 = 0;
    bool keep_entries = false;

    static CutoffPolicy analytic(bool keep_entries = false) { return {Kind::Analytic, 0, keep_entries}; }
    static CutoffPolicy fixed(std::int64_t max_norm2, bool keep_entries = true) {
        return {Kind::Fixed, max_norm2, keep_entries};
    }
};

struct ScanResult {
    double capital_lambda = 0.0;
    std::vector<ModeIndex> argmax_modes;
    SpectralClass classification = SpectralClass::Stable;
    std::int64_t scanned_norm2_max = 0;
    std::vector<ModeSpectrumEntry> entries;  // filled only when requested

    /// Distinct norm2 values among argmax_modes, ascending.
    std::vector<std::int64_t> argmax_norm2() const;
};

/// Trace and determinant of J_n for a mode with the given norm2.
std::pair<double, double> mode_trace_det(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom,
                                         std::int64_t norm2);

/// Roots of lambda^2 - trace*lambda + det; lambda_plus carries the + branch.
std::pair<std::complex<double>, std::complex<double>> mode_eigenvalues(double trace, double det);

/// Real part of the dominant eigenvalue as a function on the (trace, det) plane.
double growth_function(double x, double y);

/// Continuous trace-determinant curve through the zero mode:
/// y(x) = DetJ0 + alpha (x - TrJ0) + delta (x - TrJ0)^2, x <= TrJ0.
double trace_det_parabola(const Jacobian2x2& J0, const DiffusionPair& D, double x);

/// Every k-tuple of non-negative integers with sum of squares equal to q.
std::vector<ModeIndex> representations(std::int64_t q, int k);

/// Visits every representable norm2 <= max_norm2 in ascending order together
/// with all tuples that realise it.
void for_each_norm2(int k, std::int64_t max_norm2,
                    const std::function<void(std::int64_t, const std::vector<ModeIndex>&)>& visit);

/// The cutoff the analytic policy would use for these inputs.
std::int64_t analytic_cutoff(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom);

ScanResult scan_spectrum(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom,
                         const CutoffPolicy& cutoff = CutoffPolicy::analytic());

/// norm2 values (within the analytic cutoff) whose lambda+ is real and positive.
std::vector<std::int64_t> unstable_real_mode_range(const Jacobian2x2& J0, const DiffusionPair& D,
                                                   const DomainSpec& dom);

/// CSV dump of a scan's entries grouped by norm2:
/// norm2,n_indices,trace,det,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus
std::string dispersion_csv(const ScanResult& scan);

}  // namespace rdt
