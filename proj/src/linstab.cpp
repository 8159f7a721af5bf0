#include "rdturing/linstab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "rdturing/errors.hpp"

namespace rdt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTolerance = 1e-12;

bool is_complex_branch(double x, double y) { return x * x < 4.0 * y; }

// Larger root of lambda^2 - x lambda + y = 0 on the real branch, evaluated
// without cancellation: the root of larger magnitude first, the other from
// the product.
std::pair<double, double> real_roots(double x, double y) {
    const double s = std::sqrt(std::max(0.0, x * x - 4.0 * y));
    if (x >= 0.0) {
        const double plus = 0.5 * (x + s);
        const double minus = plus != 0.0 ? y / plus : 0.0;
        return {plus, minus};
    }
    const double minus = 0.5 * (x - s);
    const double plus = y / minus;
    return {plus, minus};
}

std::int64_t isqrt(std::int64_t q) {
    if (q <= 0) return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q)));
    while (r * r > q) --r;
    while ((r + 1) * (r + 1) <= q) ++r;
    return r;
}

void mark_representable(int k, std::int64_t remaining, std::int64_t partial, std::vector<char>& out) {
    if (k == 0) {
        out[static_cast<std::size_t>(partial)] = 1;
        return;
    }
    const std::int64_t top = isqrt(remaining);
    for (std::int64_t n = 0; n <= top; ++n) {
        mark_representable(k - 1, remaining - n * n, partial + n * n, out);
    }
}

std::vector<char> representable_norms(int k, std::int64_t max_norm2) {
    std::vector<char> rep(static_cast<std::size_t>(max_norm2) + 1, 0);
    const std::int64_t top = isqrt(max_norm2);
    if (k == 1) {
        for (std::int64_t n = 0; n <= top; ++n) rep[static_cast<std::size_t>(n * n)] = 1;
    } else if (k == 2) {
        for (std::int64_t n1 = 0; n1 <= top; ++n1) {
            for (std::int64_t n2 = 0; n2 <= top; ++n2) {
                const std::int64_t q = n1 * n1 + n2 * n2;
                if (q <= max_norm2) rep[static_cast<std::size_t>(q)] = 1;
            }
        }
    } else {
        mark_representable(k, max_norm2, 0, rep);
    }
    return rep;
}

void collect_representations(std::int64_t remaining, int slots, std::vector<int>& prefix,
                             std::vector<ModeIndex>& out) {
    if (slots == 1) {
        const std::int64_t r = isqrt(remaining);
        if (r * r == remaining) {
            prefix.push_back(static_cast<int>(r));
            out.push_back(ModeIndex{prefix});
            prefix.pop_back();
        }
        return;
    }
    const std::int64_t top = isqrt(remaining);
    for (std::int64_t n = 0; n <= top; ++n) {
        prefix.push_back(static_cast<int>(n));
        collect_representations(remaining - n * n, slots - 1, prefix, out);
        prefix.pop_back();
    }
}

void check_scan_inputs(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom) {
    validate(dom);
    validate(D);
    if (D.D1 == 0.0 && D.D2 == 0.0) {
        throw ValidationError("mode analysis requires D1 + D2 > 0");
    }
    if (J0.det() == 0.0) {
        throw ValidationError("degenerate fixed point, theorems inapplicable (DetJ0 = 0)");
    }
}

std::int64_t ceil_to_norm2(double value) {
    if (!(value > 0.0)) return 1;
    constexpr double kCap = 4.0e9;
    if (value > kCap) {
        throw ValidationError("mode cutoff exceeds the supported range; diffusivities too small for this domain");
    }
    return static_cast<std::int64_t>(std::ceil(value)) + 1;
}

// Value of D1 or D2 that is nonzero when exactly one of them vanishes, and
// the limit alpha of lambda+ as norm2 -> infinity.
struct OneZeroLimit {
    double d_nonzero;
    double alpha;
};

OneZeroLimit one_zero_limit(const Jacobian2x2& J0, const DiffusionPair& D) {
    if (D.D1 == 0.0) return {D.D2, J0.a11};
    return {D.D1, J0.a22};
}

}  // namespace

void validate(const DomainSpec& dom) {
    if (dom.k < 1) throw ValidationError("spatial dimension k must be >= 1");
    if (!(dom.S > 0.0) || !std::isfinite(dom.S)) throw ValidationError("side length S must be positive");
}

void validate(const DiffusionPair& D) {
    if (!(D.D1 >= 0.0) || !(D.D2 >= 0.0) || !std::isfinite(D.D1) || !std::isfinite(D.D2)) {
        throw ValidationError("diffusion coefficients must be finite and non-negative");
    }
}

std::int64_t ModeIndex::norm2() const {
    std::int64_t q = 0;
    for (int n : indices) q += static_cast<std::int64_t>(n) * n;
    return q;
}

std::string ModeIndex::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(indices[i]);
    }
    return out;
}

const char* to_string(SpectralClass c) {
    switch (c) {
        case SpectralClass::Stable: return "Stable";
        case SpectralClass::TuringInstability: return "TuringInstability";
        case SpectralClass::OscillatoryInstability: return "OscillatoryInstability";
        case SpectralClass::TuringInstabilityInfiniteOrder: return "TuringInstabilityInfiniteOrder";
    }
    return "?";
}

std::vector<std::int64_t> ScanResult::argmax_norm2() const {
    std::vector<std::int64_t> out;
    for (const auto& m : argmax_modes) out.push_back(m.norm2());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::pair<double, double> mode_trace_det(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom,
                                         std::int64_t norm2) {
    const double q = static_cast<double>(norm2);
    const double wave = 4.0 * kPi * kPi * q / (dom.S * dom.S);
    const double trace = J0.trace() - (D.D1 + D.D2) * wave;
    const double det = J0.det() - (J0.a11 * D.D2 + J0.a22 * D.D1) * wave + D.D1 * D.D2 * wave * wave;
    return {trace, det};
}

std::pair<std::complex<double>, std::complex<double>> mode_eigenvalues(double trace, double det) {
    if (is_complex_branch(trace, det)) {
        const double im = 0.5 * std::sqrt(4.0 * det - trace * trace);
        return {{0.5 * trace, im}, {0.5 * trace, -im}};
    }
    const auto [plus, minus] = real_roots(trace, det);
    return {{plus, 0.0}, {minus, 0.0}};
}

double growth_function(double x, double y) {
    if (is_complex_branch(x, y)) return 0.5 * x;
    return real_roots(x, y).first;
}

double trace_det_parabola(const Jacobian2x2& J0, const DiffusionPair& D, double x) {
    const double sum = D.D1 + D.D2;
    const double alpha = (J0.a11 * D.D2 + J0.a22 * D.D1) / sum;
    const double delta = D.D1 * D.D2 / (sum * sum);
    const double dx = x - J0.trace();
    return J0.det() + alpha * dx + delta * dx * dx;
}

std::vector<ModeIndex> representations(std::int64_t q, int k) {
    std::vector<ModeIndex> out;
    if (q < 0 || k < 1) return out;
    std::vector<int> prefix;
    collect_representations(q, k, prefix, out);
    return out;
}

void for_each_norm2(int k, std::int64_t max_norm2,
                    const std::function<void(std::int64_t, const std::vector<ModeIndex>&)>& visit) {
    const auto rep = representable_norms(k, max_norm2);
    for (std::int64_t q = 0; q <= max_norm2; ++q) {
        if (rep[static_cast<std::size_t>(q)]) visit(q, representations(q, k));
    }
}

std::int64_t analytic_cutoff(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom) {
    const double scale = dom.S * dom.S / (4.0 * kPi * kPi);
    const double coupling = std::sqrt(std::abs(J0.a12 * J0.a21));
    if (D.D1 > 0.0 && D.D2 > 0.0) {
        // Scaled Gershgorin: Re(lambda) <= max(a11 - D1 w, a22 - D2 w) + sqrt|a12 a21|.
        const double best_zero = growth_function(J0.trace(), J0.det());
        const double bound = std::max(0.0, std::max(J0.a11, J0.a22) + coupling + std::abs(best_zero));
        return ceil_to_norm2(scale * bound / std::min(D.D1, D.D2));
    }
    const auto lim = one_zero_limit(J0, D);
    const double bound = std::abs(J0.a11 - J0.a22) + 2.0 * coupling + 2.0 * std::abs(lim.alpha) + 1.0;
    return ceil_to_norm2(scale * bound / lim.d_nonzero);
}

ScanResult scan_spectrum(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom,
                         const CutoffPolicy& cutoff) {
    check_scan_inputs(J0, D, dom);

    ScanResult result;
    result.scanned_norm2_max =
        cutoff.kind == CutoffPolicy::Kind::Fixed ? std::max<std::int64_t>(0, cutoff.max_norm2)
                                                 : analytic_cutoff(J0, D, dom);

    const auto rep = representable_norms(dom.k, result.scanned_norm2_max);

    struct NormValue {
        std::int64_t q;
        double growth;
        bool real;
    };
    std::vector<NormValue> values;
    double best = -std::numeric_limits<double>::infinity();
    for (std::int64_t q = 0; q <= result.scanned_norm2_max; ++q) {
        if (!rep[static_cast<std::size_t>(q)]) continue;
        const auto [tr, det] = mode_trace_det(J0, D, dom, q);
        const auto [lp, lm] = mode_eigenvalues(tr, det);
        values.push_back({q, lp.real(), lp.imag() == 0.0});
        best = std::max(best, lp.real());
        if (cutoff.keep_entries) {
            for (auto& mode : representations(q, dom.k)) {
                result.entries.push_back({std::move(mode), tr, det, lp, lm});
            }
        }
    }

    if (D.D1 == 0.0 || D.D2 == 0.0) {
        const auto lim = one_zero_limit(J0, D);
        const bool approaches_from_below = J0.a12 * J0.a21 < 0.0;
        if (approaches_from_below && lim.alpha > 0.0 && lim.alpha > best + kTieTolerance) {
            result.capital_lambda = lim.alpha;
            result.classification = SpectralClass::TuringInstabilityInfiniteOrder;
            return result;
        }
    }

    result.capital_lambda = best;
    bool attained_by_real = false;
    for (const auto& v : values) {
        if (std::abs(v.growth - best) > kTieTolerance) continue;
        attained_by_real = attained_by_real || v.real;
        for (auto& mode : representations(v.q, dom.k)) result.argmax_modes.push_back(std::move(mode));
    }

    if (best <= 0.0) {
        result.classification = SpectralClass::Stable;
    } else if (attained_by_real) {
        result.classification = SpectralClass::TuringInstability;
    } else {
        result.classification = SpectralClass::OscillatoryInstability;
    }
    return result;
}

std::vector<std::int64_t> unstable_real_mode_range(const Jacobian2x2& J0, const DiffusionPair& D,
                                                   const DomainSpec& dom) {
    check_scan_inputs(J0, D, dom);
    const std::int64_t top = analytic_cutoff(J0, D, dom);
    const auto rep = representable_norms(dom.k, top);
    std::vector<std::int64_t> out;
    for (std::int64_t q = 0; q <= top; ++q) {
        if (!rep[static_cast<std::size_t>(q)]) continue;
        const auto [tr, det] = mode_trace_det(J0, D, dom, q);
        const auto lp = mode_eigenvalues(tr, det).first;
        if (lp.imag() == 0.0 && lp.real() > 0.0) out.push_back(q);
    }
    return out;
}

std::string dispersion_csv(const ScanResult& scan) {
    std::ostringstream os;
    os << "norm2,n_indices,trace,det,re_lambda_plus,im_lambda_plus,re_lambda_minus,im_lambda_minus\n";
    os << std::setprecision(12);
    std::size_t i = 0;
    const auto& e = scan.entries;
    while (i < e.size()) {
        const std::int64_t q = e[i].mode.norm2();
        std::string labels;
        std::size_t j = i;
        for (; j < e.size() && e[j].mode.norm2() == q; ++j) {
            if (j > i) labels += ';';
            labels += e[j].mode.to_string();
        }
        const auto& row = e[i];
        os << q << ',' << labels << ',' << row.trace << ',' << row.det << ',' << row.lambda_plus.real() << ','
           << row.lambda_plus.imag() << ',' << row.lambda_minus.real() << ',' << row.lambda_minus.imag() << '\n';
        i = j;
    }
    return os.str();
}

}  // namespace rdt
