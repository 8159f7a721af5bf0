#include "rdturing/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <sstream>

#include "rdturing/errors.hpp"

namespace rdt {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

bool near_zero(double margin, double scale) {
    return std::abs(margin) <= kBoundaryTolerance * std::max(1.0, std::abs(scale));
}

// Each pair is (left - right, |left|) for one inequality of the criterion.
bool any_boundary(std::initializer_list<std::pair<double, double>> margins) {
    for (const auto& [m, s] : margins) {
        if (near_zero(m, s)) return true;
    }
    return false;
}

void require_nondegenerate(const Jacobian2x2& J0) {
    if (J0.det() == 0.0) {
        throw ValidationError("degenerate fixed point, theorems inapplicable (DetJ0 = 0)");
    }
}

bool is_perfect_square(std::int64_t q) {
    if (q < 0) return false;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q)));
    while (r * r > q) --r;
    while ((r + 1) * (r + 1) <= q) ++r;
    return r * r == q;
}

struct Windowed {
    ModeWindow window;
    std::vector<ModeIndex> witnesses;
    bool truncated = false;
    bool endpoint_hit = false;
};

Windowed search_window(double alpha, double root, const ThmParams& tp, int k) {
    Windowed w;
    const double scale = 2.0 * tp.eps * tp.delta;
    w.window = {(alpha - root) / scale, (alpha + root) / scale};
    w.witnesses = lattice_points_in_window(w.window, k, kMaxWitnesses, &w.truncated);
    for (double end : {w.window.lower, w.window.upper}) {
        const double nearest = std::round(end);
        if (nearest > 0.0 && near_zero(end - nearest, end) &&
            !representations(static_cast<std::int64_t>(nearest), k).empty()) {
            w.endpoint_hit = true;
        }
    }
    return w;
}

}  // namespace

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Instability: return "Instability";
        case Outcome::NoInstability: return "NoInstability";
        case Outcome::ConditionalWindowEmpty: return "ConditionalWindowEmpty";
    }
    return "?";
}

const char* to_string(ThmCase c) {
    switch (c) {
        case ThmCase::T22a: return "T22a";
        case ThmCase::T22b: return "T22b";
        case ThmCase::T22c: return "T22c";
        case ThmCase::T22d: return "T22d";
        case ThmCase::T22e: return "T22e";
        case ThmCase::T22f: return "T22f";
        case ThmCase::T23a: return "T23a";
        case ThmCase::T23b: return "T23b";
        case ThmCase::T23c: return "T23c";
        case ThmCase::T23d: return "T23d";
        case ThmCase::T23e: return "T23e";
        case ThmCase::None: return "None";
    }
    return "?";
}

const char* to_string(BrusselatorVerdict v) {
    switch (v) {
        case BrusselatorVerdict::NecessaryConditionHolds: return "NecessaryConditionHolds";
        case BrusselatorVerdict::Excluded: return "Excluded";
        case BrusselatorVerdict::Instability: return "Instability";
        case BrusselatorVerdict::NoInstability: return "NoInstability";
    }
    return "?";
}

ThmParams thm_params(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom) {
    validate(D);
    validate(dom);
    const double sum = D.D1 + D.D2;
    if (!(sum > 0.0)) throw ValidationError("D1 + D2 must be positive");
    ThmParams tp;
    tp.alpha = (J0.a11 * D.D2 + J0.a22 * D.D1) / sum;
    tp.delta = D.D1 * D.D2 / (sum * sum);
    tp.eps = 4.0 * std::numbers::pi * std::numbers::pi * sum / (dom.S * dom.S);
    return tp;
}

std::vector<ModeIndex> lattice_points_in_window(const ModeWindow& w, int k, std::size_t cap, bool* truncated) {
    std::vector<ModeIndex> out;
    if (truncated) *truncated = false;
    if (k < 1 || !(w.upper > 1.0) || !(w.upper > w.lower)) return out;

    const double first = std::max(1.0, std::floor(w.lower) + 1.0);
    auto accept = [&](std::int64_t q) {
        for (auto& m : representations(q, k)) {
            if (out.size() == cap) {
                if (truncated) *truncated = true;
                return false;
            }
            out.push_back(std::move(m));
        }
        return true;
    };

    if (k == 1) {
        auto n = static_cast<std::int64_t>(std::ceil(std::sqrt(first)));
        while (n > 1 && static_cast<double>((n - 1) * (n - 1)) >= first) --n;
        for (; static_cast<double>(n * n) < w.upper; ++n) {
            if (static_cast<double>(n * n) < first) continue;
            if (!accept(n * n)) break;
        }
        return out;
    }
    for (auto q = static_cast<std::int64_t>(first); static_cast<double>(q) < w.upper; ++q) {
        if (k == 2) {
            bool representable = false;
            for (std::int64_t a = 0; 2 * a * a <= q; ++a) {
                if (is_perfect_square(q - a * a)) {
                    representable = true;
                    break;
                }
            }
            if (!representable) continue;
        }
        if (!accept(q)) break;
    }
    return out;
}

CaseFlags22 thm22_case_flags(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom) {
    const ThmParams tp = thm_params(J0, D, dom);
    const double al = tp.alpha, de = tp.delta, tr = J0.trace(), det = J0.det();
    CaseFlags22 f;
    f.a = al <= 0.0 && de > 0.0 && tr <= 0.0 && det < 0.0;
    f.b = al <= 0.0 && de > 0.0 && tr > 0.0 && 4.0 * det <= tr * tr;
    f.c = al > 0.0 && de > 0.0 && tr <= 0.0 && det < 0.0;
    f.d = al > 0.0 && de > 0.0 && tr > 0.0 && 4.0 * det <= tr * tr;
    f.e = al > 0.0 && de > 0.0 && tr <= 0.0 && 0.0 < det && det < al * al / (4.0 * de);
    f.f = al > 0.0 && de > 0.0 && 0.0 < tr && tr <= al / (2.0 * de) && tr * tr < 4.0 * det &&
          4.0 * det < al * al / de - 2.0 * tr;
    return f;
}

TuringVerdict classify_thm22(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom) {
    validate(D);
    if (!(D.D1 > 0.0 && D.D2 > 0.0)) {
        throw ValidationError("the two-diffusivity criterion requires D1 > 0 and D2 > 0; use the one-zero criterion");
    }
    require_nondegenerate(J0);

    const ThmParams tp = thm_params(J0, D, dom);
    const CaseFlags22 flags = thm22_case_flags(J0, D, dom);
    const double al = tp.alpha, de = tp.delta, tr = J0.trace(), det = J0.det();

    TuringVerdict v;
    v.boundary = any_boundary({{al, al},
                               {tr, tr},
                               {det, det},
                               {4.0 * det - tr * tr, tr * tr},
                               {det - al * al / (4.0 * de), det},
                               {tr - al / (2.0 * de), tr},
                               {4.0 * det - (al * al / de - 2.0 * tr), 4.0 * det}});

    auto sufficient_case = [&](ThmCase c, bool zero_mode) {
        v.outcome = Outcome::Instability;
        v.case_fired = c;
        v.sufficient = true;
        v.zero_mode_unstable = zero_mode;
    };

    if (flags.a) {
        sufficient_case(ThmCase::T22a, true);
    } else if (flags.b) {
        sufficient_case(ThmCase::T22b, true);
    } else if (flags.c) {
        // Det < 0 makes the zero mode unstable with a real eigenvalue.
        sufficient_case(ThmCase::T22c, true);
    } else if (flags.d) {
        sufficient_case(ThmCase::T22d, true);
    } else if (flags.e || flags.f) {
        const double root = flags.e ? std::sqrt(al * al - 4.0 * de * det)
                                    : std::sqrt(al * al - 4.0 * de * det - 2.0 * de * tr);
        Windowed w = search_window(al, root, tp, dom.k);
        v.case_fired = flags.e ? ThmCase::T22e : ThmCase::T22f;
        v.window = w.window;
        v.witnesses = std::move(w.witnesses);
        v.witnesses_truncated = w.truncated;
        v.boundary = v.boundary || w.endpoint_hit;
        v.outcome = v.witnesses.empty() ? Outcome::ConditionalWindowEmpty : Outcome::Instability;
        v.sufficient = flags.e && !v.witnesses.empty();
    }
    return v;
}

TuringVerdict classify_thm23(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom) {
    validate(D);
    validate(dom);
    if ((D.D1 == 0.0) == (D.D2 == 0.0)) {
        throw ValidationError("the one-zero criterion requires exactly one of D1, D2 to be zero");
    }
    require_nondegenerate(J0);

    const double al = D.D1 == 0.0 ? J0.a11 : J0.a22;
    const double tr = J0.trace(), det = J0.det();
    const double line = det - al * tr;

    TuringVerdict v;
    v.boundary = any_boundary({{al, al},
                               {tr, tr},
                               {det, det},
                               {line + al * al, line},
                               {4.0 * det - tr * tr, tr * tr},
                               {tr - 2.0 * al, tr}});

    auto fire = [&](ThmCase c) {
        v.outcome = Outcome::Instability;
        v.case_fired = c;
        v.sufficient = true;
        v.infinite_order = c == ThmCase::T23d;
        v.zero_mode_unstable = c != ThmCase::T23d;
    };

    if (al <= 0.0 && tr <= 0.0 && det < 0.0) {
        fire(ThmCase::T23a);
    } else if (al <= 0.0 && tr > 0.0 && 4.0 * det <= tr * tr) {
        fire(ThmCase::T23b);
    } else if (al > 0.0 && line <= -al * al) {
        fire(ThmCase::T23c);
    } else if (al > 0.0 && line > -al * al && 4.0 * det > tr * tr && tr < 2.0 * al) {
        fire(ThmCase::T23d);
    } else if (al > 0.0 && line > -al * al && 4.0 * det <= tr * tr) {
        fire(ThmCase::T23e);
    }
    return v;
}

TuringVerdict classify_turing(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom) {
    validate(D);
    if (D.D1 > 0.0 && D.D2 > 0.0) return classify_thm22(J0, D, dom);
    return classify_thm23(J0, D, dom);
}

BrusselatorConditions brusselator_conditions(const BrusselatorParams& p, const DiffusionPair& D,
                                             const DomainSpec& dom) {
    Brusselator model(p);
    validate(D);
    validate(dom);
    if (!(D.D1 + D.D2 > 0.0)) throw ValidationError("D1 + D2 must be positive");

    const double B = p.B;
    const double base = p.k4 / p.k2;
    const double c = p.A * p.A * p.k1 * p.k1 * p.k3 / (p.k4 * p.k4);
    const double g = c / p.k2;
    const double h = 2.0 * std::sqrt(p.k4 * c) / p.k2;  // 2 sqrt(DetJ0) / k2

    BrusselatorConditions out;
    const bool both_positive = D.D1 > 0.0 && D.D2 > 0.0;
    if (both_positive) {
        const double r = D.D1 / D.D2;
        out.case_b = B <= base + g * r && B > base + g && B >= base + g + h;
        out.case_d = B > base + g * r && B >= base + g + h;
        out.case_e = B <= base + g && B > base + g * r + h * std::sqrt(r);
        out.case_f = D.D1 <= D.D2 && B > base + g && B < base + g + h &&
                   B > base + g * r + r / p.k2 +
                           std::sqrt(2.0 * g * r + 2.0 * g * r * r + r * r / (p.k2 * p.k2));
        const bool any = out.case_b || out.case_d || out.case_e || out.case_f;
        out.verdict = any ? BrusselatorVerdict::NecessaryConditionHolds : BrusselatorVerdict::Excluded;
    } else {
        out.d2_zero = D.D1 > 0.0 && D.D2 == 0.0 && B >= base + g + h;
        out.d1_zero = D.D1 == 0.0 && D.D2 > 0.0 && B > base;
        out.verdict =
            (out.d2_zero || out.d1_zero) ? BrusselatorVerdict::Instability : BrusselatorVerdict::NoInstability;
    }
    return out;
}

NormalFormConditions normal_form_conditions(const NormalFormParams& p, const DiffusionPair& D,
                                            const DomainSpec& dom) {
    NormalForm model(p);
    validate(D);
    validate(dom);
    NormalFormConditions out;
    if (!(p.nu > 0.0)) return out;
    const bool both_positive = D.D1 > 0.0 && D.D2 > 0.0;
    if (both_positive) {
        const double diff = D.D1 - D.D2;
        out.i = p.beta == 0.0;
        out.ii = p.beta != 0.0 && p.beta * p.beta < p.nu * p.nu * diff * diff / (4.0 * D.D1 * D.D2) - p.nu;
    }
    out.iii = D.D1 == 0.0 && D.D2 > 0.0;
    out.iv = D.D1 > 0.0 && D.D2 == 0.0;
    return out;
}

CrossValidation cross_validate(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom) {
    CrossValidation cv;
    cv.thm = classify_turing(J0, D, dom);
    cv.oracle = scan_spectrum(J0, D, dom);

    const SpectralClass oc = cv.oracle.classification;
    const bool oracle_turing =
        oc == SpectralClass::TuringInstability || oc == SpectralClass::TuringInstabilityInfiniteOrder;
    std::ostringstream why;

    if (D.D1 > 0.0 && D.D2 > 0.0) {
        cv.agree = true;
        if (cv.thm.sufficient && !oracle_turing) {
            cv.agree = false;
            why << "sufficient case " << to_string(cv.thm.case_fired) << " fired but oracle is " << to_string(oc);
        } else if (oracle_turing && cv.thm.case_fired == ThmCase::None) {
            cv.agree = false;
            why << "oracle finds a Turing instability but no case fires";
        } else if (cv.thm.outcome == Outcome::ConditionalWindowEmpty && oracle_turing) {
            cv.agree = false;
            why << "window of " << to_string(cv.thm.case_fired) << " is empty but oracle is " << to_string(oc);
        }
    } else {
        const bool thm_unstable = cv.thm.outcome == Outcome::Instability;
        cv.agree = thm_unstable == oracle_turing;
        if (!cv.agree) {
            why << "criterion says " << to_string(cv.thm.outcome) << " but oracle is " << to_string(oc);
        } else if (thm_unstable) {
            const bool oracle_infinite = oc == SpectralClass::TuringInstabilityInfiniteOrder;
            if (oracle_infinite != cv.thm.infinite_order) {
                why << "order differs: case " << to_string(cv.thm.case_fired) << " vs oracle " << to_string(oc);
            }
        }
    }
    cv.detail = why.str();
    return cv;
}

}  // namespace rdt
