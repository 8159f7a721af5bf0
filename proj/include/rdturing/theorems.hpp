#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rdturing/linstab.hpp"
#include "rdturing/model.hpp"

namespace rdt {

/// Scalars that parametrise the trace-determinant curve of the mode family.
struct ThmParams {
    double alpha = 0.0;  // (a11 D2 + a22 D1) / (D1 + D2)
    double delta = 0.0;  // D1 D2 / (D1 + D2)^2, in [0, 1/4]
    double eps = 0.0;    // 4 pi^2 (D1 + D2) / S^2
};

ThmParams thm_params(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom);

enum class Outcome { Instability, NoInstability, ConditionalWindowEmpty };

enum class ThmCase { T22a, T22b, T22c, T22d, T22e, T22f, T23a, T23b, T23c, T23d, T23e, None };

const char* to_string(Outcome o);
const char* to_string(ThmCase c);

/// Open interval on sum p_i^2 that any positive-order unstable mode must fall in.
struct ModeWindow {
    double lower = 0.0;
    double upper = 0.0;
};

struct TuringVerdict {
    Outcome outcome = Outcome::NoInstability;
    ThmCase case_fired = ThmCase::None;
    std::optional<ModeWindow> window;
    std::vector<ModeIndex> witnesses;  // smallest norm2 first
    bool witnesses_truncated = false;
    bool infinite_order = false;
    bool zero_mode_unstable = false;
    /// True when the fired case guarantees an instability on its own. Cases
    /// a) to d), e) with witnesses, and every case of the one-zero theorem.
    bool sufficient = false;
    /// Some inequality of the criterion sits within 1e-12 of equality.
    bool boundary = false;
};

/// Maximum number of witness tuples kept in a verdict.
inline constexpr std::size_t kMaxWitnesses = 256;

/// Each case of the two-diffusivity criterion evaluated on its own, so the
/// cases can be checked for mutual exclusivity.
struct CaseFlags22 {
    bool a = false, b = false, c = false, d = false, e = false, f = false;

    int count() const { return int(a) + int(b) + int(c) + int(d) + int(e) + int(f); }
};

CaseFlags22 thm22_case_flags(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom);

/// Both diffusivities positive. Throws ValidationError otherwise or when DetJ0 = 0.
TuringVerdict classify_thm22(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom);

/// Exactly one diffusivity zero. Throws ValidationError otherwise or when DetJ0 = 0.
TuringVerdict classify_thm23(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom);

/// Picks the criterion that applies to D.
TuringVerdict classify_turing(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom);

/// Witness tuples with 0 < sum p_i^2 strictly inside (lower, upper), at most `cap`.
std::vector<ModeIndex> lattice_points_in_window(const ModeWindow& w, int k, std::size_t cap, bool* truncated = nullptr);

enum class BrusselatorVerdict {
    NecessaryConditionHolds,  // both D > 0 and one of the closed forms holds
    Excluded,                 // both D > 0 and none holds
    Instability,              // one D zero and the criterion holds
    NoInstability,            // one D zero and it fails
};

const char* to_string(BrusselatorVerdict v);

/// Closed-form Brusselator conditions solved for B. The discriminant threshold
/// uses DetJ0 = k4 A^2 k1^2 k3 / k4^2, so the forms reduce to the familiar
/// k4 = 1 expressions. The last inequality of case_f is kept in its published
/// shape and is diagnostic only; classify_thm22 is authoritative.
struct BrusselatorConditions {
    bool case_b = false;  // zero mode unstable, alpha <= 0
    bool case_d = false;
    bool case_e = false;
    bool case_f = false;
    bool d2_zero = false;  // D1 > 0, D2 = 0
    bool d1_zero = false;  // D1 = 0, D2 > 0
    BrusselatorVerdict verdict = BrusselatorVerdict::Excluded;
};

BrusselatorConditions brusselator_conditions(const BrusselatorParams& p, const DiffusionPair& D,
                                             const DomainSpec& dom);

/// Normal-form conditions i) to iv).
struct NormalFormConditions {
    bool i = false;    // nu > 0, both D > 0, beta = 0: necessary and sufficient
    bool ii = false;   // nu > 0, both D > 0, beta != 0 and the beta bound: necessary
    bool iii = false;  // nu > 0, D1 = 0, D2 > 0
    bool iv = false;   // nu > 0, D1 > 0, D2 = 0
};

NormalFormConditions normal_form_conditions(const NormalFormParams& p, const DiffusionPair& D,
                                            const DomainSpec& dom);

struct CrossValidation {
    TuringVerdict thm;
    ScanResult oracle;
    bool agree = false;
    std::string detail;  // empty when nothing noteworthy
};

/// Runs the closed-form criterion and the spectral scan and checks that they
/// are logically compatible given the strength of the fired case.
CrossValidation cross_validate(const Jacobian2x2& J0, const DiffusionPair& D, const DomainSpec& dom);

}  // namespace rdt
