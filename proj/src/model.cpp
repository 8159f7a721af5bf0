#include "rdturing/model.hpp"

#include <cmath>
#include <string>

#include "rdturing/errors.hpp"

namespace rdt {

namespace {

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ValidationError(std::string("Brusselator parameter ") + name +
                              " must be finite and strictly positive, got " + std::to_string(value));
    }
}

}  // namespace

Brusselator::Brusselator(const BrusselatorParams& p) : p_(p) {
    require_positive(p.A, "A");
    require_positive(p.B, "B");
    require_positive(p.k1, "k1");
    require_positive(p.k2, "k2");
    require_positive(p.k3, "k3");
    require_positive(p.k4, "k4");

    u_star_ = p.k1 * p.A / p.k4;
    v_star_ = p.k2 * p.k4 * p.B / (p.A * p.k1 * p.k3);
    c_ = p.A * p.A * p.k1 * p.k1 * p.k3 / (p.k4 * p.k4);
    lin_uu_ = p.k2 * p.B - p.k4;
    quad_uu_ = p.B * p.k2 * p.k4 / (p.A * p.k1);
    quad_uv_ = 2.0 * p.A * p.k1 * p.k3 / p.k4;
}

std::pair<double, double> Brusselator::rhs_original(double U, double V) const {
    const double autocatalysis = p_.k3 * U * U * V;
    return {p_.k1 * p_.A - (p_.k2 * p_.B + p_.k4) * U + autocatalysis,
            p_.k2 * p_.B * U - autocatalysis};
}

double Brusselator::hopf_threshold() const { return brusselator_hopf_threshold(p_); }

NormalForm::NormalForm(const NormalFormParams& p) : p_(p) {
    if (!std::isfinite(p.nu) || !std::isfinite(p.beta) || !std::isfinite(p.a) || !std::isfinite(p.b)) {
        throw ValidationError("normal form parameters must be finite");
    }
}

void NormalForm::validate_for_simulation() const {
    if (!(p_.a < 0.0)) {
        throw ValidationError("normal form simulation requires a < 0 (supercritical Hopf), got a = " +
                              std::to_string(p_.a));
    }
}

FixedPoint fixed_point(const Model& model) {
    return std::visit([](const auto& m) { return m.fixed_point(); }, model);
}

Jacobian2x2 jacobian_at_fixed_point(const Model& model) {
    return std::visit([](const auto& m) { return m.jacobian(); }, model);
}

std::pair<double, double> eval_rhs_shifted(const Model& model, double u, double v) {
    return std::visit([u, v](const auto& m) { return m.rhs_shifted(u, v); }, model);
}

double limit_cycle_radius(const NormalFormParams& params) {
    if (!(params.a < 0.0)) {
        throw ValidationError("limit cycle radius requires a < 0");
    }
    if (params.nu <= 0.0) return 0.0;
    return std::sqrt(-params.nu / params.a);
}

double brusselator_hopf_threshold(const BrusselatorParams& p) {
    return p.k4 / p.k2 + p.A * p.A * p.k1 * p.k1 * p.k3 / (p.k2 * p.k4 * p.k4);
}

const char* model_family_name(const Model& model) {
    return std::holds_alternative<Brusselator>(model) ? "brusselator" : "normal_form";
}

}  // namespace rdt
