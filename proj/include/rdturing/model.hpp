#pragma once

#include <utility>
#include <variant>

namespace rdt {

/// Rate constants of the Brusselator kinetics. All must be strictly positive.
struct BrusselatorParams {
    double A = 2.0;
    double B = 0.0;
    double k1 = 1.0;
    double k2 = 1.0;
    double k3 = 1.0;
    double k4 = 1.0;
};

/// Coefficients of the Hopf normal form (real Ginzburg-Landau kinetics).
///
/// nu is the linear growth rate, beta the linear rotation rate, a and b the
/// cubic radial and angular coefficients.
struct NormalFormParams {
    double nu = 0.0;
    double beta = 0.0;
    double a = -1.0;
    double b = 0.5;
};

struct FixedPoint {
    double u_star = 0.0;
    double v_star = 0.0;
};

struct Jacobian2x2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }
};

/// Brusselator kinetics, validated on construction.
///
/// `rhs_shifted` evaluates the full nonlinear field in coordinates centred
/// on the fixed point (u = U - U*, v = V - V*).
class Brusselator {
public:
    explicit Brusselator(const BrusselatorParams& p);

    const BrusselatorParams& params() const { return p_; }
    FixedPoint fixed_point() const { return {u_star_, v_star_}; }
    Jacobian2x2 jacobian() const { return {lin_uu_, c_, -p_.k2 * p_.B, -c_}; }

    std::pair<double, double> rhs_shifted(double u, double v) const {
        const double nonlinear = quad_uu_ * u * u + quad_uv_ * u * v + p_.k3 * u * u * v;
        return {lin_uu_ * u + c_ * v + nonlinear, -p_.k2 * p_.B * u - c_ * v - nonlinear};
    }

    /// Vector field in the original (U, V) variables.
    std::pair<double, double> rhs_original(double U, double V) const;

    /// Critical B at which the fixed point undergoes the supercritical Hopf bifurcation.
    double hopf_threshold() const;

private:
    BrusselatorParams p_;
    double u_star_;
    double v_star_;
    double c_;        // A^2 k1^2 k3 / k4^2
    double lin_uu_;   // k2 B - k4
    double quad_uu_;  // B k2 k4 / (A k1)
    double quad_uv_;  // 2 A k1 k3 / k4
};

/// Hopf normal form; the fixed point is the origin by construction.
class NormalForm {
public:
    explicit NormalForm(const NormalFormParams& p);

    const NormalFormParams& params() const { return p_; }
    FixedPoint fixed_point() const { return {0.0, 0.0}; }
    Jacobian2x2 jacobian() const { return {p_.nu, -p_.beta, p_.beta, p_.nu}; }

    std::pair<double, double> rhs_shifted(double u, double v) const {
        const double r2 = u * u + v * v;
        return {p_.nu * u - p_.beta * v + r2 * (p_.a * u - p_.b * v),
                p_.beta * u + p_.nu * v + r2 * (p_.a * v + p_.b * u)};
    }

    std::pair<double, double> rhs_original(double u, double v) const { return rhs_shifted(u, v); }

    /// Throws ValidationError unless a < 0 (supercritical regime).
    void validate_for_simulation() const;

private:
    NormalFormParams p_;
};

using Model = std::variant<Brusselator, NormalForm>;

FixedPoint fixed_point(const Model& model);
Jacobian2x2 jacobian_at_fixed_point(const Model& model);
std::pair<double, double> eval_rhs_shifted(const Model& model, double u, double v);

/// sqrt(-nu/a) for nu > 0, else 0. Rejects a >= 0.
double limit_cycle_radius(const NormalFormParams& params);

double brusselator_hopf_threshold(const BrusselatorParams& params);

const char* model_family_name(const Model& model);

}  // namespace rdt
