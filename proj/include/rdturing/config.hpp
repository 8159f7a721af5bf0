#pragma once

#include <cstdint>
#include <string>

#include "rdturing/analysis.hpp"
#include "rdturing/linstab.hpp"
#include "rdturing/model.hpp"
#include "rdturing/pde.hpp"

namespace rdt {

enum class ModelFamily { Brusselator, NormalForm };
enum class IcKind { Random, LimitCycle };

const char* to_string(ModelFamily f);
const char* to_string(IcKind k);

/// Spatial setup. S, N and dt are tied by S = N sqrt(dt max(D1, D2) / ratio).
/// Whichever of S and dt is not given explicitly is derived from the others.
struct DomainConfig {
    int k = 1;
    int N = 250;
    double dt = 0.001;
    double S = 0.0;
    double stability_ratio = kDefaultStabilityRatio;

    DomainSpec domain() const { return {k, S}; }
    GridSpec grid() const { return {k, N, S / N}; }
};

struct RunSection {
    double t_end = 1000.0;
    std::int64_t steps = 0;   // derived from t_end / dt unless given
    std::int64_t stride = 0;  // derived as steps / 100 unless given
    std::uint64_t seed = 1;
    IcKind ic = IcKind::Random;
    double amplitude = 0.01;
};

struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    bool log = false;

    double value(int i) const;
};

struct SweepSection {
    bool present = false;
    SweepAxis axis1;
    SweepAxis axis2;
    bool simulate = true;
    int N = 100;
    double t_end = 300.0;
    double dt_max = 0.001;  // cap on the per-point time step
};

/// Validated run description. Every field is filled: defaults are explicit.
struct RunConfig {
    ModelFamily family = ModelFamily::Brusselator;
    BrusselatorParams brusselator;
    NormalFormParams normal_form;
    DiffusionPair D{0.0, 1.0};
    DomainConfig domain;
    RunSection run;
    ClassifyOptions analysis;
    SweepSection sweep;

    Model make_model() const;
    IntegratorConfig integrator() const { return {domain.dt, run.steps, run.stride}; }
};

/// Parses the `[section]` / `key = value` format. Errors carry the line number.
RunConfig parse_config(const std::string& text);

RunConfig load_config(const std::string& path);

/// Canonical text form; parse_config(to_config_text(c)) reproduces c exactly.
std::string to_config_text(const RunConfig& c);

/// Applies one named parameter (a model coefficient, D1 or D2) to a config.
/// Used by sweeps; throws ValidationError for names the family does not have.
void set_parameter(RunConfig& c, const std::string& name, double value);

bool is_parameter_name(ModelFamily family, const std::string& name);

}  // namespace rdt
