#include "rdturing/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "rdturing/errors.hpp"

namespace rdt {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>> kKnownKeys = {
    {"model", {"family", "A", "B", "k1", "k2", "k3", "k4", "nu", "beta", "a", "b"}},
    {"domain", {"k", "N", "dt", "S", "stability_ratio"}},
    {"diffusion", {"D1", "D2"}},
    {"run", {"t_end", "steps", "stride", "seed", "ic", "amplitude"}},
    {"analysis", {"theta_time", "theta_space", "theta_rel", "window_fraction"}},
    {"sweep",
     {"param1", "min1", "max1", "count1", "scale1", "param2", "min2", "max2", "count2", "scale2", "simulate", "N",
      "t_end", "dt_max"}},
};

const std::set<std::string> kBrusselatorKeys = {"A", "B", "k1", "k2", "k3", "k4"};
const std::set<std::string> kNormalFormKeys = {"nu", "beta", "a", "b"};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    if (line > 0) throw ValidationError("config line " + std::to_string(line) + ": " + msg);
    throw ValidationError("config: " + msg);
}

class Reader {
public:
    explicit Reader(std::map<std::string, Section> sections) : sections_(std::move(sections)) {}

    bool has(const std::string& sec, const std::string& key) const {
        auto s = sections_.find(sec);
        return s != sections_.end() && s->second.count(key);
    }

    int line(const std::string& sec, const std::string& key) const {
        return has(sec, key) ? sections_.at(sec).at(key).line : 0;
    }

    const std::string* raw(const std::string& sec, const std::string& key) const {
        return has(sec, key) ? &sections_.at(sec).at(key).value : nullptr;
    }

    void number(const std::string& sec, const std::string& key, double& out) const {
        const std::string* v = raw(sec, key);
        if (!v) return;
        double x = 0.0;
        const auto* end = v->data() + v->size();
        auto [p, ec] = std::from_chars(v->data(), end, x);
        if (ec != std::errc() || p != end || !std::isfinite(x)) {
            fail(line(sec, key), "expected a finite number for '" + key + "', got '" + *v + "'");
        }
        out = x;
    }

    template <class Int>
    void integer(const std::string& sec, const std::string& key, Int& out) const {
        const std::string* v = raw(sec, key);
        if (!v) return;
        Int x{};
        const auto* end = v->data() + v->size();
        auto [p, ec] = std::from_chars(v->data(), end, x);
        if (ec != std::errc() || p != end) {
            fail(line(sec, key), "expected an integer for '" + key + "', got '" + *v + "'");
        }
        out = x;
    }

    void boolean(const std::string& sec, const std::string& key, bool& out) const {
        const std::string* v = raw(sec, key);
        if (!v) return;
        if (*v == "true") {
            out = true;
        } else if (*v == "false") {
            out = false;
        } else {
            fail(line(sec, key), "expected true or false for '" + key + "', got '" + *v + "'");
        }
    }

    const Section* section(const std::string& name) const {
        auto s = sections_.find(name);
        return s == sections_.end() ? nullptr : &s->second;
    }

private:
    std::map<std::string, Section> sections_;
};

std::map<std::string, Section> tokenize(const std::string& text) {
    std::map<std::string, Section> sections;
    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(line, "malformed section header '" + s + "'");
            current = trim(s.substr(1, s.size() - 2));
            if (!kKnownKeys.count(current)) fail(line, "unknown section [" + current + "]");
            sections[current];
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value', got '" + s + "'");
        if (current.empty()) fail(line, "key outside of any [section]");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (!kKnownKeys.at(current).count(key)) fail(line, "unknown key '" + key + "' in [" + current + "]");
        if (value.empty()) fail(line, "missing value for '" + key + "'");
        if (sections[current].count(key)) fail(line, "duplicate key '" + key + "' in [" + current + "]");
        sections[current][key] = {value, line};
    }
    return sections;
}

SweepAxis read_axis(const Reader& r, int which) {
    const std::string n = std::to_string(which);
    SweepAxis axis;
    if (const auto* p = r.raw("sweep", "param" + n)) {
        axis.name = *p;
    } else {
        fail(0, "[sweep] needs param" + n);
    }
    if (!r.has("sweep", "min" + n) || !r.has("sweep", "max" + n) || !r.has("sweep", "count" + n)) {
        fail(r.line("sweep", "param" + n), "[sweep] needs min" + n + ", max" + n + " and count" + n);
    }
    r.number("sweep", "min" + n, axis.min);
    r.number("sweep", "max" + n, axis.max);
    r.integer("sweep", "count" + n, axis.count);
    if (const auto* scale = r.raw("sweep", "scale" + n)) {
        if (*scale == "log") {
            axis.log = true;
        } else if (*scale != "linear") {
            fail(r.line("sweep", "scale" + n), "scale must be linear or log, got '" + *scale + "'");
        }
    }
    const int line = r.line("sweep", "count" + n);
    if (axis.count < 2) fail(line, "sweep axis counts must be >= 2");
    if (axis.log && !(axis.min > 0.0 && axis.max > 0.0)) fail(line, "log axis needs positive bounds");
    return axis;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

}  // namespace

const char* to_string(ModelFamily f) { return f == ModelFamily::Brusselator ? "brusselator" : "normal_form"; }

const char* to_string(IcKind k) { return k == IcKind::Random ? "random" : "limit_cycle"; }

double SweepAxis::value(int i) const {
    const double f = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
    if (log) return std::exp(std::log(min) + f * (std::log(max) - std::log(min)));
    return min + f * (max - min);
}

Model RunConfig::make_model() const {
    if (family == ModelFamily::Brusselator) return Brusselator(brusselator);
    return NormalForm(normal_form);
}

bool is_parameter_name(ModelFamily family, const std::string& name) {
    if (name == "D1" || name == "D2") return true;
    return family == ModelFamily::Brusselator ? kBrusselatorKeys.count(name) > 0 : kNormalFormKeys.count(name) > 0;
}

void set_parameter(RunConfig& c, const std::string& name, double value) {
    if (!is_parameter_name(c.family, name)) {
        throw ValidationError("'" + name + "' is not a parameter of the " + to_string(c.family) + " family");
    }
    auto& br = c.brusselator;
    auto& nf = c.normal_form;
    if (name == "D1") c.D.D1 = value;
    else if (name == "D2") c.D.D2 = value;
    else if (name == "A") br.A = value;
    else if (name == "B") br.B = value;
    else if (name == "k1") br.k1 = value;
    else if (name == "k2") br.k2 = value;
    else if (name == "k3") br.k3 = value;
    else if (name == "k4") br.k4 = value;
    else if (name == "nu") nf.nu = value;
    else if (name == "beta") nf.beta = value;
    else if (name == "a") nf.a = value;
    else if (name == "b") nf.b = value;
}

RunConfig parse_config(const std::string& text) {
    const Reader r(tokenize(text));
    RunConfig c;

    const std::string* family = r.raw("model", "family");
    if (!family) fail(0, "model family required");
    if (*family == "brusselator") {
        c.family = ModelFamily::Brusselator;
    } else if (*family == "normal_form") {
        c.family = ModelFamily::NormalForm;
    } else {
        fail(r.line("model", "family"), "unknown model family '" + *family + "'");
    }
    if (const Section* model = r.section("model")) {
        const auto& allowed = c.family == ModelFamily::Brusselator ? kBrusselatorKeys : kNormalFormKeys;
        for (const auto& [key, entry] : *model) {
            if (key != "family" && !allowed.count(key)) {
                fail(entry.line, "key '" + key + "' does not belong to the " + *family + " family");
            }
        }
    }

    if (c.family == ModelFamily::Brusselator) {
        if (!r.has("model", "B")) fail(0, "brusselator model needs B");
        auto& p = c.brusselator;
        r.number("model", "A", p.A);
        r.number("model", "B", p.B);
        r.number("model", "k1", p.k1);
        r.number("model", "k2", p.k2);
        r.number("model", "k3", p.k3);
        r.number("model", "k4", p.k4);
    } else {
        if (!r.has("model", "nu") || !r.has("model", "beta")) fail(0, "normal_form model needs nu and beta");
        auto& p = c.normal_form;
        r.number("model", "nu", p.nu);
        r.number("model", "beta", p.beta);
        r.number("model", "a", p.a);
        r.number("model", "b", p.b);
    }
    try {
        (void)c.make_model();
    } catch (const ValidationError& e) {
        fail(r.line("model", "family"), e.what());
    }

    if (!r.has("diffusion", "D1")) fail(0, "[diffusion] needs D1");
    r.number("diffusion", "D1", c.D.D1);
    r.number("diffusion", "D2", c.D.D2);
    if (!(c.D.D1 >= 0.0) || !(c.D.D2 >= 0.0)) fail(r.line("diffusion", "D1"), "diffusion coefficients must be >= 0");
    const double dmax = std::max(c.D.D1, c.D.D2);
    if (!(dmax > 0.0)) fail(r.line("diffusion", "D1"), "at least one diffusion coefficient must be positive");

    auto& d = c.domain;
    r.integer("domain", "k", d.k);
    r.integer("domain", "N", d.N);
    r.number("domain", "dt", d.dt);
    r.number("domain", "S", d.S);
    r.number("domain", "stability_ratio", d.stability_ratio);
    if (d.k < 1) fail(r.line("domain", "k"), "k must be >= 1");
    if (d.N < 2) fail(r.line("domain", "N"), "N must be >= 2");
    if (!(d.dt > 0.0)) fail(r.line("domain", "dt"), "dt must be positive");
    if (!(d.stability_ratio > 0.0)) fail(r.line("domain", "stability_ratio"), "stability_ratio must be positive");
    if (d.stability_ratio > kDefaultStabilityRatio + 1e-12) {
        fail(r.line("domain", "stability_ratio"), "stability_ratio must not exceed 1/6");
    }
    const bool has_S = r.has("domain", "S");
    const bool has_dt = r.has("domain", "dt");
    if (has_S && !(d.S > 0.0)) fail(r.line("domain", "S"), "S must be positive");
    if (has_S && has_dt) {
        const double implied = d.N * std::sqrt(d.dt * dmax / d.stability_ratio);
        if (std::abs(implied - d.S) > 1e-9) {
            fail(r.line("domain", "S"), "S = " + fmt(d.S) + " is inconsistent with N*dx = " + fmt(implied) +
                                            " from N = " + std::to_string(d.N) + ", dt = " + fmt(d.dt));
        }
    } else if (has_S) {
        const double dx = d.S / d.N;
        d.dt = dx * dx * d.stability_ratio / dmax;
    } else {
        d.S = d.N * std::sqrt(d.dt * dmax / d.stability_ratio);
    }

    auto& run = c.run;
    r.number("run", "t_end", run.t_end);
    r.integer("run", "steps", run.steps);
    r.integer("run", "stride", run.stride);
    r.integer("run", "seed", run.seed);
    r.number("run", "amplitude", run.amplitude);
    if (const auto* ic = r.raw("run", "ic")) {
        if (*ic == "random") {
            run.ic = IcKind::Random;
        } else if (*ic == "limit_cycle") {
            run.ic = IcKind::LimitCycle;
        } else {
            fail(r.line("run", "ic"), "ic must be random or limit_cycle, got '" + *ic + "'");
        }
    }
    if (!(run.t_end >= 0.0)) fail(r.line("run", "t_end"), "t_end must be >= 0");
    if (!(run.amplitude >= 0.0)) fail(r.line("run", "amplitude"), "amplitude must be >= 0");
    if (r.has("run", "steps")) {
        if (run.steps < 0) fail(r.line("run", "steps"), "steps must be >= 0");
        if (!r.has("run", "t_end")) run.t_end = static_cast<double>(run.steps) * d.dt;
    } else {
        run.steps = std::llround(run.t_end / d.dt);
    }
    if (r.has("run", "stride")) {
        if (run.stride < 1) fail(r.line("run", "stride"), "stride must be >= 1");
    } else {
        run.stride = std::max<std::int64_t>(1, run.steps / 100);
    }

    auto& an = c.analysis;
    r.number("analysis", "theta_time", an.theta_time);
    r.number("analysis", "theta_space", an.theta_space);
    r.number("analysis", "theta_rel", an.theta_rel);
    r.number("analysis", "window_fraction", an.window_fraction);
    if (!(an.window_fraction > 0.0 && an.window_fraction <= 1.0)) {
        fail(r.line("analysis", "window_fraction"), "window_fraction must lie in (0, 1]");
    }

    if (r.section("sweep")) {
        auto& sw = c.sweep;
        sw.present = true;
        sw.axis1 = read_axis(r, 1);
        sw.axis2 = read_axis(r, 2);
        for (const auto* axis : {&sw.axis1, &sw.axis2}) {
            if (!is_parameter_name(c.family, axis->name)) {
                fail(r.line("sweep", axis == &sw.axis1 ? "param1" : "param2"),
                     "'" + axis->name + "' is not a parameter of the " + *family + " family");
            }
        }
        if (sw.axis1.name == sw.axis2.name) fail(r.line("sweep", "param2"), "sweep axes must differ");
        r.boolean("sweep", "simulate", sw.simulate);
        r.integer("sweep", "N", sw.N);
        r.number("sweep", "t_end", sw.t_end);
        r.number("sweep", "dt_max", sw.dt_max);
        if (sw.N < 2) fail(r.line("sweep", "N"), "N must be >= 2");
        if (!(sw.t_end > 0.0)) fail(r.line("sweep", "t_end"), "t_end must be positive");
        if (!(sw.dt_max > 0.0)) fail(r.line("sweep", "dt_max"), "dt_max must be positive");
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string to_config_text(const RunConfig& c) {
    std::ostringstream os;
    os << "[model]\nfamily = " << to_string(c.family) << '\n';
    if (c.family == ModelFamily::Brusselator) {
        const auto& p = c.brusselator;
        os << "A = " << fmt(p.A) << "\nB = " << fmt(p.B) << "\nk1 = " << fmt(p.k1) << "\nk2 = " << fmt(p.k2)
           << "\nk3 = " << fmt(p.k3) << "\nk4 = " << fmt(p.k4) << '\n';
    } else {
        const auto& p = c.normal_form;
        os << "nu = " << fmt(p.nu) << "\nbeta = " << fmt(p.beta) << "\na = " << fmt(p.a) << "\nb = " << fmt(p.b)
           << '\n';
    }
    os << "\n[diffusion]\nD1 = " << fmt(c.D.D1) << "\nD2 = " << fmt(c.D.D2) << '\n';
    const auto& d = c.domain;
    os << "\n[domain]\nk = " << d.k << "\nN = " << d.N << "\ndt = " << fmt(d.dt) << "\nS = " << fmt(d.S)
       << "\nstability_ratio = " << fmt(d.stability_ratio) << '\n';
    const auto& run = c.run;
    os << "\n[run]\nt_end = " << fmt(run.t_end) << "\nsteps = " << run.steps << "\nstride = " << run.stride
       << "\nseed = " << run.seed << "\nic = " << to_string(run.ic) << "\namplitude = " << fmt(run.amplitude)
       << '\n';
    const auto& an = c.analysis;
    os << "\n[analysis]\ntheta_time = " << fmt(an.theta_time) << "\ntheta_space = " << fmt(an.theta_space)
       << "\ntheta_rel = " << fmt(an.theta_rel) << "\nwindow_fraction = " << fmt(an.window_fraction) << '\n';
    if (c.sweep.present) {
        const auto& sw = c.sweep;
        os << "\n[sweep]\n";
        int n = 1;
        for (const auto* axis : {&sw.axis1, &sw.axis2}) {
            os << "param" << n << " = " << axis->name << "\nmin" << n << " = " << fmt(axis->min) << "\nmax" << n
               << " = " << fmt(axis->max) << "\ncount" << n << " = " << axis->count << "\nscale" << n << " = "
               << (axis->log ? "log" : "linear") << '\n';
            ++n;
        }
        os << "simulate = " << (sw.simulate ? "true" : "false") << "\nN = " << sw.N << "\nt_end = " << fmt(sw.t_end)
           << "\ndt_max = " << fmt(sw.dt_max) << '\n';
    }
    return os.str();
}

}  // namespace rdt
