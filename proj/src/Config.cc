//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Config.cc
//---------------------------------------------------------------------------//
#include "nisim/Config.hh"

#include <charconv>
#include <cmath>
#include <set>

#include "nisim/Output.hh"

namespace nisim
{
namespace
{
//---------------------------------------------------------------------------//
//! Bounds check for a real value
struct Range
{
    double lo{-HUGE_VAL};
    double hi{HUGE_VAL};
    bool lo_open{false};
    bool hi_open{false};

    bool contains(double v) const
    {
        return (lo_open ? v > lo : v >= lo) && (hi_open ? v < hi : v <= hi);
    }

    std::string describe() const
    {
        return std::string(lo_open ? "(" : "[") + format_real(lo) + ", "
               + format_real(hi) + (hi_open ? ")" : "]");
    }
};

constexpr Range unit{0, 1};
constexpr Range gamma_range{0, 1, false, true};
constexpr Range non_negative{0, HUGE_VAL};

//---------------------------------------------------------------------------//
/*!
 * View of one JSON object that remembers which keys were read, so that
 * leftovers can be reported as unknown.
 */
class Section
{
  public:
    Section(Json const& j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
        {
            throw ConfigError(path_, "expected an object");
        }
    }

    std::string sub(std::string_view key) const
    {
        return path_ + "." + std::string(key);
    }

    bool has(std::string const& key)
    {
        if (j_.contains(key))
        {
            used_.insert(key);
            return true;
        }
        return false;
    }

    Json const& required(std::string const& key)
    {
        if (!this->has(key))
        {
            throw ConfigError(this->sub(key), "missing required field");
        }
        return j_.at(key);
    }

    double real(std::string const& key, double def, Range range = {})
    {
        if (!this->has(key))
        {
            return def;
        }
        return check_real(j_.at(key), this->sub(key), range);
    }

    double required_real(std::string const& key, Range range = {})
    {
        return check_real(this->required(key), this->sub(key), range);
    }

    std::uint64_t count(std::string const& key, std::uint64_t def, std::uint64_t min)
    {
        if (!this->has(key))
        {
            return def;
        }
        auto const& v = j_.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        {
            throw ConfigError(this->sub(key), "expected a non-negative integer");
        }
        auto const n = v.get<std::uint64_t>();
        if (n < min)
        {
            throw ConfigError(this->sub(key),
                              "must be at least " + std::to_string(min));
        }
        return n;
    }

    bool boolean(std::string const& key, bool def)
    {
        if (!this->has(key))
        {
            return def;
        }
        if (!j_.at(key).is_boolean())
        {
            throw ConfigError(this->sub(key), "expected true or false");
        }
        return j_.at(key).get<bool>();
    }

    std::string string(std::string const& key, std::string def)
    {
        if (!this->has(key))
        {
            return def;
        }
        if (!j_.at(key).is_string())
        {
            throw ConfigError(this->sub(key), "expected a string");
        }
        return j_.at(key).get<std::string>();
    }

    double angle(std::string const& key, double def)
    {
        if (!this->has(key))
        {
            return def;
        }
        return check_angle(j_.at(key), this->sub(key));
    }

    std::vector<double> angle_grid(std::string const& key, std::vector<double> def)
    {
        if (!this->has(key))
        {
            return def;
        }
        return parse_grid(j_.at(key), this->sub(key), true, Range{});
    }

    std::vector<double>
    real_grid(std::string const& key, std::vector<double> def, Range range)
    {
        if (!this->has(key))
        {
            return def;
        }
        return parse_grid(j_.at(key), this->sub(key), false, range);
    }

    void finish() const
    {
        for (auto const& [key, value] : j_.items())
        {
            if (!used_.count(key))
            {
                throw ConfigError(this->sub(key), "unknown key");
            }
        }
    }

    static double check_real(Json const& v, std::string const& path, Range range)
    {
        if (!v.is_number())
        {
            throw ConfigError(path, "expected a number");
        }
        double const x = v.get<double>();
        if (!std::isfinite(x) || !range.contains(x))
        {
            throw ConfigError(path, "value " + format_real(x)
                                        + " out of range " + range.describe());
        }
        return x;
    }

    static double check_angle(Json const& v, std::string const& path)
    {
        if (!v.is_string())
        {
            throw ConfigError(path,
                              "angles need an explicit unit, e.g. \"60deg\", "
                              "\"1.5rad\" or \"0.25pi\"");
        }
        return parse_angle(v.get<std::string>(), path);
    }

    static std::vector<double> parse_grid(Json const& v,
                                          std::string const& path,
                                          bool angles,
                                          Range range)
    {
        auto value = [&](Json const& x, std::string const& p) {
            return angles ? check_angle(x, p) : check_real(x, p, range);
        };
        std::vector<double> grid;
        if (v.is_array())
        {
            for (std::size_t i = 0; i < v.size(); ++i)
            {
                grid.push_back(value(v[i], path + "[" + std::to_string(i) + "]"));
            }
            return grid;
        }
        Section s(v, path);
        double const start = value(s.required("start"), s.sub("start"));
        double const stop = value(s.required("stop"), s.sub("stop"));
        auto const n = s.count("count", 0, 0);
        if (!s.has("count"))
        {
            s.required("count");
        }
        bool const endpoint = s.boolean("endpoint", true);
        s.finish();
        if (endpoint)
        {
            return linspace(start, stop, n);
        }
        grid.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            grid[i] = start + (stop - start) * static_cast<double>(i) / n;
        }
        return grid;
    }

    std::string const& path() const { return path_; }
    Json const& json() const { return j_; }

  private:
    Json const& j_;
    std::string path_;
    std::set<std::string> used_;
};

//---------------------------------------------------------------------------//
std::string angle_text(double radians)
{
    return format_real(radians) + "rad";
}

Json angle_list(std::vector<double> const& v)
{
    Json j = Json::array();
    for (double x : v)
    {
        j.push_back(angle_text(x));
    }
    return j;
}

Json real_list(std::vector<double> const& v)
{
    Json j = Json::array();
    for (double x : v)
    {
        j.push_back(x);
    }
    return j;
}

//---------------------------------------------------------------------------//
DlmConfig read_dlm(Section& s, double default_gamma, bool gamma_required)
{
    DlmConfig d;
    d.gamma = gamma_required ? s.required_real("gamma", gamma_range)
                             : s.real("gamma", default_gamma, gamma_range);
    if (s.has("splitter_gamma"))
    {
        auto const& v = s.json().at("splitter_gamma");
        std::string const p = s.sub("splitter_gamma");
        if (!v.is_array() || (v.size() != 4 && !v.empty()))
        {
            throw ConfigError(p, "expected four values, one per splitter");
        }
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            d.splitter_gamma.push_back(Section::check_real(
                v[i], p + "[" + std::to_string(i) + "]", gamma_range));
        }
    }
    d.reset_per_setting = s.boolean("reset_per_setting", false);
    return d;
}

void write_dlm(Json& j, DlmConfig const& d)
{
    j["gamma"] = d.gamma;
    j["splitter_gamma"] = real_list(d.splitter_gamma);
    j["reset_per_setting"] = d.reset_per_setting;
}

std::vector<double> default_phase_grid(std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        v[i] = 2 * pi * static_cast<double>(i) / n;
    }
    return v;
}

//---------------------------------------------------------------------------//
MziConfig read_mzi(Section& s)
{
    MziConfig c;
    c.reflection = s.real("reflection", c.reflection, unit);
    c.dlm = read_dlm(s, 0.99, true);
    c.noise_halfwidth = s.angle("noise_halfwidth", 0);
    if (c.noise_halfwidth < 0)
    {
        throw ConfigError(s.sub("noise_halfwidth"), "must be non-negative");
    }
    c.chi = s.angle_grid("chi", default_phase_grid(32));
    c.n_particles = s.count("n_particles", c.n_particles, 1);
    c.nu = s.real("nu", 0);
    return c;
}

AbsorberConfig read_absorber(Section& s)
{
    AbsorberConfig c;
    auto const kind = s.string("kind", "stochastic");
    if (kind == "stochastic")
    {
        c.kind = AbsorberKind::stochastic;
    }
    else if (kind == "chopper")
    {
        c.kind = AbsorberKind::chopper;
    }
    else
    {
        throw ConfigError(s.sub("kind"),
                          "expected \"stochastic\" or \"chopper\", got \"" + kind
                              + "\"");
    }
    c.reflection = s.real("reflection", c.reflection, unit);
    c.dlm = read_dlm(s, 0.98, true);
    c.a = s.real_grid("a", linspace(0.1, 1.0, 10), unit);
    c.chi = s.angle_grid("chi", default_phase_grid(16));
    c.n_per_cycle = s.count("n_per_cycle", c.n_per_cycle, 1);
    c.n_cycles = s.count("n_cycles", c.n_cycles, 1);
    return c;
}

BellConfig read_bell(Section& s)
{
    BellConfig c;
    c.reflection = s.real("reflection", c.reflection, unit);
    c.dlm = read_dlm(s, 0.99, true);
    c.alpha = s.angle_grid("alpha", default_phase_grid(8));
    c.chi = s.angle_grid("chi", default_phase_grid(8));
    c.n_particles = s.count("n_particles", c.n_particles, 1);
    c.random_chi = s.boolean("random_chi", false);
    if (s.has("chsh"))
    {
        auto const& v = s.json().at("chsh");
        if (!v.is_array() || (v.size() != 4 && !v.empty()))
        {
            throw ConfigError(s.sub("chsh"),
                              "expected [alpha1, chi1, alpha2, chi2]");
        }
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            c.chsh[i] = Section::check_angle(
                v[i], s.sub("chsh") + "[" + std::to_string(i) + "]");
        }
    }
    return c;
}

RfConfig read_rf(Section& s)
{
    RfConfig c;
    c.reflection = s.real("reflection", c.reflection, unit);
    c.dlm = read_dlm(s, 0.99, true);
    c.phi = s.angle_grid("phi", default_phase_grid(10));
    c.chi = s.angle_grid("chi", default_phase_grid(10));
    c.n_particles = s.count("n_particles", c.n_particles, 1);
    c.omega_t1 = s.angle("omega_t1", 0);
    c.rf1_phase = s.angle("rf1_phase", 0);
    c.omega_t2 = s.angle("omega_t2", 0);
    c.omega_t_down = s.angle("omega_t_down", 0);
    return c;
}

LowCountConfig read_low_count(Section& s)
{
    LowCountConfig c;
    c.reflection = s.real("reflection", c.reflection, unit);
    c.dlm = read_dlm(s, 0.5, true);
    c.chi = s.angle_grid("chi", linspace(0, 2 * pi, 5));
    c.n_particles = s.count("n_particles", c.n_particles, 1);
    auto const n = s.count("n_replicas", c.n_replicas, 1);
    if (n > 100000)
    {
        throw ConfigError(s.sub("n_replicas"), "at most 100000 replicas");
    }
    c.n_replicas = static_cast<std::uint32_t>(n);
    return c;
}

ShutterConfig read_shutter(Section& s)
{
    ShutterConfig c;
    bool const single = s.has("reflection");
    bool const multi = s.has("populations");
    if (single && multi)
    {
        throw ConfigError(s.sub("populations"),
                          "give either reflection or populations, not both");
    }
    if (single)
    {
        c.populations = {
            {Section::check_real(s.json().at("reflection"), s.sub("reflection"), unit),
             1.0}};
    }
    else if (multi)
    {
        auto const& v = s.json().at("populations");
        std::string const p = s.sub("populations");
        if (!v.is_array() || v.empty() || v.size() > 2)
        {
            throw ConfigError(p, "expected one or two populations");
        }
        c.populations.clear();
        double total = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
        {
            Section ps(v[i], p + "[" + std::to_string(i) + "]");
            Population pop;
            pop.reflection = ps.required_real("reflection", unit);
            pop.weight = ps.required_real("weight", unit);
            ps.finish();
            total += pop.weight;
            c.populations.push_back(pop);
        }
        if (std::fabs(total - 1) > 1e-9)
        {
            throw ConfigError(p, "weights sum to " + format_real(total)
                                     + ", expected 1");
        }
    }
    c.dlm = read_dlm(s, 0.12, true);
    c.chi = s.angle_grid("chi", default_phase_grid(16));
    c.n_particles = s.count("n_particles", c.n_particles, 1);

    auto const mode = s.string("mode", "random_toggle");
    if (mode == "always_open")
    {
        c.mode = ShutterMode::always_open;
    }
    else if (mode == "always_closed")
    {
        c.mode = ShutterMode::always_closed;
    }
    else if (mode == "random_toggle")
    {
        c.mode = ShutterMode::random_toggle;
    }
    else
    {
        throw ConfigError(s.sub("mode"),
                          "expected always_open, always_closed or "
                          "random_toggle");
    }
    auto const reset = s.string("reset_mode", "reset_x");
    if (reset == "reset_x")
    {
        c.reset_mode = ShutterReset::reset_x;
    }
    else if (reset == "gamma_zero")
    {
        c.reset_mode = ShutterReset::gamma_zero;
    }
    else
    {
        throw ConfigError(s.sub("reset_mode"),
                          "expected reset_x or gamma_zero");
    }
    c.toggle_probability = s.real("toggle_probability", 0.5, unit);
    c.oracle_visibility = s.real("oracle_visibility", 0.4, unit);
    return c;
}

LearningTraceSpec read_learning(Section& s)
{
    LearningTraceSpec c;
    c.gamma = s.required_real("gamma", gamma_range);
    c.p_port0 = s.real("p_port0", c.p_port0, unit);
    c.p_after = s.real("p_after", c.p_after, unit);
    c.n_events = s.count("n_events", c.n_events, 1);
    c.switch_at = s.count("switch_at", c.switch_at, 0);
    return c;
}

char const* to_string(ShutterMode m)
{
    switch (m)
    {
        case ShutterMode::always_open:
            return "always_open";
        case ShutterMode::always_closed:
            return "always_closed";
        case ShutterMode::random_toggle:
            break;
    }
    return "random_toggle";
}
}  // namespace

//---------------------------------------------------------------------------//
ConfigError::ConfigError(std::string path, std::string const& what)
    : std::runtime_error(path + ": " + what), path_(std::move(path))
{
}

//---------------------------------------------------------------------------//
double parse_angle(std::string_view text, std::string const& path)
{
    struct Unit
    {
        std::string_view suffix;
        double scale;
    };
    static constexpr Unit units[] = {{"deg", pi / 180}, {"rad", 1.0}, {"pi", pi}};
    for (auto const& u : units)
    {
        if (text.size() > u.suffix.size() && text.ends_with(u.suffix))
        {
            auto const num = text.substr(0, text.size() - u.suffix.size());
            double value = 0;
            auto const [ptr, ec]
                = std::from_chars(num.data(), num.data() + num.size(), value);
            if (ec != std::errc{} || ptr != num.data() + num.size()
                || !std::isfinite(value))
            {
                break;
            }
            return value * u.scale;
        }
    }
    throw ConfigError(path, "cannot read angle \"" + std::string(text)
                                + "\"; use e.g. \"60deg\", \"1.5rad\" or "
                                  "\"0.25pi\"");
}

//---------------------------------------------------------------------------//
RunConfig parse_config(std::string_view text)
{
    Json j;
    try
    {
        j = Json::parse(text);
    }
    catch (Json::parse_error const& e)
    {
        throw ConfigError("$", std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

RunConfig parse_config(Json const& j)
{
    Section s(j, "$");
    RunConfig rc;
    auto const& name = s.required("experiment");
    if (!name.is_string())
    {
        throw ConfigError("$.experiment", "expected a string");
    }
    rc.experiment = name.get<std::string>();
    rc.seed = s.count("seed", 1, 0);

    if (rc.experiment == "mzi")
    {
        rc.params = read_mzi(s);
    }
    else if (rc.experiment == "absorber")
    {
        rc.params = read_absorber(s);
    }
    else if (rc.experiment == "bell")
    {
        rc.params = read_bell(s);
    }
    else if (rc.experiment == "rf")
    {
        rc.params = read_rf(s);
    }
    else if (rc.experiment == "lowcount")
    {
        rc.params = read_low_count(s);
    }
    else if (rc.experiment == "shutter")
    {
        rc.params = read_shutter(s);
    }
    else if (rc.experiment == "learning-trace")
    {
        auto spec = read_learning(s);
        spec.seed = rc.seed;
        rc.params = spec;
    }
    else
    {
        throw ConfigError("$.experiment",
                          "unknown experiment \"" + rc.experiment + "\"");
    }
    s.finish();
    return rc;
}

//---------------------------------------------------------------------------//
Json to_json(MziConfig const& c)
{
    Json j;
    j["experiment"] = "mzi";
    j["reflection"] = c.reflection;
    write_dlm(j, c.dlm);
    j["noise_halfwidth"] = angle_text(c.noise_halfwidth);
    j["chi"] = angle_list(c.chi);
    j["n_particles"] = c.n_particles;
    j["nu"] = c.nu;
    return j;
}

Json to_json(AbsorberConfig const& c)
{
    Json j;
    j["experiment"] = "absorber";
    j["kind"] = c.kind == AbsorberKind::chopper ? "chopper" : "stochastic";
    j["reflection"] = c.reflection;
    write_dlm(j, c.dlm);
    j["a"] = real_list(c.a);
    j["chi"] = angle_list(c.chi);
    j["n_per_cycle"] = c.n_per_cycle;
    j["n_cycles"] = c.n_cycles;
    return j;
}

Json to_json(BellConfig const& c)
{
    Json j;
    j["experiment"] = "bell";
    j["reflection"] = c.reflection;
    write_dlm(j, c.dlm);
    j["alpha"] = angle_list(c.alpha);
    j["chi"] = angle_list(c.chi);
    j["n_particles"] = c.n_particles;
    j["random_chi"] = c.random_chi;
    j["chsh"] = angle_list({c.chsh.begin(), c.chsh.end()});
    return j;
}

Json to_json(RfConfig const& c)
{
    Json j;
    j["experiment"] = "rf";
    j["reflection"] = c.reflection;
    write_dlm(j, c.dlm);
    j["phi"] = angle_list(c.phi);
    j["chi"] = angle_list(c.chi);
    j["n_particles"] = c.n_particles;
    j["omega_t1"] = angle_text(c.omega_t1);
    j["rf1_phase"] = angle_text(c.rf1_phase);
    j["omega_t2"] = angle_text(c.omega_t2);
    j["omega_t_down"] = angle_text(c.omega_t_down);
    return j;
}

Json to_json(LowCountConfig const& c)
{
    Json j;
    j["experiment"] = "lowcount";
    j["reflection"] = c.reflection;
    write_dlm(j, c.dlm);
    j["chi"] = angle_list(c.chi);
    j["n_particles"] = c.n_particles;
    j["n_replicas"] = c.n_replicas;
    return j;
}

Json to_json(ShutterConfig const& c)
{
    Json j;
    j["experiment"] = "shutter";
    Json pops = Json::array();
    for (auto const& p : c.populations)
    {
        Json e;
        e["reflection"] = p.reflection;
        e["weight"] = p.weight;
        pops.push_back(e);
    }
    j["populations"] = pops;
    write_dlm(j, c.dlm);
    j["chi"] = angle_list(c.chi);
    j["n_particles"] = c.n_particles;
    j["mode"] = to_string(c.mode);
    j["reset_mode"] = c.reset_mode == ShutterReset::reset_x ? "reset_x"
                                                            : "gamma_zero";
    j["toggle_probability"] = c.toggle_probability;
    j["oracle_visibility"] = c.oracle_visibility;
    return j;
}

Json to_json(LearningTraceSpec const& c)
{
    Json j;
    j["experiment"] = "learning-trace";
    j["gamma"] = c.gamma;
    j["p_port0"] = c.p_port0;
    j["p_after"] = c.p_after;
    j["n_events"] = c.n_events;
    j["switch_at"] = c.switch_at;
    return j;
}

Json to_json(RunConfig const& c)
{
    Json j = std::visit([](auto const& p) { return to_json(p); }, c.params);
    j["seed"] = c.seed;
    return j;
}

//---------------------------------------------------------------------------//
ExperimentRecord run_experiment(RunConfig const& c)
{
    struct Visitor
    {
        std::uint64_t seed;
        ExperimentRecord operator()(MziConfig const& p) const
        {
            return run_mzi(p, seed);
        }
        ExperimentRecord operator()(AbsorberConfig const& p) const
        {
            return run_absorber(p, seed);
        }
        ExperimentRecord operator()(BellConfig const& p) const
        {
            return run_bell(p, seed);
        }
        ExperimentRecord operator()(RfConfig const& p) const
        {
            return run_rf(p, seed);
        }
        ExperimentRecord operator()(LowCountConfig const& p) const
        {
            return run_low_count(p, seed);
        }
        ExperimentRecord operator()(ShutterConfig const& p) const
        {
            return run_shutter(p, seed);
        }
        ExperimentRecord operator()(LearningTraceSpec p) const
        {
            p.seed = seed;
            return run_learning_trace(p);
        }
    };
    return std::visit(Visitor{c.seed}, c.params);
}

//---------------------------------------------------------------------------//
}  // namespace nisim
