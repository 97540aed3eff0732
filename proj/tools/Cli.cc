//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/Cli.cc
//---------------------------------------------------------------------------//
#include "Cli.hh"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "nisim/Config.hh"
#include "nisim/Oracle.hh"
#include "nisim/Output.hh"

namespace nisim
{
namespace
{
//---------------------------------------------------------------------------//
struct RunOptions
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string format{"csv"};
    std::optional<double> gamma;
    std::optional<double> reflection;
    std::optional<std::uint64_t> n_particles;
    std::vector<std::string> assignments;
};

void add_run_options(CLI::App& sub, RunOptions& o)
{
    sub.add_option("--config", o.config_path, "JSON configuration file")
        ->check(CLI::ExistingFile);
    sub.add_option("--seed", o.seed, "Master RNG seed");
    sub.add_option("--out", o.out_path, "Output file (default: stdout)");
    sub.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub.add_option("--gamma", o.gamma, "Learning parameter of all splitters");
    sub.add_option("--reflection", o.reflection, "Splitter reflection R");
    sub.add_option("--n-particles", o.n_particles, "Particles per setting");
    sub.add_option("--set",
                   o.assignments,
                   "Override a config key: KEY=VALUE, VALUE as JSON or a "
                   "bare string (e.g. noise_halfwidth=60deg)");
}

Json load_json_file(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    try
    {
        return Json::parse(ss.str());
    }
    catch (Json::parse_error const& e)
    {
        throw std::runtime_error(path + ": malformed JSON: " + e.what());
    }
}

Json assignment_value(std::string const& text)
{
    try
    {
        return Json::parse(text);
    }
    catch (Json::parse_error const&)
    {
        return text;
    }
}

// Assemble the config JSON from file, subcommand name and overrides
Json build_config(std::string const& experiment, RunOptions const& o)
{
    Json j = Json::object();
    if (!o.config_path.empty())
    {
        j = load_json_file(o.config_path);
        if (!j.is_object())
        {
            throw std::runtime_error(o.config_path
                                     + ": expected a JSON object");
        }
        if (j.contains("experiment") && j["experiment"] != experiment)
        {
            throw std::runtime_error(o.config_path + ": config is for \""
                                     + j["experiment"].dump()
                                     + "\", not \"" + experiment + "\"");
        }
    }
    Json out = Json::object();
    out["experiment"] = experiment;
    for (auto const& [k, v] : j.items())
    {
        out[k] = v;
    }
    if (o.seed)
    {
        out["seed"] = *o.seed;
    }
    if (o.gamma)
    {
        out["gamma"] = *o.gamma;
    }
    if (o.reflection)
    {
        out["reflection"] = *o.reflection;
    }
    if (o.n_particles)
    {
        out[experiment == "learning-trace" ? "n_events" : "n_particles"]
            = *o.n_particles;
    }
    for (auto const& a : o.assignments)
    {
        auto const eq = a.find('=');
        if (eq == std::string::npos || eq == 0)
        {
            throw std::runtime_error("--set expects KEY=VALUE, got '" + a
                                     + "'");
        }
        out[a.substr(0, eq)] = assignment_value(a.substr(eq + 1));
    }
    return out;
}

int run_experiment_command(std::string const& experiment,
                           RunOptions const& o,
                           std::ostream& out)
{
    auto const format = parse_output_format(o.format);
    RunConfig const rc = parse_config(build_config(experiment, o));
    ExperimentRecord const rec = run_experiment(rc);
    if (o.out_path.empty())
    {
        write_results(rec, format, out);
    }
    else
    {
        write_results(rec, format, o.out_path);
    }
    return 0;
}

//---------------------------------------------------------------------------//
// ORACLE PREDICTIONS
struct OracleOptions
{
    double reflection{0.2};
    std::string chi{"0rad"};
    std::string phi{"0rad"};
    std::string alpha{"0rad"};
    double a{1};
    double b{1};
    double v{0.4};
    double r1{0.2};
    std::optional<double> r2;
    double w1{1};
    double g{0.43};
};

void print_value(std::ostream& out, char const* name, double value)
{
    out << name << '=' << format_real(value) << '\n';
}

}  // namespace

//---------------------------------------------------------------------------//
int run_command(std::vector<std::string> const& args,
                std::ostream& out,
                std::ostream& err)
{
    CLI::App app{"Event-by-event simulation of neutron interferometry",
                 "nisim"};
    app.require_subcommand(0, 1);

    struct Experiment
    {
        char const* name;
        char const* help;
    };
    static constexpr Experiment experiments[] = {
        {"mzi", "Mach-Zehnder fringes with optional phase noise"},
        {"absorber", "Stochastic absorber or chopper in one arm"},
        {"bell", "Spin-path correlations and the CHSH function"},
        {"rf", "Double-loop RF spin-flipper experiment"},
        {"lowcount", "Low-counting-rate replicas with sinusoid fits"},
        {"shutter", "Time-dependent shutter with labeled detections"},
        {"learning-trace", "Response of one learning machine to a step"},
    };
    std::vector<RunOptions> run_opts(std::size(experiments));
    std::vector<CLI::App*> run_subs;
    for (std::size_t i = 0; i < std::size(experiments); ++i)
    {
        auto* sub = app.add_subcommand(experiments[i].name,
                                       experiments[i].help);
        add_run_options(*sub, run_opts[i]);
        run_subs.push_back(sub);
    }

    OracleOptions oo;
    auto* oracle_cmd
        = app.add_subcommand("oracle", "Quantum-theory predictions");
    oracle_cmd->require_subcommand(1);
    auto* o_solve = oracle_cmd->add_subcommand(
        "shutter-solve", "Two-population parameters R2, W1 for target g");
    o_solve->add_option("--r1", oo.r1, "Reflection of population 1")
        ->required();
    o_solve->add_option("--v", oo.v, "Visibility parameter")->required();
    o_solve->add_option("--g", oo.g, "Target frequency")->required();

    auto* o_mzi = oracle_cmd->add_subcommand("mzi", "O/H probabilities");
    o_mzi->add_option("--reflection", oo.reflection);
    o_mzi->add_option("--chi", oo.chi, "Phase difference, e.g. 90deg");
    o_mzi->add_option("--a", oo.a, "Transmission of the arm-0 absorber");
    o_mzi->add_option("--b", oo.b, "Transmission of the arm-1 absorber");

    auto* o_bell = oracle_cmd->add_subcommand("bell", "Spin-path correlation");
    o_bell->add_option("--reflection", oo.reflection);
    o_bell->add_option("--alpha", oo.alpha, "Spin rotation angle");
    o_bell->add_option("--chi", oo.chi, "Phase difference");

    auto* o_rf = oracle_cmd->add_subcommand("rf", "RF experiment O/H");
    o_rf->add_option("--reflection", oo.reflection);
    o_rf->add_option("--chi", oo.chi, "Phase difference");
    o_rf->add_option("--phi", oo.phi, "RF2 phase");

    auto* o_shutter
        = oracle_cmd->add_subcommand("shutter", "Open/closed frequencies");
    o_shutter->add_option("--r1", oo.r1, "Reflection of population 1");
    o_shutter->add_option("--r2", oo.r2, "Reflection of population 2");
    o_shutter->add_option("--w1", oo.w1, "Weight of population 1");
    o_shutter->add_option("--v", oo.v, "Visibility parameter");
    o_shutter->add_option("--chi", oo.chi, "Phase difference");

    std::vector<std::string> rargs(args.rbegin(), args.rend());
    try
    {
        app.parse(rargs);
    }
    catch (CLI::ParseError const& e)
    {
        return app.exit(e, out, err);
    }

    if (app.get_subcommands().empty())
    {
        err << app.help();
        return 2;
    }

    try
    {
        for (std::size_t i = 0; i < run_subs.size(); ++i)
        {
            if (run_subs[i]->parsed())
            {
                return run_experiment_command(
                    experiments[i].name, run_opts[i], out);
            }
        }

        if (o_solve->parsed())
        {
            auto const s = oracle::solve_shutter_params(oo.r1, oo.v, oo.g);
            print_value(out, "R2", s.r2);
            print_value(out, "W1", s.w1);
        }
        else if (o_mzi->parsed())
        {
            auto const p = oracle::qt_mzi(
                oo.reflection, oo.a, oo.b, parse_angle(oo.chi, "--chi"));
            print_value(out, "O", p.o);
            print_value(out, "H", p.h);
        }
        else if (o_bell->parsed())
        {
            double const alpha = parse_angle(oo.alpha, "--alpha");
            double const chi = parse_angle(oo.chi, "--chi");
            print_value(
                out, "P_O_up", oracle::qt_bell_p_o(oo.reflection, alpha, chi));
            print_value(out, "E", oracle::qt_bell_E(alpha, chi));
        }
        else if (o_rf->parsed())
        {
            auto const p = oracle::qt_rf(oo.reflection,
                                         parse_angle(oo.chi, "--chi"),
                                         parse_angle(oo.phi, "--phi"));
            print_value(out, "O", p.o);
            print_value(out, "H", p.h);
        }
        else if (o_shutter->parsed())
        {
            double const chi = parse_angle(oo.chi, "--chi");
            auto const f = oracle::qt_shutter_two_population(
                oo.r1, oo.r2.value_or(oo.r1), oo.w1, oo.v, chi);
            print_value(out, "f_open", f.open);
            print_value(out, "f_closed", f.closed);
        }
        return 0;
    }
    catch (std::exception const& e)
    {
        err << "nisim: " << e.what() << '\n';
        return 1;
    }
}

//---------------------------------------------------------------------------//
}  // namespace nisim
