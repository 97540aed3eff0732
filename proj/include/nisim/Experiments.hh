//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Experiments.hh
//! Sweeps over interferometer settings and their result records.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "Components.hh"
#include "Dlm.hh"
#include "Message.hh"

namespace nisim
{
//---------------------------------------------------------------------------//
// CONFIGURATION
//---------------------------------------------------------------------------//
//! Splitter learning settings shared by every experiment
struct DlmConfig
{
    double gamma{0.99};
    //! Empty, or one gamma per splitter BS0..BS3
    std::vector<double> splitter_gamma;
    //! Return the splitters to the cold state before every setting
    bool reset_per_setting{false};
};

struct MziConfig
{
    double reflection{0.2};
    DlmConfig dlm{};
    //! Half-width of the source phase noise
    double noise_halfwidth{0};
    std::vector<double> chi;
    std::uint64_t n_particles{100000};
    double nu{0};
};

enum class AbsorberKind
{
    stochastic,
    chopper,
};

struct AbsorberConfig
{
    AbsorberKind kind{AbsorberKind::stochastic};
    double reflection{0.2};
    DlmConfig dlm{0.98, {}, false};
    std::vector<double> a;
    std::vector<double> chi;
    //! Particles per chopper cycle and number of cycles per phase setting
    std::uint64_t n_per_cycle{1};
    std::uint64_t n_cycles{10000};
};

struct BellConfig
{
    double reflection{0.2};
    DlmConfig dlm{};
    std::vector<double> alpha;
    std::vector<double> chi;
    std::uint64_t n_particles{10000};
    //! Draw chi per particle from the chi grid
    bool random_chi{false};
    //! Settings (alpha1, chi1, alpha2, chi2) of the reported CHSH value
    std::array<double, 4> chsh{0, pi / 4, pi / 2, -pi / 4};
};

struct RfConfig
{
    double reflection{0.5};
    DlmConfig dlm{};
    std::vector<double> phi;
    std::vector<double> chi;
    std::uint64_t n_particles{10000};
    double omega_t1{0};
    double rf1_phase{0};
    double omega_t2{0};
    double omega_t_down{0};
};

struct LowCountConfig
{
    double reflection{0.2};
    DlmConfig dlm{0.5, {}, false};
    std::vector<double> chi;
    std::uint64_t n_particles{1000};
    std::uint32_t n_replicas{30};
};

struct Population
{
    double reflection{0.4};
    double weight{1};
};

enum class ShutterMode
{
    always_open,
    always_closed,
    random_toggle,
};

struct ShutterConfig
{
    std::vector<Population> populations{{0.4, 1.0}};
    DlmConfig dlm{0.12, {}, false};
    std::vector<double> chi;
    std::uint64_t n_particles{250000};
    ShutterMode mode{ShutterMode::random_toggle};
    ShutterReset reset_mode{ShutterReset::reset_x};
    double toggle_probability{0.5};
    //! Visibility parameter of the quantum-theory comparison only
    double oracle_visibility{0.4};
};

//---------------------------------------------------------------------------//
// RESULTS
//---------------------------------------------------------------------------//
struct ResultRow
{
    std::vector<double> settings;
    std::string beam;
    std::string label;
    std::uint64_t count{0};
    double normalized{0};
    double oracle{0};
    double stderr_value{0};

    bool operator==(ResultRow const&) const = default;
};

struct ResultTable
{
    std::vector<std::string> setting_columns;
    std::vector<ResultRow> rows;

    bool operator==(ResultTable const&) const = default;
};

/*!
 * Everything needed to reproduce and interpret one run.
 *
 * Derived statistics keep insertion order so that serialized output is
 * stable.
 */
struct ExperimentRecord
{
    std::string experiment;
    std::uint64_t seed{0};
    nlohmann::ordered_json config;
    ResultTable table;
    std::vector<std::pair<std::string, double>> derived;
    std::uint64_t emitted{0};
    std::map<std::string, std::uint64_t> terminals;

    // Throws std::out_of_range for an unknown name
    double stat(std::string const& name) const;
    void add_stat(std::string name, double value);
};

//---------------------------------------------------------------------------//
// EXPERIMENTS
//---------------------------------------------------------------------------//
ExperimentRecord run_mzi(MziConfig const& cfg, std::uint64_t seed);
ExperimentRecord run_absorber(AbsorberConfig const& cfg, std::uint64_t seed);
ExperimentRecord run_bell(BellConfig const& cfg, std::uint64_t seed);
ExperimentRecord run_rf(RfConfig const& cfg, std::uint64_t seed);
ExperimentRecord run_low_count(LowCountConfig const& cfg, std::uint64_t seed);
ExperimentRecord run_shutter(ShutterConfig const& cfg, std::uint64_t seed);

// Bell run with chi drawn per particle
inline ExperimentRecord
run_bell_random_chi(BellConfig cfg, std::uint64_t seed)
{
    cfg.random_chi = true;
    return run_bell(cfg, seed);
}

// Learning trace as a record: x0 per event against its expectation
ExperimentRecord run_learning_trace(LearningTraceSpec const& spec);

//---------------------------------------------------------------------------//
// HELPERS
//---------------------------------------------------------------------------//
// Call fn(cell) for every cell, possibly concurrently; each cell must own
// its state and write only to its own slot
void for_each_cell(std::uint32_t n_cells,
                   std::function<void(std::uint32_t)> const& fn);

// Evenly spaced grid including both endpoints
std::vector<double> linspace(double start, double stop, std::size_t count);

// Index of the grid value congruent to an angle modulo 2 pi
std::optional<std::size_t> find_angle(std::vector<double> const& grid,
                                      double angle);

// Maximum |S| over all quadruples of a correlation grid e[alpha][chi]
double chsh_max(std::vector<std::vector<double>> const& e);

//---------------------------------------------------------------------------//
}  // namespace nisim
