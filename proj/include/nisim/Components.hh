//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Components.hh
//! Event processors other than the beam splitters.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "Dlm.hh"
#include "Message.hh"
#include "Random.hh"

namespace nisim
{
//---------------------------------------------------------------------------//
// SOURCE
//---------------------------------------------------------------------------//
enum class ArrivalModel
{
    uniform_sequential,  //!< evenly spaced over the interval
    poisson,  //!< sorted uniform times over the interval
};

struct SpinAngles
{
    double psi1{0};
    double psi2{0};
    double theta{0};
};

struct SourceConfig
{
    std::uint64_t n_particles{1};
    //! Half-width of the uniform phase noise added to psi1 and psi2
    double coherence_noise_halfwidth{0};
    SpinAngles initial_spin{};
    ArrivalModel arrival_model{ArrivalModel::uniform_sequential};
    //! Number of unit (chopper) intervals the arrivals are spread over
    double n_intervals{1};
};

//---------------------------------------------------------------------------//
/*!
 * Particle source for one setting of a sweep.
 *
 * Arrival times are drawn up front and handed out in chronological order;
 * the source emits the next particle only when asked, i.e. after the
 * previous one has left the apparatus.
 */
class Source
{
  public:
    Source(SourceConfig const& cfg, RngStream& arrival_rng);

    bool exhausted() const { return next_ == arrivals_.size(); }
    std::size_t emitted() const { return next_; }

    Particle emit(RngStream& noise_rng);

    std::span<double const> arrival_times() const { return arrivals_; }

  private:
    SourceConfig cfg_;
    std::vector<double> arrivals_;
    std::size_t next_{0};
};

// Stateless single-particle source (arrival time 0)
Particle emit_particle(SourceConfig const& cfg, RngStream& noise_rng);

//---------------------------------------------------------------------------//
// ABSORBERS
//---------------------------------------------------------------------------//
//! Pass iff u < a
inline bool stochastic_absorb(double pass_probability, double uniform)
{
    return uniform < pass_probability;
}

struct ChopperConfig
{
    //! Open during [0, a) of each unit cycle
    double pass_fraction{1};
};

bool chopper_passes(ChopperConfig const& cfg, double arrival_time);

//---------------------------------------------------------------------------//
// SHUTTER
//---------------------------------------------------------------------------//
enum class ShutterReset
{
    reset_x,  //!< x <- (0, 0) on every closing
    gamma_zero,  //!< gamma <- 0 until each splitter's next output
};

struct ShutterState
{
    bool open{true};
    double toggle_probability{0.5};
    ShutterReset reset_mode{ShutterReset::reset_x};
};

// Called once per detection; toggles iff u < toggle probability
void shutter_on_detection(ShutterState& s,
                          double uniform,
                          std::span<DlmState> splitters);

//---------------------------------------------------------------------------//
// ANALYZER AND DETECTORS
//---------------------------------------------------------------------------//
//! Accept iff |c_up|^2 > u
inline bool spin_analyze_up(Message const& m, double uniform)
{
    return std::norm(m.up) > uniform;
}

enum class Beam
{
    o,
    h
};

char const* to_string(Beam b);

//! Where a particle's trajectory ended
enum class Terminal
{
    detected_o,
    detected_h,
    lost_bs1,
    lost_bs2,
    absorbed,
    rejected,
    cold_start_fault,
    size_
};

char const* to_string(Terminal t);

//---------------------------------------------------------------------------//
/*!
 * Detector counts keyed on (setting index, beam, label).
 *
 * Also tallies every terminal category so that particle conservation can be
 * checked exactly.
 */
class Counters
{
  public:
    struct Key
    {
        std::size_t setting;
        Beam beam;
        std::string label;

        auto operator<=>(Key const&) const = default;
    };

    void detect(Particle const& p, Beam beam, std::size_t setting);
    void record(Terminal t) { ++terminal_[static_cast<std::size_t>(t)]; }

    std::uint64_t count(std::size_t setting,
                        Beam beam,
                        std::string const& label = "all") const;
    std::uint64_t terminal(Terminal t) const
    {
        return terminal_[static_cast<std::size_t>(t)];
    }
    std::uint64_t total_terminal() const;

    std::map<Key, std::uint64_t> const& counts() const { return counts_; }

  private:
    std::map<Key, std::uint64_t> counts_;
    std::array<std::uint64_t, static_cast<std::size_t>(Terminal::size_)>
        terminal_{};
};

// Free-function form of Counters::detect
inline void detect(Particle const& p,
                   Beam beam,
                   std::size_t setting,
                   Counters& counters)
{
    counters.detect(p, beam, setting);
}

//---------------------------------------------------------------------------//
}  // namespace nisim
