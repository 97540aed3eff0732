//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Components.cc
//---------------------------------------------------------------------------//
#include "nisim/Components.hh"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nisim
{
//---------------------------------------------------------------------------//
Source::Source(SourceConfig const& cfg, RngStream& arrival_rng) : cfg_{cfg}
{
    arrivals_.resize(cfg.n_particles);
    double const span = cfg.n_intervals;
    if (cfg.arrival_model == ArrivalModel::poisson)
    {
        for (double& t : arrivals_)
        {
            t = span * arrival_rng.uniform();
        }
        std::sort(arrivals_.begin(), arrivals_.end());
    }
    else
    {
        double const dt = span / static_cast<double>(cfg.n_particles);
        for (std::size_t i = 0; i < arrivals_.size(); ++i)
        {
            arrivals_[i] = dt * static_cast<double>(i);
        }
    }
}

//---------------------------------------------------------------------------//
Particle Source::emit(RngStream& noise_rng)
{
    Particle p = emit_particle(cfg_, noise_rng);
    if (next_ < arrivals_.size())
    {
        p.arrival_time = arrivals_[next_];
    }
    ++next_;
    return p;
}

//---------------------------------------------------------------------------//
/*!
 * Create a message with the configured spin and, for a partially coherent
 * beam, independent uniform phase noise on psi1 and psi2.
 */
Particle emit_particle(SourceConfig const& cfg, RngStream& noise_rng)
{
    SpinAngles a = cfg.initial_spin;
    if (double const d = cfg.coherence_noise_halfwidth; d > 0)
    {
        a.psi1 += d * (2 * noise_rng.uniform() - 1);
        a.psi2 += d * (2 * noise_rng.uniform() - 1);
    }
    Particle p;
    p.message = make_message(a.psi1, a.psi2, a.theta);
    return p;
}

//---------------------------------------------------------------------------//
bool chopper_passes(ChopperConfig const& cfg, double arrival_time)
{
    double const phase = arrival_time - std::floor(arrival_time);
    return phase < cfg.pass_fraction;
}

//---------------------------------------------------------------------------//
void shutter_on_detection(ShutterState& s,
                          double uniform,
                          std::span<DlmState> splitters)
{
    if (!(uniform < s.toggle_probability))
    {
        return;
    }
    bool const closing = s.open;
    s.open = !s.open;
    if (!closing)
    {
        return;
    }
    for (DlmState& dlm : splitters)
    {
        if (s.reset_mode == ShutterReset::reset_x)
        {
            dlm.x = {0, 0};
        }
        else
        {
            dlm.suspended = true;
        }
    }
}

//---------------------------------------------------------------------------//
char const* to_string(Beam b)
{
    return b == Beam::o ? "O" : "H";
}

char const* to_string(Terminal t)
{
    switch (t)
    {
        case Terminal::detected_o:
            return "detected_o";
        case Terminal::detected_h:
            return "detected_h";
        case Terminal::lost_bs1:
            return "lost_bs1";
        case Terminal::lost_bs2:
            return "lost_bs2";
        case Terminal::absorbed:
            return "absorbed";
        case Terminal::rejected:
            return "rejected";
        case Terminal::cold_start_fault:
            return "cold_start_fault";
        case Terminal::size_:
            break;
    }
    return "?";
}

//---------------------------------------------------------------------------//
void Counters::detect(Particle const& p, Beam beam, std::size_t setting)
{
    ++counts_[Key{setting, beam, "all"}];
    for (auto const& label : p.labels)
    {
        ++counts_[Key{setting, beam, label}];
    }
    this->record(beam == Beam::o ? Terminal::detected_o
                                 : Terminal::detected_h);
}

std::uint64_t Counters::count(std::size_t setting,
                              Beam beam,
                              std::string const& label) const
{
    auto it = counts_.find(Key{setting, beam, label});
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t Counters::total_terminal() const
{
    return std::accumulate(terminal_.begin(), terminal_.end(), std::uint64_t{0});
}

//---------------------------------------------------------------------------//
}  // namespace nisim
