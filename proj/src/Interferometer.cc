//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Interferometer.cc
//---------------------------------------------------------------------------//
#include "nisim/Interferometer.hh"

namespace nisim
{
namespace
{
void fly(Particle& p, double nu)
{
    p.message = advance_time(p.message, nu, 1.0);
    p.flight_time += 1.0;
}
}  // namespace

//---------------------------------------------------------------------------//
Apparatus::Apparatus(double gamma)
{
    for (auto& s : splitters)
    {
        s = DlmState::cold(gamma);
    }
}

void Apparatus::cool()
{
    for (auto& s : splitters)
    {
        s = DlmState::cold(s.gamma);
    }
}

//---------------------------------------------------------------------------//
RunStreams::RunStreams(std::uint64_t seed, std::uint32_t cell)
    : source_noise(seed, StreamId::source_noise, cell)
    , arrival(seed, StreamId::arrival, cell)
    , splitter(seed, StreamId::splitter, cell)
    , absorber(seed, StreamId::absorber, cell)
    , analyzer(seed, StreamId::analyzer, cell)
    , shutter(seed, StreamId::shutter, cell)
    , population(seed, StreamId::population, cell)
    , random_chi(seed, StreamId::random_chi, cell)
{
}

//---------------------------------------------------------------------------//
Terminal transit(Particle& p,
                 double reflection,
                 Topology const& topo,
                 Apparatus& app,
                 RunStreams& rng)
{
    SplitterParams const params{reflection};
    auto split = [&](int bs, int port) {
        return dlm_process(app.splitters[bs],
                           params,
                           port,
                           p.message,
                           rng.splitter.uniform());
    };

    if (topo.shutter)
    {
        p.labels.insert(app.shutter.open ? "open" : "closed");
    }

    fly(p, topo.nu);
    auto out = split(0, 0);
    if (!out)
    {
        return Terminal::cold_start_fault;
    }
    p.message = out->message;
    fly(p, topo.nu);

    int const arm = out->port == 0 ? 0 : 1;
    if (arm == 0)
    {
        if (topo.mu_metal)
        {
            p.message = spin_turn_mu_metal(p.message, +1);
        }
        if (topo.absorber
            && !stochastic_absorb(*topo.absorber, rng.absorber.uniform()))
        {
            return Terminal::absorbed;
        }
        if (topo.chopper && !chopper_passes(*topo.chopper, p.arrival_time))
        {
            return Terminal::absorbed;
        }
        if (topo.shutter && !app.shutter.open)
        {
            return Terminal::absorbed;
        }
        if (topo.rf1)
        {
            p.message = rf_flip(p.message, *topo.rf1);
            p.message = energy_phase_down(p.message, topo.omega_t_down);
        }
    }
    else if (topo.mu_metal)
    {
        p.message = spin_turn_mu_metal(p.message, -1);
    }

    // BS1 on arm 0, BS2 on arm 1; only the reflected output continues
    out = split(1 + arm, 0);
    if (!out)
    {
        return Terminal::cold_start_fault;
    }
    if (out->port == 0)
    {
        return arm == 0 ? Terminal::lost_bs1 : Terminal::lost_bs2;
    }
    p.message = phase_shift(out->message, arm == 0 ? topo.phi0 : topo.phi1);
    fly(p, topo.nu);

    out = split(3, arm);
    if (!out)
    {
        return Terminal::cold_start_fault;
    }
    p.message = out->message;
    fly(p, topo.nu);

    Beam beam = Beam::h;
    if (out->port == 1)
    {
        beam = Beam::o;
        if (topo.rf2)
        {
            p.message = rf_flip(p.message, *topo.rf2);
        }
        if (topo.spin_rotator)
        {
            p.message = spin_rotate_x(p.message, *topo.spin_rotator);
        }
        if (topo.analyzer
            && !spin_analyze_up(p.message, rng.analyzer.uniform()))
        {
            return Terminal::rejected;
        }
    }

    if (topo.shutter)
    {
        shutter_on_detection(app.shutter, rng.shutter.uniform(), app.splitters);
    }
    return beam == Beam::o ? Terminal::detected_o : Terminal::detected_h;
}

//---------------------------------------------------------------------------//
}  // namespace nisim
