//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Interferometer.hh
//! Four-plate interferometer wiring and the single-particle transit.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "Components.hh"
#include "Dlm.hh"
#include "Message.hh"
#include "Random.hh"

namespace nisim
{
//---------------------------------------------------------------------------//
/*!
 * Element layout of one interferometer setting.
 *
 * BS0 sends transmitted particles along arm 0 to BS1 and reflected ones
 * along arm 1 to BS2. The reflected outputs of BS1 and BS2 meet at BS3
 * (arm 0 on input port 0, arm 1 on input port 1); transmitted outputs of
 * BS1 and BS2 leave the apparatus. BS3 output port 0 is the H-beam and
 * port 1 the O-beam.
 *
 * Absorber, chopper, shutter and RF1 sit on arm 0 before BS1. The phase
 * shifters act on the arms between BS1/BS2 and BS3.
 */
struct Topology
{
    double phi0{0};  //!< phase shifter on arm 0
    double phi1{0};  //!< phase shifter on arm 1
    double nu{0};  //!< message frequency; one time unit per segment

    //! Mu-metal turners: +pi/2 about y on arm 0, -pi/2 on arm 1
    bool mu_metal{false};

    //! Stochastic absorber pass probability on arm 0
    std::optional<double> absorber;
    std::optional<ChopperConfig> chopper;
    //! Cd shutter on arm 0, state held by the apparatus
    bool shutter{false};

    //! RF1 flipper argument on arm 0, followed by the spin-down phase
    std::optional<double> rf1;
    double omega_t_down{0};

    //! O-beam: RF2 flipper argument, spin rotator angle, spin analyzer
    std::optional<double> rf2;
    std::optional<double> spin_rotator;
    bool analyzer{false};
};

//---------------------------------------------------------------------------//
//! Mutable processor state of one run
struct Apparatus
{
    std::array<DlmState, 4> splitters;
    ShutterState shutter;

    explicit Apparatus(double gamma);

    // Return every splitter to the cold state, keeping gamma
    void cool();
};

//---------------------------------------------------------------------------//
//! All random substreams of one run cell
struct RunStreams
{
    RngStream source_noise;
    RngStream arrival;
    RngStream splitter;
    RngStream absorber;
    RngStream analyzer;
    RngStream shutter;
    RngStream population;
    RngStream random_chi;

    RunStreams(std::uint64_t seed, std::uint32_t cell);
};

//---------------------------------------------------------------------------//
/*!
 * Send one particle through the apparatus.
 *
 * All four splitters use the given reflection. For shutter topologies the
 * particle is labeled with the shutter state and, if detected, the
 * shutter is given its chance to toggle. The caller tallies the result.
 */
Terminal transit(Particle& p,
                 double reflection,
                 Topology const& topo,
                 Apparatus& app,
                 RunStreams& rng);

//---------------------------------------------------------------------------//
}  // namespace nisim
