//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Message.hh
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <string>

namespace nisim
{
//---------------------------------------------------------------------------//
using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

//---------------------------------------------------------------------------//
/*!
 * Two-component complex unit vector carried by each neutron.
 *
 * The overall phase encodes the time of flight and the relative magnitude
 * and phase of the components encode the direction of the magnetic moment
 * (Bloch-sphere representation). Every transformation below is unitary.
 */
struct Message
{
    Complex up{1.0, 0.0};
    Complex down{0.0, 0.0};

    double norm_sq() const { return std::norm(up) + std::norm(down); }
};

//! Rotation angles of a magnetic field, with exposure time folded in
struct FieldVector
{
    double bx{0};
    double by{0};
    double bz{0};
};

//---------------------------------------------------------------------------//
/*!
 * A message plus the bookkeeping the event processors need.
 *
 * The arrival time is measured in chopper cycles. Labels tag detections
 * (e.g. the shutter state at the moment of detection).
 */
struct Particle
{
    Message message;
    double flight_time{0};
    double arrival_time{0};
    std::set<std::string> labels;
};

//---------------------------------------------------------------------------//
// MESSAGE ALGEBRA
//---------------------------------------------------------------------------//

//! Build a message from its three angles; theta is the polar angle
inline Message make_message(double psi1, double psi2, double theta)
{
    return {std::polar(std::cos(theta / 2), psi1),
            std::polar(std::sin(theta / 2), psi2)};
}

//! Multiply both components by exp(i nu t)
inline Message advance_time(Message const& m, double nu, double t)
{
    Complex const phase = std::polar(1.0, nu * t);
    return {phase * m.up, phase * m.down};
}

Message rotate_field(Message const& m, FieldVector const& b);

//! Global phase shift exp(i phi)
inline Message phase_shift(Message const& m, double phi)
{
    return advance_time(m, phi, 1.0);
}

//! Mu-metal spin turner: exp(i sign pi sigma_y / 4)
inline Message spin_turn_mu_metal(Message const& m, int sign)
{
    return rotate_field(m, {0, sign * pi / 4, 0});
}

//! Spin rotator about x: exp(i alpha sigma_x / 2)
inline Message spin_rotate_x(Message const& m, double alpha)
{
    return rotate_field(m, {alpha / 2, 0, 0});
}

Message rf_flip(Message const& m, double omega_t_plus_phi);

//! Phase exp(i omega t_down) on the spin-down component only
inline Message energy_phase_down(Message const& m, double omega_t_down)
{
    return {m.up, std::polar(1.0, omega_t_down) * m.down};
}

//---------------------------------------------------------------------------//
}  // namespace nisim
