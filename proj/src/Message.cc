//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Message.cc
//---------------------------------------------------------------------------//
#include "nisim/Message.hh"

namespace nisim
{
//---------------------------------------------------------------------------//
/*!
 * Apply exp(i (sigma . b)) to a message.
 *
 * For a Pauli combination the exponential has the closed form
 * cos|b| I + i sin|b| (b/|b|) . sigma.
 */
Message rotate_field(Message const& m, FieldVector const& b)
{
    double const angle = std::sqrt(b.bx * b.bx + b.by * b.by + b.bz * b.bz);
    if (angle == 0)
    {
        return m;
    }
    double const c = std::cos(angle);
    double const s = std::sin(angle) / angle;
    Complex const i{0, 1};

    // n . sigma = [[nz, nx - i ny], [nx + i ny, -nz]] scaled by s
    Complex const u00 = c + i * s * b.bz;
    Complex const u11 = c - i * s * b.bz;
    Complex const u01 = i * s * Complex{b.bx, -b.by};
    Complex const u10 = i * s * Complex{b.bx, b.by};

    return {u00 * m.up + u01 * m.down, u10 * m.up + u11 * m.down};
}

//---------------------------------------------------------------------------//
/*!
 * Radio-frequency spin flipper in the rotating-frame approximation.
 *
 * With the flip condition met the coil acts as
 * exp(i Omega S_z) exp(i pi S_y), i.e. [[0, e^{i Omega/2}],
 * [-e^{-i Omega/2}, 0]]. The phases on the two off-diagonal entries are
 * conjugate; this is what carries the coil phase into the relative phase
 * between the spin components.
 */
Message rf_flip(Message const& m, double omega_t_plus_phi)
{
    Complex const e = std::polar(1.0, omega_t_plus_phi / 2);
    return {e * m.down, -std::conj(e) * m.up};
}

//---------------------------------------------------------------------------//
}  // namespace nisim
