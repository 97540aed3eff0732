//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Oracle.hh
//! Quantum-theory predictions for the interferometer experiments.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "Message.hh"

namespace nisim
{
namespace oracle
{
//---------------------------------------------------------------------------//
/*!
 * Amplitudes Psi_{j,s} for paths j = 0..3 and spin s = up, down.
 *
 * Index 2 j + s. Path 2 exits as the H-beam, path 3 as the O-beam.
 */
using StateVector = std::array<Complex, 8>;

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

//! A 2x2 matrix acting on elements (first, second) of the state vector
struct PairOp
{
    Matrix2 m;
    int first;
    int second;
};

// Unit amplitude on path 0, spin up
StateVector incident_state();

// Apply ops in order; throws std::out_of_range on a bad index pair
StateVector propagate(StateVector psi, std::span<PairOp const> ops);

double path_probability(StateVector const& psi, int path);
double norm_sq(StateVector const& psi);

bool is_unitary(Matrix2 const& m, double tol = 1e-12);
double max_singular_value(Matrix2 const& m);

//---------------------------------------------------------------------------//
// ELEMENT MATRICES
//---------------------------------------------------------------------------//
//! Crystal plate amplitude: t = sqrt(T), r = i sqrt(R)
struct PlateAmplitudes
{
    Complex t;
    Complex r;

    static PlateAmplitudes from_reflection(double reflection);
};

// First plate: [[t, -r*], [r, t*]]
Matrix2 splitter_first(PlateAmplitudes const& p);
// Later plates: [[t*, r], [-r*, t]]
Matrix2 splitter_later(PlateAmplitudes const& p);
Matrix2 scalar(Complex c);
Matrix2 diag(Complex a, Complex b);

//---------------------------------------------------------------------------//
// OPERATOR CHAINS (in application order)
//---------------------------------------------------------------------------//
// Plain interferometer with arm absorptions a (path via BS1), b (via BS2)
std::vector<PairOp>
mzi_chain(double reflection, double a, double b, double phi0, double phi1);

// Bell test: mu-metal turners, phase shifters and spin rotator alpha
std::vector<PairOp>
bell_chain(double reflection, double alpha, double phi0, double phi1);

//! Coil and guide-field phases of the RF experiment
struct RfPhases
{
    double phi0{0};  //!< phase shifter on path 0
    double phi1{0};  //!< phase shifter on path 1
    double omega_t1{0};  //!< omega t1 of RF1
    double rf1_phase{0};  //!< varphi_1
    double omega_t2{0};  //!< omega t2 of RF2 (coil at half frequency)
    double rf2_phase{0};  //!< varphi_2
    double omega_t_down{0};  //!< spin-down phase omega t_down
};

// RF spin-flipper experiment with pi/2 spin rotator on the O-beam
std::vector<PairOp> rf_chain(double reflection, RfPhases const& phases);

//---------------------------------------------------------------------------//
// CLOSED FORMS
//---------------------------------------------------------------------------//
struct BeamProbabilities
{
    double h;
    double o;
};

BeamProbabilities qt_mzi(double reflection, double a, double b, double chi);

double qt_visibility_pure(double a, double b);

struct MixedChopper
{
    double p_o;
    double visibility;
};

MixedChopper qt_mixed_chopper(double reflection, double a, double chi);

// H-beam partner of the mixed-state chopper prediction
double qt_mixed_chopper_h(double reflection, double a, double chi);

// Spin-up O-beam probability of the Bell experiment, T R^2 [1 + cos(a + c)]
double qt_bell_p_o(double reflection, double alpha, double chi);
double qt_bell_E(double alpha, double chi);
double qt_bell_S(double alpha1, double chi1, double alpha2, double chi2);

// RF experiment with the guide-field phase compensated
BeamProbabilities qt_rf(double reflection, double chi, double phi);

// Uncompensated form; residual = omega t_down + (t2 - t1) omega / 2
double qt_rf_p_o_general(double reflection,
                         double chi,
                         double phi,
                         double residual_phase);

struct ShutterFreqs
{
    double open;
    double closed;
};

ShutterFreqs qt_shutter_freqs(double reflection, double v, double chi);
ShutterFreqs qt_shutter_two_population(
    double r1, double r2, double w1, double v, double chi);

struct ShutterSolution
{
    double r2;
    double w1;
};

// Closed-form (R2, W1) making max f_open = f_closed = g; throws
// std::domain_error naming the violated bound
ShutterSolution solve_shutter_params(double r1, double v, double g);

struct ShutterBranch
{
    double o;
    double h;
    double bs1;  //!< open: transmitted by BS1; closed: absorbed in Cd
    double bs2;
};

struct ShutterBranchTable
{
    ShutterBranch open;
    ShutterBranch closed;
};

ShutterBranchTable
qt_shutter_branch_probs(double reflection, double v, double chi);

//---------------------------------------------------------------------------//
}  // namespace oracle
}  // namespace nisim
