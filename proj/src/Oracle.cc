//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Oracle.cc
//---------------------------------------------------------------------------//
#include "nisim/Oracle.hh"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nisim
{
namespace oracle
{
namespace
{
constexpr Complex imag_unit{0, 1};

void push_pair(std::vector<PairOp>& ops, Matrix2 const& m, int a, int b)
{
    ops.push_back({m, a, b});
}

//! Plate acting on both spin components of a pair of paths
void push_plate(std::vector<PairOp>& ops, Matrix2 const& m, int path_a, int path_b)
{
    push_pair(ops, m, 2 * path_a, 2 * path_b);
    push_pair(ops, m, 2 * path_a + 1, 2 * path_b + 1);
}

//! The four plates shared by every experiment, in application order
void push_bs0(std::vector<PairOp>& ops, PlateAmplitudes const& p)
{
    push_plate(ops, splitter_first(p), 0, 1);
}

void push_bs1_bs2(std::vector<PairOp>& ops, PlateAmplitudes const& p)
{
    push_plate(ops, splitter_first(p), 0, 2);
    push_plate(ops, splitter_later(p), 1, 3);
}

void push_bs3(std::vector<PairOp>& ops, PlateAmplitudes const& p)
{
    push_plate(ops, splitter_later(p), 2, 3);
}

Matrix2 spin_rotator_x(double alpha)
{
    double const c = std::cos(alpha / 2);
    double const s = std::sin(alpha / 2);
    return {{{c, imag_unit * s}, {imag_unit * s, c}}};
}

Matrix2 rf_flipper(double omega_t_plus_phi)
{
    Complex const e = std::polar(1.0, omega_t_plus_phi / 2);
    return {{{0, e}, {-std::conj(e), 0}}};
}

void require_probability(double v, char const* name)
{
    if (!(v >= 0 && v <= 1))
    {
        throw std::domain_error(std::string(name) + " must lie in [0, 1]");
    }
}
}  // namespace

//---------------------------------------------------------------------------//
StateVector incident_state()
{
    StateVector psi{};
    psi[0] = 1;
    return psi;
}

//---------------------------------------------------------------------------//
StateVector propagate(StateVector psi, std::span<PairOp const> ops)
{
    for (PairOp const& op : ops)
    {
        if (op.first < 0 || op.first >= 8 || op.second < 0 || op.second >= 8
            || op.first == op.second)
        {
            throw std::out_of_range("pair (" + std::to_string(op.first) + ","
                                    + std::to_string(op.second)
                                    + ") is not a valid index pair");
        }
        Complex const a = psi[op.first];
        Complex const b = psi[op.second];
        psi[op.first] = op.m[0][0] * a + op.m[0][1] * b;
        psi[op.second] = op.m[1][0] * a + op.m[1][1] * b;
    }
    return psi;
}

double path_probability(StateVector const& psi, int path)
{
    return std::norm(psi[2 * path]) + std::norm(psi[2 * path + 1]);
}

double norm_sq(StateVector const& psi)
{
    double sum = 0;
    for (auto const& c : psi)
    {
        sum += std::norm(c);
    }
    return sum;
}

//---------------------------------------------------------------------------//
bool is_unitary(Matrix2 const& m, double tol)
{
    // M^dagger M == I
    for (int i = 0; i < 2; ++i)
    {
        for (int j = 0; j < 2; ++j)
        {
            Complex sum = 0;
            for (int k = 0; k < 2; ++k)
            {
                sum += std::conj(m[k][i]) * m[k][j];
            }
            Complex const expected = i == j ? 1.0 : 0.0;
            if (std::abs(sum - expected) > tol)
            {
                return false;
            }
        }
    }
    return true;
}

double max_singular_value(Matrix2 const& m)
{
    // Largest eigenvalue of the Hermitian matrix M^dagger M
    double const a = std::norm(m[0][0]) + std::norm(m[1][0]);
    double const d = std::norm(m[0][1]) + std::norm(m[1][1]);
    Complex const b = std::conj(m[0][0]) * m[0][1]
                      + std::conj(m[1][0]) * m[1][1];
    double const half_trace = (a + d) / 2;
    double const disc = std::sqrt((a - d) * (a - d) / 4 + std::norm(b));
    return std::sqrt(half_trace + disc);
}

//---------------------------------------------------------------------------//
PlateAmplitudes PlateAmplitudes::from_reflection(double reflection)
{
    return {Complex{std::sqrt(1 - reflection), 0},
            Complex{0, std::sqrt(reflection)}};
}

Matrix2 splitter_first(PlateAmplitudes const& p)
{
    return {{{p.t, -std::conj(p.r)}, {p.r, std::conj(p.t)}}};
}

Matrix2 splitter_later(PlateAmplitudes const& p)
{
    return {{{std::conj(p.t), p.r}, {-std::conj(p.r), p.t}}};
}

Matrix2 scalar(Complex c)
{
    return {{{c, 0}, {0, c}}};
}

Matrix2 diag(Complex a, Complex b)
{
    return {{{a, 0}, {0, b}}};
}

//---------------------------------------------------------------------------//
std::vector<PairOp>
mzi_chain(double reflection, double a, double b, double phi0, double phi1)
{
    auto const p = PlateAmplitudes::from_reflection(reflection);
    std::vector<PairOp> ops;
    push_bs0(ops, p);
    push_bs1_bs2(ops, p);
    push_pair(ops, scalar(std::polar(std::sqrt(a), phi0)), 4, 5);
    push_pair(ops, scalar(std::polar(std::sqrt(b), phi1)), 6, 7);
    push_bs3(ops, p);
    return ops;
}

//---------------------------------------------------------------------------//
std::vector<PairOp>
bell_chain(double reflection, double alpha, double phi0, double phi1)
{
    auto const p = PlateAmplitudes::from_reflection(reflection);
    double const h = 1 / std::sqrt(2.0);
    std::vector<PairOp> ops;
    push_bs0(ops, p);
    // Mu-metal: -pi/2 about y on path 0, +pi/2 on path 1
    push_pair(ops, {{{h, -h}, {h, h}}}, 0, 1);
    push_pair(ops, {{{h, h}, {-h, h}}}, 2, 3);
    push_bs1_bs2(ops, p);
    push_pair(ops, scalar(std::polar(1.0, phi0)), 4, 5);
    push_pair(ops, scalar(std::polar(1.0, phi1)), 6, 7);
    push_bs3(ops, p);
    push_pair(ops, spin_rotator_x(alpha), 6, 7);
    return ops;
}

//---------------------------------------------------------------------------//
/*!
 * The spin-down phase acts on path 0 right after RF1 flips the spin, and
 * RF2 acts on the O-beam pair (6, 7).
 */
std::vector<PairOp> rf_chain(double reflection, RfPhases const& f)
{
    auto const p = PlateAmplitudes::from_reflection(reflection);
    std::vector<PairOp> ops;
    push_bs0(ops, p);
    push_pair(ops, scalar(std::polar(1.0, f.phi0)), 0, 1);
    push_pair(ops, scalar(std::polar(1.0, f.phi1)), 2, 3);
    push_pair(ops, rf_flipper(f.omega_t1 + f.rf1_phase), 0, 1);
    push_pair(ops, diag(1.0, std::polar(1.0, f.omega_t_down)), 0, 1);
    push_bs1_bs2(ops, p);
    push_bs3(ops, p);
    push_pair(ops, rf_flipper(f.omega_t2 / 2 + f.rf2_phase), 6, 7);
    push_pair(ops, spin_rotator_x(pi / 2), 6, 7);
    return ops;
}

//---------------------------------------------------------------------------//
BeamProbabilities qt_mzi(double reflection, double a, double b, double chi)
{
    double const r = reflection;
    double const t = 1 - r;
    double const sab = std::sqrt(a * b);
    double const c = std::cos(chi);
    return {r * (a * t * t + b * r * r - 2 * r * t * sab * c),
            r * r * t * (a + b + 2 * sab * c)};
}

double qt_visibility_pure(double a, double b)
{
    if (a + b == 0)
    {
        return 0;
    }
    return 2 * std::sqrt(a * b) / (a + b);
}

MixedChopper qt_mixed_chopper(double reflection, double a, double chi)
{
    double const r = reflection;
    double const t = 1 - r;
    return {t * r * r * (1 + a + 2 * a * std::cos(chi)), 2 * a / (1 + a)};
}

double qt_mixed_chopper_h(double reflection, double a, double chi)
{
    return (1 - a) * qt_mzi(reflection, 0, 1, chi).h
           + a * qt_mzi(reflection, 1, 1, chi).h;
}

//---------------------------------------------------------------------------//
double qt_bell_p_o(double reflection, double alpha, double chi)
{
    double const r = reflection;
    return (1 - r) * r * r * (1 + std::cos(alpha + chi));
}

double qt_bell_E(double alpha, double chi)
{
    return std::cos(alpha + chi);
}

double qt_bell_S(double alpha1, double chi1, double alpha2, double chi2)
{
    return qt_bell_E(alpha1, chi1) + qt_bell_E(alpha1, chi2)
           - qt_bell_E(alpha2, chi1) + qt_bell_E(alpha2, chi2);
}

//---------------------------------------------------------------------------//
BeamProbabilities qt_rf(double reflection, double chi, double phi)
{
    double const r = reflection;
    double const t = 1 - r;
    return {r * (t * t + r * r), qt_rf_p_o_general(reflection, chi, phi, 0)};
}

double qt_rf_p_o_general(double reflection,
                         double chi,
                         double phi,
                         double residual_phase)
{
    double const r = reflection;
    return (1 - r) * r * r * (1 + std::sin(chi + residual_phase + phi));
}

//---------------------------------------------------------------------------//
ShutterFreqs qt_shutter_freqs(double reflection, double v, double chi)
{
    double const r = reflection;
    double const t = 1 - r;
    return {2 * t * r * (1 + v * std::cos(chi)), t};
}

ShutterFreqs qt_shutter_two_population(
    double r1, double r2, double w1, double v, double chi)
{
    double const w2 = 1 - w1;
    double const t1 = 1 - r1;
    double const t2 = 1 - r2;
    double const num = w1 * t1 * r1 * r1 + w2 * t2 * r2 * r2;
    return {2 * num / (w1 * r1 + w2 * r2) * (1 + v * std::cos(chi)),
            num / (w1 * r1 * r1 + w2 * r2 * r2)};
}

//---------------------------------------------------------------------------//
ShutterSolution solve_shutter_params(double r1, double v, double g)
{
    if (!(r1 > 0 && r1 < 1))
    {
        throw std::domain_error("R1 must satisfy 0 < R1 < 1");
    }
    if (!(v >= 0 && v <= 1))
    {
        throw std::domain_error("v must satisfy 0 <= v <= 1");
    }
    if (!(g >= 0 && g <= 1))
    {
        throw std::domain_error("g must satisfy 0 <= g <= 1");
    }
    double const vp = v + 1;
    double const denom_r2 = 1 - 2 * vp * r1;
    if (denom_r2 == 0)
    {
        throw std::domain_error(
            "R1 = 1/(2(1+v)) is a pole of the closed-form solution");
    }
    double const r2 = (1 - g - r1) / denom_r2;

    double const k = -2 * v + 2 * g * vp - 1;
    double const denom_w1 = 8 * vp * vp * vp * std::pow(r1, 4)
                            - 12 * vp * vp * std::pow(r1, 3)
                            + 6 * vp * r1 * r1 - 2 * (g + (g - 1) * v) * r1
                            - (g - 1) * k;
    if (denom_w1 == 0)
    {
        throw std::domain_error("W1 denominator vanishes for these inputs");
    }
    double const w1 = (1 - g - r1) * k / denom_w1;

    if (!(r2 > 0 && r2 < 1))
    {
        throw std::domain_error("solution violates 0 < R2 < 1 (R2 = "
                                + std::to_string(r2) + ")");
    }
    if (!(w1 > 0 && w1 < 1))
    {
        throw std::domain_error("solution violates 0 < W1 < 1 (W1 = "
                                + std::to_string(w1) + ")");
    }
    return {r2, w1};
}

//---------------------------------------------------------------------------//
ShutterBranchTable
qt_shutter_branch_probs(double reflection, double v, double chi)
{
    require_probability(reflection, "R");
    double const r = reflection;
    double const t = 1 - r;
    double const c = v * std::cos(chi);
    ShutterBranchTable table;
    table.open = {2 * t * r * r * (1 + c),
                  r * (t * t + r * r - 2 * r * t * c),
                  t * t,
                  t * r};
    table.closed = {t * r * r, r * r * r, t, r * t};
    return table;
}

//---------------------------------------------------------------------------//
}  // namespace oracle
}  // namespace nisim
