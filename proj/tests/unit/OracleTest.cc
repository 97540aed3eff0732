//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/OracleTest.cc
//---------------------------------------------------------------------------//
#include "nisim/Oracle.hh"

#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace nisim
{
namespace oracle
{
namespace
{
StateVector run(std::vector<PairOp> const& ops)
{
    return propagate(incident_state(), ops);
}

double up_prob(StateVector const& psi, int path)
{
    return std::norm(psi[2 * path]);
}

}  // namespace

//---------------------------------------------------------------------------//
TEST(OracleTest, element_matrices_unitary)
{
    auto const p = PlateAmplitudes::from_reflection(0.3);
    EXPECT_NEAR(std::norm(p.t) + std::norm(p.r), 1, 1e-15);
    EXPECT_TRUE(is_unitary(splitter_first(p)));
    EXPECT_TRUE(is_unitary(splitter_later(p)));
    EXPECT_TRUE(is_unitary(scalar(std::polar(1.0, 0.7))));
    EXPECT_FALSE(is_unitary(scalar(0.5)));
    EXPECT_NEAR(max_singular_value(scalar(std::sqrt(0.3))),
                std::sqrt(0.3),
                1e-15);
    EXPECT_NEAR(max_singular_value(diag(0.2, Complex{0, -0.9})), 0.9, 1e-15);
}

TEST(OracleTest, propagate_rejects_bad_pairs)
{
    std::vector<PairOp> bad{{scalar(1), 0, 8}};
    EXPECT_THROW(propagate(incident_state(), bad), std::out_of_range);
    std::vector<PairOp> same{{scalar(1), 3, 3}};
    EXPECT_THROW(propagate(incident_state(), same), std::out_of_range);
}

TEST(OracleTest, propagate_preserves_norm_without_absorbers)
{
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 50; ++i)
    {
        auto const psi = run(mzi_chain(u(gen), 1, 1, 6 * u(gen), 6 * u(gen)));
        EXPECT_NEAR(norm_sq(psi), 1, 1e-13);
        auto const pb = run(bell_chain(u(gen), 6 * u(gen), 0, 6 * u(gen)));
        EXPECT_NEAR(norm_sq(pb), 1, 1e-13);
    }
}

// Spot values of the MZI closed form at chi = 0: the O-beam sees
// constructive interference R^2 T (sqrt a + sqrt b)^2
TEST(OracleTest, mzi_closed_form_spot_values)
{
    auto const p = qt_mzi(0.2, 1, 1, 0);
    EXPECT_NEAR(p.o, 0.04 * 0.8 * 4, 1e-15);
    EXPECT_NEAR(p.h, 0.2 * (0.64 + 0.04 - 2 * 0.16), 1e-15);
    // One arm blocked: no chi dependence
    EXPECT_DOUBLE_EQ(qt_mzi(0.2, 0, 1, 0.3).o, qt_mzi(0.2, 0, 1, 2.1).o);
    EXPECT_DOUBLE_EQ(qt_visibility_pure(1, 1), 1);
    EXPECT_NEAR(qt_visibility_pure(0.25, 1), 0.8, 1e-15);
    EXPECT_EQ(qt_visibility_pure(0, 0), 0);
}

TEST(OracleTest, mzi_chain_matches_closed_form)
{
    for (double a : {1.0, 0.3, 0.0})
    {
        for (double chi : {0.0, 1.0, 2.0, 4.0})
        {
            auto const psi = run(mzi_chain(0.2, a, 1, 0, chi));
            auto const qt = qt_mzi(0.2, a, 1, chi);
            EXPECT_NEAR(path_probability(psi, 3), qt.o, 1e-14);
            EXPECT_NEAR(path_probability(psi, 2), qt.h, 1e-14);
        }
    }
}

TEST(OracleTest, mixed_chopper_is_mixture)
{
    double const r = 0.2, a = 0.4, chi = 0.9;
    auto const m = qt_mixed_chopper(r, a, chi);
    double const mix = (1 - a) * qt_mzi(r, 0, 1, chi).o
                       + a * qt_mzi(r, 1, 1, chi).o;
    EXPECT_NEAR(m.p_o, mix, 1e-15);
    EXPECT_NEAR(m.visibility, 2 * a / (1 + a), 1e-15);
}

TEST(OracleTest, bell_chain_matches_closed_form)
{
    for (double alpha : {0.0, 0.7, 2.0})
    {
        for (double chi : {0.0, 1.3, 3.0})
        {
            // chi is the phase of path 0 relative to path 1
            auto const psi = run(bell_chain(0.2, alpha, chi, 0));
            EXPECT_NEAR(up_prob(psi, 3), qt_bell_p_o(0.2, alpha, chi), 1e-14);
        }
    }
    EXPECT_NEAR(qt_bell_S(0, pi / 4, pi / 2, -pi / 4), 2 * std::sqrt(2.0),
                1e-14);
}

TEST(OracleTest, rf_chain_matches_closed_form)
{
    for (double chi : {0.0, 1.0, 2.5})
    {
        for (double phi : {0.0, 0.8, 3.5})
        {
            RfPhases f;
            f.phi0 = chi;
            f.rf2_phase = phi;
            auto const psi = run(rf_chain(0.5, f));
            auto const qt = qt_rf(0.5, chi, phi);
            EXPECT_NEAR(up_prob(psi, 3), qt.o, 1e-14);
            EXPECT_NEAR(path_probability(psi, 2), qt.h, 1e-14);
        }
    }
    EXPECT_NEAR(qt_rf(0.5, 0, pi / 2).o, 0.25, 1e-15);
    EXPECT_NEAR(qt_rf(0.5, 0, 0).h, 0.25, 1e-15);
}

TEST(OracleTest, rf_residual_phase_shifts_fringe)
{
    RfPhases f;
    f.phi0 = 0.4;
    f.rf2_phase = 0.3;
    f.omega_t1 = 0.2;
    f.rf1_phase = 0.5;
    f.omega_t2 = 0.9;
    f.omega_t_down = 0.6;
    double const residual
        = f.omega_t_down + (f.omega_t2 - f.omega_t1) / 2 - f.rf1_phase / 2;
    auto const psi = run(rf_chain(0.5, f));
    EXPECT_NEAR(up_prob(psi, 3),
                qt_rf_p_o_general(0.5, f.phi0, f.rf2_phase, residual),
                1e-14);
}

//---------------------------------------------------------------------------//
TEST(ShutterOracleTest, branch_tables_sum_to_one)
{
    for (double r : {0.1, 0.36, 0.5, 0.9})
    {
        for (double chi : {0.0, 2.0})
        {
            auto const t = qt_shutter_branch_probs(r, 0.4, chi);
            EXPECT_NEAR(t.open.o + t.open.h + t.open.bs1 + t.open.bs2, 1,
                        1e-15);
            EXPECT_NEAR(
                t.closed.o + t.closed.h + t.closed.bs1 + t.closed.bs2, 1,
                1e-15);
            // Relative frequencies follow from the branch table
            auto const f = qt_shutter_freqs(r, 0.4, chi);
            EXPECT_NEAR(t.open.o / (t.open.o + t.open.h), f.open, 1e-14);
            EXPECT_NEAR(t.closed.o / (t.closed.o + t.closed.h), f.closed,
                        1e-14);
        }
    }
    auto const t = qt_shutter_branch_probs(0.3, 1, 0);
    EXPECT_NEAR(t.open.o, 4 * 0.7 * 0.09, 1e-15);
}

TEST(ShutterOracleTest, single_population_limits)
{
    auto const f = qt_shutter_freqs(0.36, 0.4, 0);
    // "approximately equal": 2 T R (1 + v) = 0.645 here
    EXPECT_NEAR(f.open, 0.64, 0.006);
    EXPECT_NEAR(f.closed, 0.64, 1e-15);
    auto const flat = qt_shutter_freqs(0.3, 0, 0.0);
    EXPECT_DOUBLE_EQ(flat.open, qt_shutter_freqs(0.3, 0, 2.0).open);

    for (double chi : {0.0, 1.0})
    {
        auto const a = qt_shutter_two_population(0.3, 0.3, 0.6, 0.4, chi);
        auto const b = qt_shutter_two_population(0.3, 0.8, 1.0, 0.4, chi);
        auto const s = qt_shutter_freqs(0.3, 0.4, chi);
        EXPECT_NEAR(a.open, s.open, 1e-15);
        EXPECT_NEAR(a.closed, s.closed, 1e-15);
        EXPECT_NEAR(b.open, s.open, 1e-15);
        EXPECT_NEAR(b.closed, s.closed, 1e-15);
    }
}

TEST(ShutterOracleTest, rounded_solution_gives_target)
{
    auto const f = qt_shutter_two_population(0.2, 0.84, 0.93, 0.4, 0);
    EXPECT_NEAR(f.open, 0.43, 0.005);
    EXPECT_NEAR(f.closed, 0.43, 0.005);
}

TEST(ShutterOracleTest, solve_satisfies_defining_equations)
{
    for (double g : {0.40, 0.43, 0.46})
    {
        auto const s = solve_shutter_params(0.2, 0.4, g);
        auto const f = qt_shutter_two_population(0.2, s.r2, s.w1, 0.4, 0);
        EXPECT_NEAR(f.open, g, 1e-12);
        EXPECT_NEAR(f.closed, g, 1e-12);
    }
}

TEST(ShutterOracleTest, solve_errors)
{
    EXPECT_THROW(solve_shutter_params(0, 0.4, 0.43), std::domain_error);
    EXPECT_THROW(solve_shutter_params(0.2, 1.5, 0.43), std::domain_error);
    EXPECT_THROW(solve_shutter_params(0.2, 0.4, -0.1), std::domain_error);
    // Pole of the closed form
    EXPECT_THROW(solve_shutter_params(1.0 / 3, 0.5, 0.43), std::domain_error);
    // R2 out of range
    EXPECT_THROW(solve_shutter_params(0.3, 0.4, 0.2), std::domain_error);
}

//---------------------------------------------------------------------------//
}  // namespace oracle
}  // namespace nisim
