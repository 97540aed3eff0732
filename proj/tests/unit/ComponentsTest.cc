//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/ComponentsTest.cc
//---------------------------------------------------------------------------//
#include "nisim/Components.hh"

#include <algorithm>
#include <array>

#include <gtest/gtest.h>

namespace nisim
{
//---------------------------------------------------------------------------//
TEST(SourceTest, uniform_sequential_arrivals)
{
    RngStream arr(1, StreamId::arrival), noise(1, StreamId::source_noise);
    SourceConfig cfg;
    cfg.n_particles = 4;
    cfg.n_intervals = 2;
    Source src(cfg, arr);
    std::vector<double> times;
    while (!src.exhausted())
    {
        times.push_back(src.emit(noise).arrival_time);
    }
    EXPECT_EQ(times, (std::vector<double>{0, 0.5, 1.0, 1.5}));
    EXPECT_EQ(src.emitted(), 4u);
}

TEST(SourceTest, poisson_arrivals_sorted_within_span)
{
    RngStream arr(2, StreamId::arrival);
    SourceConfig cfg;
    cfg.n_particles = 1000;
    cfg.n_intervals = 10;
    cfg.arrival_model = ArrivalModel::poisson;
    Source src(cfg, arr);
    auto const t = src.arrival_times();
    EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
    EXPECT_GE(t.front(), 0.0);
    EXPECT_LT(t.back(), 10.0);
}

TEST(SourceTest, phase_noise_bounded)
{
    RngStream noise(3, StreamId::source_noise);
    SourceConfig cfg;
    cfg.coherence_noise_halfwidth = 0.5;
    double max_dev = 0;
    for (int i = 0; i < 1000; ++i)
    {
        Particle const p = emit_particle(cfg, noise);
        EXPECT_NEAR(p.message.norm_sq(), 1, 1e-15);
        max_dev = std::max(max_dev, std::abs(std::arg(p.message.up)));
    }
    EXPECT_LE(max_dev, 0.5);
    EXPECT_GT(max_dev, 0.45);

    // Without noise the source is deterministic spin up
    Particle const p = emit_particle(SourceConfig{}, noise);
    EXPECT_EQ(p.message.up, Complex(1, 0));
}

TEST(AbsorberTest, stochastic_and_chopper)
{
    EXPECT_TRUE(stochastic_absorb(0.3, 0.29));
    EXPECT_FALSE(stochastic_absorb(0.3, 0.3));
    ChopperConfig const c{0.25};
    EXPECT_TRUE(chopper_passes(c, 0.0));
    EXPECT_TRUE(chopper_passes(c, 3.2));
    EXPECT_FALSE(chopper_passes(c, 0.25));
    EXPECT_FALSE(chopper_passes(c, 7.9));
}

TEST(ShutterTest, toggles_and_resets_on_closing)
{
    std::array<DlmState, 4> dlm;
    for (auto& d : dlm)
    {
        d.x = {0.4, 0.5};
    }
    ShutterState s;
    shutter_on_detection(s, 0.7, dlm);
    EXPECT_TRUE(s.open);
    EXPECT_EQ(dlm[2].x[0], 0.4);

    shutter_on_detection(s, 0.2, dlm);
    EXPECT_FALSE(s.open);
    for (auto const& d : dlm)
    {
        EXPECT_EQ(d.x[0], 0.0);
        EXPECT_EQ(d.x[1], 0.0);
    }

    // Opening leaves the processors alone
    dlm[0].x = {0.1, 0.2};
    shutter_on_detection(s, 0.2, dlm);
    EXPECT_TRUE(s.open);
    EXPECT_EQ(dlm[0].x[1], 0.2);
}

TEST(ShutterTest, gamma_zero_mode_suspends)
{
    std::array<DlmState, 4> dlm;
    ShutterState s{true, 0.5, ShutterReset::gamma_zero};
    dlm[1].x = {0.3, 0.3};
    shutter_on_detection(s, 0.0, dlm);
    EXPECT_FALSE(s.open);
    EXPECT_TRUE(dlm[1].suspended);
    EXPECT_EQ(dlm[1].x[0], 0.3);
}

TEST(ShutterTest, occupancy_converges_to_half)
{
    std::array<DlmState, 4> dlm;
    ShutterState s;
    RngStream rng(5, StreamId::shutter);
    int open = 0;
    int const n = 100000;
    for (int i = 0; i < n; ++i)
    {
        open += s.open;
        shutter_on_detection(s, rng.uniform(), dlm);
    }
    // Run lengths are geometric; sd of the fraction is about 1/sqrt(n)
    EXPECT_NEAR(open / double(n), 0.5, 5 / std::sqrt(double(n)));
}

TEST(AnalyzerTest, passes_with_up_probability)
{
    Message const m = make_message(0, 0, 2 * std::acos(std::sqrt(0.3)));
    EXPECT_TRUE(spin_analyze_up(m, 0.29));
    EXPECT_FALSE(spin_analyze_up(m, 0.31));
}

TEST(CountersTest, labels_and_terminals)
{
    Counters c;
    Particle p;
    c.detect(p, Beam::o, 0);
    p.labels.insert("open");
    c.detect(p, Beam::o, 0);
    c.detect(p, Beam::h, 2);
    c.record(Terminal::lost_bs1);
    EXPECT_EQ(c.count(0, Beam::o), 2u);
    EXPECT_EQ(c.count(0, Beam::o, "open"), 1u);
    EXPECT_EQ(c.count(2, Beam::h, "open"), 1u);
    EXPECT_EQ(c.count(1, Beam::h), 0u);
    EXPECT_EQ(c.terminal(Terminal::detected_o), 2u);
    EXPECT_EQ(c.total_terminal(), 4u);
    EXPECT_STREQ(to_string(Beam::h), "H");
    EXPECT_STREQ(to_string(Terminal::rejected), "rejected");
}

//---------------------------------------------------------------------------//
}  // namespace nisim
