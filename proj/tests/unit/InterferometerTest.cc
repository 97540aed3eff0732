//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/InterferometerTest.cc
//---------------------------------------------------------------------------//
#include "nisim/Interferometer.hh"

#include <gtest/gtest.h>

#include "nisim/Oracle.hh"

namespace nisim
{
namespace
{
Counters run_many(Topology const& topo,
                  double reflection,
                  int n,
                  Apparatus& app,
                  std::uint64_t seed = 1)
{
    RunStreams rng(seed, 0);
    Counters c;
    for (int i = 0; i < n; ++i)
    {
        Particle p;
        Terminal const t = transit(p, reflection, topo, app, rng);
        if (t == Terminal::detected_o || t == Terminal::detected_h)
        {
            c.detect(p, t == Terminal::detected_o ? Beam::o : Beam::h, 0);
        }
        else
        {
            c.record(t);
        }
    }
    return c;
}
}  // namespace

//---------------------------------------------------------------------------//
TEST(InterferometerTest, every_particle_reaches_one_terminal)
{
    Topology topo;
    topo.phi1 = 0.7;
    topo.mu_metal = true;
    topo.absorber = 0.6;
    topo.spin_rotator = 0.4;
    topo.analyzer = true;
    Apparatus app(0.95);
    int const n = 20000;
    Counters const c = run_many(topo, 0.3, n, app);
    EXPECT_EQ(c.total_terminal(), std::uint64_t(n));
    EXPECT_GT(c.terminal(Terminal::absorbed), 0u);
    EXPECT_GT(c.terminal(Terminal::rejected), 0u);
    EXPECT_GT(c.terminal(Terminal::lost_bs1), 0u);
    EXPECT_GT(c.terminal(Terminal::lost_bs2), 0u);
    EXPECT_EQ(c.terminal(Terminal::cold_start_fault), 0u);
}

// Blocked arm 0: the absorbed fraction is the BS0 transmission. BS3 only
// sees port 1, so x1 = 1 - gamma^n after n arrivals and the O probability
// of the n-th detection is T x1; the one-arm quantum value is the limit.
TEST(InterferometerTest, blocked_arm_statistics)
{
    Topology topo;
    topo.absorber = 0.0;
    double const r = 0.2;
    Apparatus app(0.99);
    int const n = 40000;
    Counters const c = run_many(topo, r, n, app);
    double const absorbed = c.terminal(Terminal::absorbed) / double(n);
    EXPECT_NEAR(absorbed, 1 - r, 5 * std::sqrt(r * (1 - r) / n));

    auto const qt = oracle::qt_mzi(r, 0, 1, 0);
    double const f_limit = qt.o / (qt.o + qt.h);
    double const n_det = c.count(0, Beam::o) + c.count(0, Beam::h);
    double const g = 0.99;
    double const f_o = f_limit
                       * (1 - g * (1 - std::pow(g, n_det)) / ((1 - g) * n_det));
    EXPECT_NEAR(c.count(0, Beam::o) / n_det,
                f_o,
                5 * std::sqrt(f_o * (1 - f_o) / n_det));
}

TEST(InterferometerTest, flight_time_counts_segments)
{
    Topology topo;
    topo.nu = 0.25;
    Apparatus app(0.9);
    RunStreams rng(2, 0);
    for (int i = 0; i < 200; ++i)
    {
        Particle p;
        Terminal const t = transit(p, 0.5, topo, app, rng);
        if (t == Terminal::detected_o || t == Terminal::detected_h)
        {
            EXPECT_EQ(p.flight_time, 4.0);
        }
        else
        {
            EXPECT_EQ(p.flight_time, 2.0);
        }
    }
}

TEST(InterferometerTest, closed_shutter_blocks_arm_zero)
{
    Topology topo;
    topo.shutter = true;
    Apparatus app(0.5);
    app.shutter.open = false;
    app.shutter.toggle_probability = 0;
    RunStreams rng(3, 0);
    int absorbed = 0;
    for (int i = 0; i < 1000; ++i)
    {
        Particle p;
        Terminal const t = transit(p, 0.4, topo, app, rng);
        EXPECT_EQ(p.labels.count("closed"), 1u);
        absorbed += t == Terminal::absorbed;
        EXPECT_NE(t, Terminal::lost_bs1);
    }
    EXPECT_GT(absorbed, 400);
    EXPECT_FALSE(app.shutter.open);
}

TEST(InterferometerTest, cool_restores_cold_state)
{
    Apparatus app(0.7);
    Topology topo;
    run_many(topo, 0.5, 100, app);
    EXPECT_GT(app.splitters[0].x[0], 0);
    app.cool();
    for (auto const& s : app.splitters)
    {
        EXPECT_EQ(s.x[0], 0);
        EXPECT_EQ(s.x[1], 0);
        EXPECT_EQ(s.gamma, 0.7);
    }
}

//---------------------------------------------------------------------------//
}  // namespace nisim
