//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/ExperimentsTest.cc
//---------------------------------------------------------------------------//
#include "nisim/Experiments.hh"

#include <atomic>
#include <numeric>
#include <stdexcept>

#include <gtest/gtest.h>

#include "nisim/Oracle.hh"

namespace nisim
{
namespace
{
std::uint64_t terminal_sum(ExperimentRecord const& rec)
{
    std::uint64_t total = 0;
    for (auto const& [name, n] : rec.terminals)
    {
        total += n;
    }
    return total;
}

void expect_conserved(ExperimentRecord const& rec)
{
    EXPECT_GT(rec.emitted, 0u);
    EXPECT_EQ(terminal_sum(rec), rec.emitted) << rec.experiment;
    EXPECT_EQ(rec.terminals.at("cold_start_fault"), 0u) << rec.experiment;
}

MziConfig small_mzi()
{
    MziConfig c;
    c.chi = linspace(0, 2 * pi, 4);
    c.n_particles = 2000;
    return c;
}
}  // namespace

//---------------------------------------------------------------------------//
TEST(HelpersTest, linspace_and_find_angle)
{
    auto const v = linspace(0, 1, 5);
    EXPECT_EQ(v, (std::vector<double>{0, 0.25, 0.5, 0.75, 1}));
    EXPECT_EQ(linspace(2, 3, 1), (std::vector<double>{2}));
    EXPECT_TRUE(linspace(0, 1, 0).empty());

    std::vector<double> grid{0, pi / 2, pi, 3 * pi / 2};
    EXPECT_EQ(find_angle(grid, -pi / 2), 3u);
    EXPECT_EQ(find_angle(grid, 2 * pi), 0u);
    EXPECT_FALSE(find_angle(grid, 0.1));
}

TEST(HelpersTest, chsh_max_of_quantum_table)
{
    auto const a = linspace(0, 2 * pi, 9);
    std::vector<double> grid(a.begin(), a.end() - 1);
    std::vector<std::vector<double>> e(grid.size(),
                                       std::vector<double>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < grid.size(); ++j)
            e[i][j] = oracle::qt_bell_E(grid[i], grid[j]);
    EXPECT_NEAR(chsh_max(e), 2 * std::sqrt(2.0), 1e-12);
}

TEST(HelpersTest, for_each_cell_visits_all)
{
    std::vector<std::atomic<int>> hits(37);
    for_each_cell(37, [&](std::uint32_t i) { ++hits[i]; });
    for (auto const& h : hits)
    {
        EXPECT_EQ(h.load(), 1);
    }
    EXPECT_THROW(for_each_cell(4,
                               [](std::uint32_t i) {
                                   if (i == 2)
                                       throw std::runtime_error("boom");
                               }),
                 std::runtime_error);
}

//---------------------------------------------------------------------------//
TEST(ExperimentsTest, mzi_deterministic_and_conserving)
{
    auto const cfg = small_mzi();
    auto const a = run_mzi(cfg, 5);
    auto const b = run_mzi(cfg, 5);
    auto const c = run_mzi(cfg, 6);
    EXPECT_EQ(a.table, b.table);
    EXPECT_EQ(a.derived, b.derived);
    EXPECT_NE(a.table, c.table);
    expect_conserved(a);
    EXPECT_EQ(a.emitted, 4 * cfg.n_particles);
    EXPECT_EQ(a.table.rows.size(), 8u);
    EXPECT_EQ(a.config.at("experiment"), "mzi");
}

TEST(ExperimentsTest, one_point_mzi_has_two_rows)
{
    MziConfig cfg;
    cfg.chi = {0.3};
    cfg.n_particles = 100;
    auto const rec = run_mzi(cfg, 1);
    ASSERT_EQ(rec.table.rows.size(), 2u);
    EXPECT_EQ(rec.table.rows[0].beam, "O");
    EXPECT_EQ(rec.table.rows[1].beam, "H");
    auto const qt = oracle::qt_mzi(0.2, 1, 1, 0.3);
    EXPECT_DOUBLE_EQ(rec.table.rows[0].oracle, qt.o);
}

TEST(ExperimentsTest, empty_sweep)
{
    MziConfig cfg;
    auto const rec = run_mzi(cfg, 1);
    EXPECT_TRUE(rec.table.rows.empty());
    EXPECT_EQ(rec.emitted, 0u);
}

TEST(ExperimentsTest, absorber_conserving)
{
    AbsorberConfig cfg;
    cfg.a = {0.3, 1.0};
    cfg.chi = linspace(0, 2 * pi, 4);
    cfg.n_cycles = 500;
    auto const s = run_absorber(cfg, 2);
    expect_conserved(s);
    EXPECT_GT(s.terminals.at("absorbed"), 0u);
    EXPECT_EQ(s.table.rows.size(), 2u * 4u * 2u);

    cfg.kind = AbsorberKind::chopper;
    cfg.n_per_cycle = 50;
    cfg.n_cycles = 10;
    auto const c = run_absorber(cfg, 2);
    expect_conserved(c);
    EXPECT_EQ(run_absorber(cfg, 2).table, c.table);
}

TEST(ExperimentsTest, bell_rows_and_conservation)
{
    BellConfig cfg;
    cfg.alpha = linspace(0, 2 * pi, 5);
    cfg.alpha.pop_back();
    cfg.chi = cfg.alpha;
    cfg.n_particles = 500;
    auto const rec = run_bell(cfg, 3);
    expect_conserved(rec);
    EXPECT_GT(rec.terminals.at("rejected"), 0u);
    // Correlations need the pi-shifted settings, which this grid has
    std::size_t n_e = 0;
    for (auto const& row : rec.table.rows)
    {
        n_e += row.label == "E";
        if (row.label == "E")
        {
            EXPECT_LE(std::abs(row.normalized), 1.0);
        }
    }
    EXPECT_EQ(n_e, 16u);
    EXPECT_NO_THROW(rec.stat("S_max"));

    auto const rnd = run_bell_random_chi(cfg, 3);
    expect_conserved(rnd);
    EXPECT_NE(rnd.table, rec.table);
}

TEST(ExperimentsTest, rf_conserving)
{
    RfConfig cfg;
    cfg.phi = {0, pi};
    cfg.chi = {0, pi / 2};
    cfg.n_particles = 500;
    auto const rec = run_rf(cfg, 4);
    expect_conserved(rec);
    EXPECT_NO_THROW(rec.stat("h_mean"));
}

TEST(ExperimentsTest, low_count_replicas)
{
    LowCountConfig cfg;
    cfg.chi = linspace(0, 2 * pi, 5);
    cfg.n_particles = 400;
    cfg.n_replicas = 8;
    auto const rec = run_low_count(cfg, 5);
    expect_conserved(rec);
    std::size_t n_mean = 0, n_rep = 0;
    for (auto const& row : rec.table.rows)
    {
        (row.label == "mean" ? n_mean : n_rep) += 1;
    }
    EXPECT_EQ(n_mean, 5u);
    EXPECT_EQ(n_rep, 8u * 5u);
    // Fringe maximum at chi = 0 is recovered well within the grid spacing
    EXPECT_LT(std::abs(rec.stat("mean_fit_phase")), pi / 4);
    EXPECT_GT(rec.stat("replica_visibility_stddev"), 0);

    // Replicas run in parallel; the result must not depend on scheduling
    EXPECT_EQ(run_low_count(cfg, 5).table, rec.table);
}

TEST(ExperimentsTest, shutter_labels_and_occupancy)
{
    ShutterConfig cfg;
    cfg.chi = {0, pi};
    cfg.n_particles = 20000;
    auto const rec = run_shutter(cfg, 6);
    expect_conserved(rec);
    std::uint64_t open = 0, closed = 0;
    for (auto const& row : rec.table.rows)
    {
        (row.label == "open" ? open : closed) += row.count;
    }
    double const frac = double(open) / double(open + closed);
    EXPECT_NEAR(frac, 0.5, 0.05);

    cfg.mode = ShutterMode::always_closed;
    auto const c = run_shutter(cfg, 6);
    for (auto const& row : c.table.rows)
    {
        EXPECT_EQ(row.label, "closed");
    }
    // Closed-arm relative frequency is the splitter transmission
    EXPECT_NEAR(c.stat("closed_mean"), 0.6, 0.02);
}

TEST(ExperimentsTest, learning_trace_rows)
{
    LearningTraceSpec spec;
    spec.n_events = 50;
    spec.switch_at = 25;
    auto const rec = run_learning_trace(spec);
    ASSERT_EQ(rec.table.rows.size(), 50u);
    auto const tr = dlm_learning_trace(spec);
    for (std::size_t i = 0; i < tr.size(); ++i)
    {
        EXPECT_EQ(rec.table.rows[i].normalized, tr[i]);
    }
    EXPECT_EQ(rec.table.rows[0].settings[0], 1.0);
}

TEST(ExperimentsTest, stat_lookup)
{
    ExperimentRecord rec;
    rec.add_stat("x", 2.0);
    EXPECT_EQ(rec.stat("x"), 2.0);
    EXPECT_THROW(rec.stat("y"), std::out_of_range);
}

//---------------------------------------------------------------------------//
}  // namespace nisim
