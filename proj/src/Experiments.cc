//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Experiments.cc
//---------------------------------------------------------------------------//
#include "nisim/Experiments.hh"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "nisim/Analysis.hh"
#include "nisim/Config.hh"
#include "nisim/Interferometer.hh"
#include "nisim/Oracle.hh"

namespace nisim
{
namespace
{
//---------------------------------------------------------------------------//
//! State, streams and tallies of one independent run cell
struct Cell
{
    Apparatus app;
    RunStreams rng;
    Counters counters;
    std::vector<std::uint64_t> setting_emitted;
    DlmConfig dlm;

    Cell(DlmConfig const& d, std::uint64_t seed, std::uint32_t cell)
        : app(d.gamma), rng(seed, cell), dlm(d)
    {
        for (std::size_t i = 0; i < d.splitter_gamma.size() && i < 4; ++i)
        {
            app.splitters[i].gamma = d.splitter_gamma[i];
        }
    }

    void begin_setting()
    {
        if (dlm.reset_per_setting)
        {
            app.cool();
        }
    }

    void tally(Particle const& p, Terminal t, std::size_t setting)
    {
        if (setting_emitted.size() <= setting)
        {
            setting_emitted.resize(setting + 1, 0);
        }
        ++setting_emitted[setting];
        if (t == Terminal::detected_o || t == Terminal::detected_h)
        {
            counters.detect(p, t == Terminal::detected_o ? Beam::o : Beam::h,
                            setting);
        }
        else
        {
            counters.record(t);
        }
    }

    std::uint64_t emitted(std::size_t setting) const
    {
        return setting < setting_emitted.size() ? setting_emitted[setting] : 0;
    }

    //! Send every particle of one source through a fixed topology
    template<class ReflectionFn>
    void run(SourceConfig const& src,
             Topology const& topo,
             std::size_t setting,
             ReflectionFn&& reflection)
    {
        Source source(src, rng.arrival);
        while (!source.exhausted())
        {
            Particle p = source.emit(rng.source_noise);
            double const r = reflection(rng);
            Terminal const t = transit(p, r, topo, app, rng);
            this->tally(p, t, setting);
        }
    }

    void run(SourceConfig const& src,
             Topology const& topo,
             std::size_t setting,
             double reflection)
    {
        this->run(src, topo, setting, [reflection](RunStreams&) {
            return reflection;
        });
    }
};

SourceConfig plain_source(std::uint64_t n)
{
    SourceConfig src;
    src.n_particles = n;
    return src;
}

void record_terminals(ExperimentRecord& rec, Counters const& c)
{
    for (int i = 0; i < static_cast<int>(Terminal::size_); ++i)
    {
        auto const t = static_cast<Terminal>(i);
        rec.terminals[to_string(t)] += c.terminal(t);
    }
}

void record_terminals(ExperimentRecord& rec, Cell const& cell)
{
    record_terminals(rec, cell.counters);
    for (auto n : cell.setting_emitted)
    {
        rec.emitted += n;
    }
}

//! Row with binomial standard error at the oracle probability
ResultRow count_row(std::vector<double> settings,
                    Beam beam,
                    std::string label,
                    std::uint64_t count,
                    std::uint64_t n,
                    double oracle)
{
    ResultRow row;
    row.settings = std::move(settings);
    row.beam = to_string(beam);
    row.label = std::move(label);
    row.count = count;
    row.normalized = n == 0 ? 0 : static_cast<double>(count) / n;
    row.oracle = oracle;
    row.stderr_value = binomial_stderr(oracle, static_cast<double>(n));
    return row;
}

//! Fraction of rows whose normalized value lies within k sigma of oracle
double fraction_within(std::vector<ResultRow> const& rows,
                       double k,
                       std::string const& beam,
                       std::string const& label)
{
    std::size_t n = 0;
    std::size_t ok = 0;
    for (auto const& row : rows)
    {
        if (row.beam != beam || row.label != label)
        {
            continue;
        }
        ++n;
        if (std::fabs(row.normalized - row.oracle) <= k * row.stderr_value)
        {
            ++ok;
        }
    }
    return n == 0 ? 0 : static_cast<double>(ok) / n;
}

double rms(std::vector<double> const& a, std::vector<double> const& b)
{
    double ss = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        ss += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return a.empty() ? 0 : std::sqrt(ss / a.size());
}

//! Statistic name tagged with the shortest round-trip text of a value
std::string format_key(char const* prefix, double value)
{
    std::array<char, 32> buf{};
    auto const end = std::to_chars(buf.data(), buf.data() + buf.size(), value).ptr;
    return std::string(prefix) + "[" + std::string(buf.data(), end) + "]";
}
}  // namespace

//---------------------------------------------------------------------------//
// RECORD
//---------------------------------------------------------------------------//
double ExperimentRecord::stat(std::string const& name) const
{
    for (auto const& [key, value] : derived)
    {
        if (key == name)
        {
            return value;
        }
    }
    throw std::out_of_range("no derived statistic '" + name + "'");
}

void ExperimentRecord::add_stat(std::string name, double value)
{
    derived.emplace_back(std::move(name), value);
}

//---------------------------------------------------------------------------//
// HELPERS
//---------------------------------------------------------------------------//
void for_each_cell(std::uint32_t n_cells,
                   std::function<void(std::uint32_t)> const& fn)
{
    unsigned const hw = std::max(1u, std::thread::hardware_concurrency());
    unsigned const n_workers = std::min<unsigned>(hw, n_cells);
    if (n_workers <= 1)
    {
        for (std::uint32_t i = 0; i < n_cells; ++i)
        {
            fn(i);
        }
        return;
    }

    std::atomic<std::uint32_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::uint32_t i = next++; i < n_cells; i = next++)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                {
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < n_workers; ++w)
    {
        threads.emplace_back(worker);
    }
    for (auto& t : threads)
    {
        t.join();
    }
    if (error)
    {
        std::rethrow_exception(error);
    }
}

//---------------------------------------------------------------------------//
std::vector<double> linspace(double start, double stop, std::size_t count)
{
    std::vector<double> v(count);
    if (count == 1)
    {
        v[0] = start;
    }
    for (std::size_t i = 0; count > 1 && i < count; ++i)
    {
        v[i] = start + (stop - start) * static_cast<double>(i) / (count - 1);
    }
    return v;
}

std::optional<std::size_t> find_angle(std::vector<double> const& grid,
                                      double angle)
{
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        double d = std::remainder(grid[i] - angle, 2 * pi);
        if (std::fabs(d) < 1e-9)
        {
            return i;
        }
    }
    return std::nullopt;
}

double chsh_max(std::vector<std::vector<double>> const& e)
{
    double best = 0;
    std::size_t const na = e.size();
    for (std::size_t a1 = 0; a1 < na; ++a1)
    {
        for (std::size_t a2 = 0; a2 < na; ++a2)
        {
            std::size_t const nc = std::min(e[a1].size(), e[a2].size());
            for (std::size_t c1 = 0; c1 < nc; ++c1)
            {
                for (std::size_t c2 = 0; c2 < nc; ++c2)
                {
                    double const s = e[a1][c1] + e[a1][c2] - e[a2][c1]
                                     + e[a2][c2];
                    if (std::isfinite(s))
                    {
                        best = std::max(best, std::fabs(s));
                    }
                }
            }
        }
    }
    return best;
}

//---------------------------------------------------------------------------//
// PLAIN INTERFEROMETER
//---------------------------------------------------------------------------//
ExperimentRecord run_mzi(MziConfig const& cfg, std::uint64_t seed)
{
    ExperimentRecord rec;
    rec.experiment = "mzi";
    rec.seed = seed;
    rec.config = to_json(cfg);
    rec.table.setting_columns = {"chi"};

    Cell cell(cfg.dlm, seed, 0);
    SourceConfig src = plain_source(cfg.n_particles);
    src.coherence_noise_halfwidth = cfg.noise_halfwidth;

    for (std::size_t i = 0; i < cfg.chi.size(); ++i)
    {
        cell.begin_setting();
        Topology topo;
        topo.phi1 = cfg.chi[i];
        topo.nu = cfg.nu;
        cell.run(src, topo, i, cfg.reflection);
    }

    std::vector<double> y_o;
    for (std::size_t i = 0; i < cfg.chi.size(); ++i)
    {
        double const chi = cfg.chi[i];
        auto const qt = oracle::qt_mzi(cfg.reflection, 1, 1, chi);
        auto const n = cell.emitted(i);
        for (Beam b : {Beam::o, Beam::h})
        {
            rec.table.rows.push_back(count_row({chi},
                                               b,
                                               "all",
                                               cell.counters.count(i, b),
                                               n,
                                               b == Beam::o ? qt.o : qt.h));
        }
        y_o.push_back(rec.table.rows[rec.table.rows.size() - 2].normalized);
    }

    rec.add_stat("within_4sigma_o", fraction_within(rec.table.rows, 4, "O", "all"));
    rec.add_stat("within_4sigma_h", fraction_within(rec.table.rows, 4, "H", "all"));
    if (cfg.chi.size() >= 3)
    {
        auto const fit = fit_sinusoid(cfg.chi, y_o);
        rec.add_stat("visibility_o", fit.visibility());
        rec.add_stat("phase_o", fit.phase());
    }
    record_terminals(rec, cell);
    return rec;
}

//---------------------------------------------------------------------------//
// ABSORBER AND CHOPPER
//---------------------------------------------------------------------------//
/*!
 * Each absorber value is an independent cell with its own cold apparatus;
 * within a cell the phase sweep runs in ascending order.
 */
ExperimentRecord run_absorber(AbsorberConfig const& cfg, std::uint64_t seed)
{
    ExperimentRecord rec;
    rec.experiment = "absorber";
    rec.seed = seed;
    rec.config = to_json(cfg);
    rec.table.setting_columns = {"a", "chi"};

    bool const chopper = cfg.kind == AbsorberKind::chopper;
    std::uint32_t const n_cells = static_cast<std::uint32_t>(cfg.a.size());
    std::vector<std::optional<Cell>> cells(n_cells);

    for_each_cell(n_cells, [&](std::uint32_t k) {
        Cell& cell = cells[k].emplace(cfg.dlm, seed, k);
        SourceConfig src = plain_source(cfg.n_per_cycle * cfg.n_cycles);
        src.arrival_model = ArrivalModel::poisson;
        src.n_intervals = static_cast<double>(cfg.n_cycles);
        for (std::size_t i = 0; i < cfg.chi.size(); ++i)
        {
            cell.begin_setting();
            Topology topo;
            topo.phi1 = cfg.chi[i];
            if (chopper)
            {
                topo.chopper = ChopperConfig{cfg.a[k]};
            }
            else
            {
                topo.absorber = cfg.a[k];
            }
            cell.run(src, topo, i, cfg.reflection);
        }
    });

    std::vector<double> amplitudes;
    std::vector<double> pure;
    std::vector<double> mixed;
    for (std::size_t k = 0; k < cfg.a.size(); ++k)
    {
        double const a = cfg.a[k];
        Cell const& cell = *cells[k];
        std::vector<double> y_o;
        for (std::size_t i = 0; i < cfg.chi.size(); ++i)
        {
            double const chi = cfg.chi[i];
            auto const n = cell.emitted(i);
            double p_o = 0;
            double p_h = 0;
            if (chopper)
            {
                p_o = oracle::qt_mixed_chopper(cfg.reflection, a, chi).p_o;
                p_h = oracle::qt_mixed_chopper_h(cfg.reflection, a, chi);
            }
            else
            {
                auto const qt = oracle::qt_mzi(cfg.reflection, a, 1, chi);
                p_o = qt.o;
                p_h = qt.h;
            }
            auto row_o = count_row(
                {a, chi}, Beam::o, "all", cell.counters.count(i, Beam::o), n, p_o);
            y_o.push_back(row_o.normalized);
            rec.table.rows.push_back(std::move(row_o));
            rec.table.rows.push_back(count_row(
                {a, chi}, Beam::h, "all", cell.counters.count(i, Beam::h), n, p_h));
        }
        record_terminals(rec, cell);

        if (cfg.chi.size() >= 3)
        {
            auto const fit = fit_sinusoid(cfg.chi, y_o);
            double const amp = (1 + a) * fit.visibility() / 2;
            amplitudes.push_back(amp);
            pure.push_back(std::sqrt(a));
            mixed.push_back(a);
            rec.add_stat(format_key("visibility", a), fit.visibility());
            rec.add_stat(format_key("amplitude", a), amp);
        }
    }
    rec.add_stat("rms_vs_sqrt_a", rms(amplitudes, pure));
    rec.add_stat("rms_vs_a", rms(amplitudes, mixed));
    return rec;
}

//---------------------------------------------------------------------------//
// BELL TEST
//---------------------------------------------------------------------------//
/*!
 * Fixed-chi runs visit every (alpha, chi) pair, alpha outermost, with
 * n_particles each. In the random-chi variant each alpha block emits
 * n_particles per chi grid value and every particle draws its chi.
 */
ExperimentRecord run_bell(BellConfig const& cfg, std::uint64_t seed)
{
    ExperimentRecord rec;
    rec.experiment = cfg.random_chi ? "bell_random_chi" : "bell";
    rec.seed = seed;
    rec.config = to_json(cfg);
    rec.table.setting_columns = {"alpha", "chi"};

    std::size_t const n_chi = cfg.chi.size();
    auto index = [n_chi](std::size_t ia, std::size_t ic) {
        return ia * n_chi + ic;
    };

    Cell cell(cfg.dlm, seed, 0);
    SourceConfig const src = plain_source(cfg.n_particles);
    for (std::size_t ia = 0; ia < cfg.alpha.size(); ++ia)
    {
        Topology topo;
        topo.mu_metal = true;
        topo.spin_rotator = cfg.alpha[ia];
        topo.analyzer = true;
        if (!cfg.random_chi)
        {
            for (std::size_t ic = 0; ic < n_chi; ++ic)
            {
                cell.begin_setting();
                topo.phi1 = cfg.chi[ic];
                cell.run(src, topo, index(ia, ic), cfg.reflection);
            }
            continue;
        }
        if (n_chi == 0)
        {
            continue;
        }
        cell.begin_setting();
        Source source(plain_source(cfg.n_particles * n_chi), cell.rng.arrival);
        while (!source.exhausted())
        {
            Particle p = source.emit(cell.rng.source_noise);
            auto ic = static_cast<std::size_t>(cell.rng.random_chi.uniform()
                                               * static_cast<double>(n_chi));
            ic = std::min(ic, n_chi - 1);
            topo.phi1 = cfg.chi[ic];
            Terminal const t = transit(p, cfg.reflection, topo, cell.app, cell.rng);
            cell.tally(p, t, index(ia, ic));
        }
    }

    double const r = cfg.reflection;
    double const p_h = r * ((1 - r) * (1 - r) + r * r);
    std::vector<std::vector<double>> rate(
        cfg.alpha.size(), std::vector<double>(n_chi, 0));
    for (std::size_t ia = 0; ia < cfg.alpha.size(); ++ia)
    {
        for (std::size_t ic = 0; ic < n_chi; ++ic)
        {
            double const alpha = cfg.alpha[ia];
            double const chi = cfg.chi[ic];
            auto const k = index(ia, ic);
            auto const n = cell.emitted(k);
            auto row = count_row({alpha, chi},
                                 Beam::o,
                                 "up",
                                 cell.counters.count(k, Beam::o),
                                 n,
                                 oracle::qt_bell_p_o(r, alpha, chi));
            rate[ia][ic] = row.normalized;
            rec.table.rows.push_back(std::move(row));
            rec.table.rows.push_back(count_row(
                {alpha, chi}, Beam::h, "all", cell.counters.count(k, Beam::h), n, p_h));
        }
    }

    // Correlations: NaN where a partner setting is missing from the grid
    double const nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::vector<double>> e(cfg.alpha.size(),
                                       std::vector<double>(n_chi, nan));
    std::vector<double> e_phase;
    std::vector<double> e_value;
    for (std::size_t ia = 0; ia < cfg.alpha.size(); ++ia)
    {
        auto const ja = find_angle(cfg.alpha, cfg.alpha[ia] + pi);
        for (std::size_t ic = 0; ic < n_chi && ja; ++ic)
        {
            auto const jc = find_angle(cfg.chi, cfg.chi[ic] + pi);
            if (!jc)
            {
                continue;
            }
            double const alpha = cfg.alpha[ia];
            double const chi = cfg.chi[ic];
            e[ia][ic] = analyze_correlation(
                rate[ia][ic], rate[*ja][*jc], rate[ia][*jc], rate[*ja][ic]);
            std::uint64_t total = 0;
            std::array<std::pair<std::size_t, std::size_t>, 4> const four{
                {{ia, ic}, {*ja, *jc}, {ia, *jc}, {*ja, ic}}};
            for (auto [x, y] : four)
            {
                total += cell.counters.count(index(x, y), Beam::o);
            }
            ResultRow row;
            row.settings = {alpha, chi};
            row.beam = "O";
            row.label = "E";
            row.count = total;
            row.normalized = e[ia][ic];
            row.oracle = oracle::qt_bell_E(alpha, chi);
            row.stderr_value = total == 0
                                   ? 0
                                   : std::sqrt(std::max(
                                         0.0, 1 - row.oracle * row.oracle)
                                               / static_cast<double>(total));
            rec.table.rows.push_back(std::move(row));
            e_phase.push_back(alpha + chi);
            e_value.push_back(e[ia][ic]);
        }
    }

    rec.add_stat("within_4sigma_up", fraction_within(rec.table.rows, 4, "O", "up"));
    auto const& c = cfg.chsh;
    auto const a1 = find_angle(cfg.alpha, c[0]);
    auto const c1 = find_angle(cfg.chi, c[1]);
    auto const a2 = find_angle(cfg.alpha, c[2]);
    auto const c2 = find_angle(cfg.chi, c[3]);
    if (a1 && c1 && a2 && c2)
    {
        rec.add_stat("S", e[*a1][*c1] + e[*a1][*c2] - e[*a2][*c1] + e[*a2][*c2]);
    }
    rec.add_stat("S_max", chsh_max(e));
    if (e_phase.size() >= 3)
    {
        auto const fit = fit_sinusoid(e_phase, e_value);
        rec.add_stat("E_amplitude", fit.amplitude());
        rec.add_stat("E_phase", fit.phase());
        rec.add_stat("E_offset", fit.c0);
    }
    record_terminals(rec, cell);
    return rec;
}

//---------------------------------------------------------------------------//
// RF SPIN FLIPPERS
//---------------------------------------------------------------------------//
ExperimentRecord run_rf(RfConfig const& cfg, std::uint64_t seed)
{
    ExperimentRecord rec;
    rec.experiment = "rf";
    rec.seed = seed;
    rec.config = to_json(cfg);
    rec.table.setting_columns = {"phi", "chi"};

    std::size_t const n_chi = cfg.chi.size();
    Cell cell(cfg.dlm, seed, 0);
    SourceConfig const src = plain_source(cfg.n_particles);
    for (std::size_t ip = 0; ip < cfg.phi.size(); ++ip)
    {
        for (std::size_t ic = 0; ic < n_chi; ++ic)
        {
            cell.begin_setting();
            Topology topo;
            topo.phi0 = cfg.chi[ic];
            topo.rf1 = cfg.omega_t1 + cfg.rf1_phase;
            topo.omega_t_down = cfg.omega_t_down;
            topo.rf2 = cfg.omega_t2 / 2 + cfg.phi[ip];
            topo.spin_rotator = pi / 2;
            topo.analyzer = true;
            cell.run(src, topo, ip * n_chi + ic, cfg.reflection);
        }
    }

    double const r = cfg.reflection;
    double const residual = cfg.omega_t_down
                            + (cfg.omega_t2 - cfg.omega_t1) / 2
                            - cfg.rf1_phase / 2;
    double const p_h = oracle::qt_rf(r, 0, 0).h;
    std::vector<double> hx_chi, hx_phi, hy, hs;
    for (std::size_t ip = 0; ip < cfg.phi.size(); ++ip)
    {
        for (std::size_t ic = 0; ic < n_chi; ++ic)
        {
            double const phi = cfg.phi[ip];
            double const chi = cfg.chi[ic];
            auto const k = ip * n_chi + ic;
            auto const n = cell.emitted(k);
            rec.table.rows.push_back(
                count_row({phi, chi},
                          Beam::o,
                          "up",
                          cell.counters.count(k, Beam::o),
                          n,
                          oracle::qt_rf_p_o_general(r, chi, phi, residual)));
            auto row_h = count_row(
                {phi, chi}, Beam::h, "all", cell.counters.count(k, Beam::h), n, p_h);
            hx_chi.push_back(chi);
            hx_phi.push_back(phi);
            hy.push_back(row_h.normalized);
            hs.push_back(row_h.stderr_value);
            rec.table.rows.push_back(std::move(row_h));
        }
    }

    rec.add_stat("within_4sigma_o", fraction_within(rec.table.rows, 4, "O", "up"));
    rec.add_stat("within_4sigma_h", fraction_within(rec.table.rows, 4, "H", "all"));
    rec.add_stat("h_mean", sample_mean(hy));
    if (hy.size() >= 2 && hs.front() > 0)
    {
        if (n_chi > 1)
        {
            auto const f = fit_line(hx_chi, hy, hs);
            rec.add_stat("h_slope_chi", f.slope);
            rec.add_stat("h_slope_chi_stderr", f.slope_stderr);
        }
        if (cfg.phi.size() > 1)
        {
            auto const f = fit_line(hx_phi, hy, hs);
            rec.add_stat("h_slope_phi", f.slope);
            rec.add_stat("h_slope_phi_stderr", f.slope_stderr);
        }
    }
    record_terminals(rec, cell);
    return rec;
}

//---------------------------------------------------------------------------//
// LOW-COUNT SWEEP
//---------------------------------------------------------------------------//
/*!
 * Each replica is an independent cell stepping through the phase settings
 * in order. Mean rows use replica index -1 and carry the across-replica
 * sample standard deviation.
 */
ExperimentRecord run_low_count(LowCountConfig const& cfg, std::uint64_t seed)
{
    ExperimentRecord rec;
    rec.experiment = "lowcount";
    rec.seed = seed;
    rec.config = to_json(cfg);
    rec.table.setting_columns = {"replica", "chi"};

    std::vector<std::optional<Cell>> cells(cfg.n_replicas);
    for_each_cell(cfg.n_replicas, [&](std::uint32_t k) {
        Cell& cell = cells[k].emplace(cfg.dlm, seed, k);
        SourceConfig const src = plain_source(cfg.n_particles);
        for (std::size_t i = 0; i < cfg.chi.size(); ++i)
        {
            cell.begin_setting();
            Topology topo;
            topo.phi1 = cfg.chi[i];
            cell.run(src, topo, i, cfg.reflection);
        }
    });

    std::size_t const n_chi = cfg.chi.size();
    std::vector<std::vector<double>> per_chi(n_chi);
    std::vector<double> replica_visibility;
    std::vector<double> replica_phase;
    for (std::uint32_t k = 0; k < cfg.n_replicas; ++k)
    {
        Cell const& cell = *cells[k];
        std::vector<double> y;
        for (std::size_t i = 0; i < n_chi; ++i)
        {
            double const chi = cfg.chi[i];
            auto row = count_row({static_cast<double>(k), chi},
                                 Beam::o,
                                 "all",
                                 cell.counters.count(i, Beam::o),
                                 cell.emitted(i),
                                 oracle::qt_mzi(cfg.reflection, 1, 1, chi).o);
            y.push_back(static_cast<double>(row.count));
            per_chi[i].push_back(static_cast<double>(row.count));
            rec.table.rows.push_back(std::move(row));
        }
        record_terminals(rec, cell);
        if (n_chi >= 3)
        {
            auto const fit = fit_sinusoid(cfg.chi, y);
            replica_visibility.push_back(fit.visibility());
            replica_phase.push_back(fit.phase());
        }
    }

    std::vector<double> mean_counts;
    for (std::size_t i = 0; i < n_chi; ++i)
    {
        double const chi = cfg.chi[i];
        double const p = oracle::qt_mzi(cfg.reflection, 1, 1, chi).o;
        ResultRow row;
        row.settings = {-1.0, chi};
        row.beam = "O";
        row.label = "mean";
        double sum = 0;
        for (double c : per_chi[i])
        {
            sum += c;
        }
        row.count = static_cast<std::uint64_t>(sum);
        row.normalized = sample_mean(per_chi[i]);
        row.oracle = p * static_cast<double>(cfg.n_particles);
        row.stderr_value = sample_stddev(per_chi[i]);
        mean_counts.push_back(row.normalized);
        rec.table.rows.push_back(std::move(row));
    }

    if (n_chi >= 3 && cfg.n_replicas > 0)
    {
        auto const fit = fit_sinusoid(cfg.chi, mean_counts);
        double ss = 0;
        for (std::size_t i = 0; i < n_chi; ++i)
        {
            double const d = mean_counts[i] - fit(cfg.chi[i]);
            ss += d * d;
        }
        rec.add_stat("mean_fit_offset", fit.c0);
        rec.add_stat("mean_fit_amplitude", fit.amplitude());
        rec.add_stat("mean_fit_phase", fit.phase());
        rec.add_stat("mean_fit_visibility", fit.visibility());
        rec.add_stat("mean_fit_residual_rms", std::sqrt(ss / n_chi));
        rec.add_stat("replica_visibility_mean", sample_mean(replica_visibility));
        rec.add_stat("replica_visibility_stddev", sample_stddev(replica_visibility));
        rec.add_stat("replica_phase_stddev", sample_stddev(replica_phase));
    }
    return rec;
}

//---------------------------------------------------------------------------//
// SHUTTER
//---------------------------------------------------------------------------//
namespace
{
oracle::ShutterFreqs shutter_oracle(ShutterConfig const& cfg, double chi)
{
    auto const& pop = cfg.populations;
    double const v = cfg.oracle_visibility;
    if (pop.size() == 2)
    {
        return oracle::qt_shutter_two_population(
            pop[0].reflection, pop[1].reflection, pop[0].weight, v, chi);
    }
    return oracle::qt_shutter_freqs(pop.at(0).reflection, v, chi);
}
}  // namespace

/*!
 * Relative frequencies O / (O + H) per phase setting, conditioned on the
 * shutter state at detection.
 */
ExperimentRecord run_shutter(ShutterConfig const& cfg, std::uint64_t seed)
{
    if (cfg.populations.empty() || cfg.populations.size() > 2)
    {
        throw std::invalid_argument("shutter: need one or two populations");
    }
    ExperimentRecord rec;
    rec.experiment = "shutter";
    rec.seed = seed;
    rec.config = to_json(cfg);
    rec.table.setting_columns = {"chi"};

    Cell cell(cfg.dlm, seed, 0);
    cell.app.shutter.reset_mode = cfg.reset_mode;
    cell.app.shutter.open = cfg.mode != ShutterMode::always_closed;
    cell.app.shutter.toggle_probability
        = cfg.mode == ShutterMode::random_toggle ? cfg.toggle_probability : 0;

    auto const& pop = cfg.populations;
    auto reflection = [&pop](RunStreams& rng) {
        if (pop.size() == 1)
        {
            return pop[0].reflection;
        }
        return rng.population.uniform() < pop[0].weight ? pop[0].reflection
                                                        : pop[1].reflection;
    };

    SourceConfig const src = plain_source(cfg.n_particles);
    for (std::size_t i = 0; i < cfg.chi.size(); ++i)
    {
        cell.begin_setting();
        Topology topo;
        topo.phi1 = cfg.chi[i];
        topo.shutter = true;
        cell.run(src, topo, i, reflection);
    }

    std::vector<double> detected;
    for (char const* label : {"open", "closed"})
    {
        bool const is_open = std::string(label) == "open";
        std::vector<double> chi_v, f_v, s_v;
        for (std::size_t i = 0; i < cfg.chi.size(); ++i)
        {
            double const chi = cfg.chi[i];
            auto const n_o = cell.counters.count(i, Beam::o, label);
            auto const n_h = cell.counters.count(i, Beam::h, label);
            auto const n = n_o + n_h;
            if (n == 0)
            {
                continue;
            }
            auto const qt = shutter_oracle(cfg, chi);
            double const f_qt = is_open ? qt.open : qt.closed;
            for (Beam b : {Beam::o, Beam::h})
            {
                ResultRow row;
                row.settings = {chi};
                row.beam = to_string(b);
                row.label = label;
                row.count = b == Beam::o ? n_o : n_h;
                row.normalized = static_cast<double>(row.count) / n;
                row.oracle = b == Beam::o ? f_qt : 1 - f_qt;
                row.stderr_value
                    = binomial_stderr(row.normalized, static_cast<double>(n));
                rec.table.rows.push_back(row);
            }
            double const f = static_cast<double>(n_o) / n;
            chi_v.push_back(chi);
            f_v.push_back(f);
            // Floor at one count so all-O or all-H settings keep a weight
            s_v.push_back(std::max(binomial_stderr(f, static_cast<double>(n)),
                                   1.0 / static_cast<double>(n)));
        }
        if (f_v.empty())
        {
            continue;
        }
        std::string const pre = std::string(label) + "_";
        rec.add_stat(pre + "mean", sample_mean(f_v));
        rec.add_stat(pre + "max", *std::max_element(f_v.begin(), f_v.end()));
        rec.add_stat(pre + "min", *std::min_element(f_v.begin(), f_v.end()));
        if (f_v.size() >= 2)
        {
            auto const line = fit_line(chi_v, f_v, s_v);
            rec.add_stat(pre + "slope", line.slope);
            rec.add_stat(pre + "slope_stderr", line.slope_stderr);
        }
        if (f_v.size() >= 3)
        {
            auto const fit = fit_sinusoid(chi_v, f_v);
            rec.add_stat(pre + "visibility", fit.visibility());
            rec.add_stat(pre + "phase", fit.phase());
        }
    }
    for (std::size_t i = 0; i < cfg.chi.size(); ++i)
    {
        detected.push_back(static_cast<double>(
            cell.counters.count(i, Beam::o) + cell.counters.count(i, Beam::h)));
    }
    rec.add_stat("detected_per_setting", sample_mean(detected));
    record_terminals(rec, cell);
    return rec;
}

//---------------------------------------------------------------------------//
// LEARNING TRACE
//---------------------------------------------------------------------------//
/*!
 * The expectation of x0 and its standard deviation follow from the linear
 * update: E_n = g E_{n-1} + (1 - g) p and V_n = g^2 V_{n-1} + (1 - g)^2
 * p (1 - p).
 */
ExperimentRecord run_learning_trace(LearningTraceSpec const& spec)
{
    ExperimentRecord rec;
    rec.experiment = "learning-trace";
    rec.seed = spec.seed;
    rec.config = to_json(spec);
    rec.table.setting_columns = {"event"};

    auto const trace = dlm_learning_trace(spec);
    double const g = spec.gamma;
    double mean = 0;
    double var = 0;
    for (std::size_t n = 0; n < trace.size(); ++n)
    {
        double const p = n < spec.switch_at ? spec.p_port0 : spec.p_after;
        mean = g * mean + (1 - g) * p;
        var = g * g * var + (1 - g) * (1 - g) * p * (1 - p);
        ResultRow row;
        row.settings = {static_cast<double>(n + 1)};
        row.beam = "-";
        row.label = "x0";
        row.count = n + 1;
        row.normalized = trace[n];
        row.oracle = mean;
        row.stderr_value = std::sqrt(var);
        rec.table.rows.push_back(std::move(row));
    }
    rec.emitted = trace.size();
    return rec;
}

//---------------------------------------------------------------------------//
}  // namespace nisim
