//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Dlm.cc
//---------------------------------------------------------------------------//
#include "nisim/Dlm.hh"

#include <cassert>
#include <cmath>

#include "nisim/Random.hh"

namespace nisim
{
//---------------------------------------------------------------------------//
DlmState DlmState::cold(double gamma)
{
    DlmState s;
    s.gamma = gamma;
    return s;
}

//---------------------------------------------------------------------------//
double SplitterAmplitudes::weight(int port) const
{
    auto const& z = port == 0 ? port0 : port1;
    return std::norm(z[0]) + std::norm(z[1]);
}

//---------------------------------------------------------------------------//
/*!
 * Copy the message into the register of its port and update
 * x <- gamma x + (1 - gamma) v.
 */
void dlm_update(DlmState& state, int port, Message const& m)
{
    assert(port == 0 || port == 1);
    double const gamma = state.suspended ? 0.0 : state.gamma;
    state.suspended = false;

    state.registers[port] = m;
    int const other = 1 - port;
    state.x[other] *= gamma;
    state.x[port] = gamma * state.x[port] + (1 - gamma);

    // Keep x0 + x1 <= 1 under rounding
    while (state.x[port] + state.x[other] > 1.0)
    {
        state.x[port] = std::nextafter(state.x[port], 0.0);
    }
}

//---------------------------------------------------------------------------//
/*!
 * Combine x and the registers and apply the splitter matrix.
 *
 * Both spin components are treated alike:
 * Z_{0,s} = sqrt(T x0) Y_{0,s} + i sqrt(R x1) Y_{1,s}
 * Z_{1,s} = i sqrt(R x0) Y_{0,s} + sqrt(T x1) Y_{1,s}
 */
SplitterAmplitudes
dlm_transform(DlmState const& state, SplitterParams const& params)
{
    double const t = std::sqrt(params.transmission());
    Complex const ir{0, std::sqrt(params.reflection)};
    double const s0 = std::sqrt(state.x[0]);
    double const s1 = std::sqrt(state.x[1]);
    Message const& y0 = state.registers[0];
    Message const& y1 = state.registers[1];

    SplitterAmplitudes z;
    z.port0 = {t * s0 * y0.up + ir * s1 * y1.up,
               t * s0 * y0.down + ir * s1 * y1.down};
    z.port1 = {ir * s0 * y0.up + t * s1 * y1.up,
               ir * s0 * y0.down + t * s1 * y1.down};
    return z;
}

//---------------------------------------------------------------------------//
/*!
 * Select port 1 iff z = |Z11|^2 + |Z12|^2 > u, then normalize.
 */
std::optional<SplitterOutput>
dlm_select_output(SplitterAmplitudes const& z, double uniform)
{
    int const port = z.weight(1) > uniform ? 1 : 0;
    double const w = z.weight(port);
    if (!(w > 0))
    {
        return std::nullopt;
    }
    double const inv = 1 / std::sqrt(w);
    auto const& amp = port == 0 ? z.port0 : z.port1;
    return SplitterOutput{port, Message{amp[0] * inv, amp[1] * inv}};
}

//---------------------------------------------------------------------------//
std::optional<SplitterOutput> dlm_process(DlmState& state,
                                          SplitterParams const& params,
                                          int port,
                                          Message const& m,
                                          double uniform)
{
    dlm_update(state, port, m);
    return dlm_select_output(dlm_transform(state, params), uniform);
}

//---------------------------------------------------------------------------//
std::vector<double> dlm_learning_trace(LearningTraceSpec const& spec)
{
    RngStream rng(spec.seed, StreamId::learning);
    DlmState state = DlmState::cold(spec.gamma);
    std::vector<double> trace;
    trace.reserve(spec.n_events);
    for (std::size_t n = 0; n < spec.n_events; ++n)
    {
        double const p = n < spec.switch_at ? spec.p_port0 : spec.p_after;
        int const port = rng.uniform() < p ? 0 : 1;
        dlm_update(state, port, Message{});
        trace.push_back(state.x[0]);
    }
    return trace;
}

//---------------------------------------------------------------------------//
}  // namespace nisim
