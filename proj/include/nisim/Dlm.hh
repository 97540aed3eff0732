//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Dlm.hh
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "Message.hh"

namespace nisim
{
//---------------------------------------------------------------------------//
/*!
 * Internal state of a deterministic learning machine (one beam splitter).
 *
 * \c x holds the exponentially smoothed arrival frequencies on input ports 0
 * and 1, and \c registers the last message seen on each port. Together they
 * occupy ten real numbers.
 *
 * A cold machine has x = (0, 0) and both registers spin-up with zero phase.
 */
struct DlmState
{
    std::array<double, 2> x{0, 0};
    std::array<Message, 2> registers{};
    double gamma{0.99};
    //! Use gamma = 0 for the next update only (shutter "shake" reset)
    bool suspended{false};

    static DlmState cold(double gamma);
};

//! Reflection probability of a splitter; transmission is 1 - R
struct SplitterParams
{
    double reflection{0.5};

    double transmission() const { return 1 - reflection; }
};

//! Transformation-stage output (Z01, Z11, Z02, Z12)
struct SplitterAmplitudes
{
    //! Output port 0: spin up, spin down
    std::array<Complex, 2> port0;
    //! Output port 1: spin up, spin down
    std::array<Complex, 2> port1;

    double weight(int port) const;
};

//! A message leaving a splitter
struct SplitterOutput
{
    int port{0};
    Message message;
};

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//

// Input stage: store the message and relax x towards the port indicator
void dlm_update(DlmState& state, int port, Message const& m);

// Transformation stage
SplitterAmplitudes
dlm_transform(DlmState const& state, SplitterParams const& params);

// Output stage; empty if the selected branch has zero weight (cold start)
std::optional<SplitterOutput>
dlm_select_output(SplitterAmplitudes const& z, double uniform);

// Full processor: input stage, transformation, output stage
std::optional<SplitterOutput> dlm_process(DlmState& state,
                                          SplitterParams const& params,
                                          int port,
                                          Message const& m,
                                          double uniform);

//---------------------------------------------------------------------------//
//! Port-probability step for a learning trace
struct LearningTraceSpec
{
    double p_port0{0.8};
    double gamma{0.99};
    std::size_t n_events{2000};
    std::size_t switch_at{1000};
    double p_after{0.2};
    std::uint64_t seed{1};
};

// x0 after each of n_events Bernoulli port choices, starting from x0 = 0
std::vector<double> dlm_learning_trace(LearningTraceSpec const& spec);

//---------------------------------------------------------------------------//
}  // namespace nisim
