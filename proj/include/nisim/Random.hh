//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Random.hh
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace nisim
{
//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 counter-based block function.
 *
 * Maps a 128-bit counter and a 64-bit key to 128 pseudo-random bits. The
 * output for a given (counter, key) is fixed, so any draw of any stream can
 * be reproduced without replaying the stream.
 */
class Philox4x32
{
  public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key);
};

//---------------------------------------------------------------------------//
//! Independent substreams of one run
enum class StreamId : std::uint32_t
{
    source_noise = 1,
    arrival,
    splitter,
    absorber,
    analyzer,
    shutter,
    population,
    random_chi,
    learning,
};

//---------------------------------------------------------------------------//
/*!
 * Sequential view of one Philox substream.
 *
 * The key is the master seed; the upper counter words hold the stream id and
 * the cell index (replica or independent sweep cell), the lower words count
 * blocks. Satisfies UniformRandomBitGenerator.
 */
class RngStream
{
  public:
    using result_type = std::uint32_t;

    RngStream(std::uint64_t seed, StreamId stream, std::uint32_t cell = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max()
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()();

    //! Uniform double on [0, 1) with 53 random bits
    double uniform();

  private:
    Philox4x32::Key key_;
    std::uint32_t stream_;
    std::uint32_t cell_;
    std::uint64_t block_{0};
    Philox4x32::Counter buffer_{};
    int used_{4};
};

//---------------------------------------------------------------------------//
}  // namespace nisim
