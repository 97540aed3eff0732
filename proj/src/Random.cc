//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Random.cc
//---------------------------------------------------------------------------//
#include "nisim/Random.hh"

namespace nisim
{
namespace
{
constexpr std::uint32_t mult0 = 0xD2511F53u;
constexpr std::uint32_t mult1 = 0xCD9E8D57u;
constexpr std::uint32_t weyl0 = 0x9E3779B9u;
constexpr std::uint32_t weyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a,
                    std::uint32_t b,
                    std::uint32_t& hi,
                    std::uint32_t& lo)
{
    std::uint64_t const prod = std::uint64_t{a} * std::uint64_t{b};
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
}
}  // namespace

//---------------------------------------------------------------------------//
auto Philox4x32::block(Counter ctr, Key key) -> Counter
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += weyl0;
            key[1] += weyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(mult0, ctr[0], hi0, lo0);
        mulhilo(mult1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

//---------------------------------------------------------------------------//
RngStream::RngStream(std::uint64_t seed, StreamId stream, std::uint32_t cell)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)}
    , stream_{static_cast<std::uint32_t>(stream)}
    , cell_{cell}
{
}

//---------------------------------------------------------------------------//
auto RngStream::operator()() -> result_type
{
    if (used_ == 4)
    {
        buffer_ = Philox4x32::block({static_cast<std::uint32_t>(block_),
                                     static_cast<std::uint32_t>(block_ >> 32),
                                     stream_,
                                     cell_},
                                    key_);
        ++block_;
        used_ = 0;
    }
    return buffer_[used_++];
}

//---------------------------------------------------------------------------//
double RngStream::uniform()
{
    std::uint64_t const hi = (*this)() >> 5;  // 27 bits
    std::uint64_t const lo = (*this)() >> 6;  // 26 bits
    return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

//---------------------------------------------------------------------------//
}  // namespace nisim
