//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Analysis.hh
//! Fits and estimators applied to detector counts.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>

namespace nisim
{
//---------------------------------------------------------------------------//
/*!
 * Least-squares fit of y = c0 + c1 cos(chi) + s1 sin(chi).
 *
 * Equivalently y = c0 + A cos(chi - chi0) with A = hypot(c1, s1) and
 * chi0 = atan2(s1, c1).
 */
struct SinusoidFit
{
    double c0{0};
    double c1{0};
    double s1{0};

    double amplitude() const;
    double phase() const;
    //! |A| / c0, zero for a vanishing offset
    double visibility() const;
    double operator()(double chi) const;
};

// Throws std::invalid_argument for mismatched sizes or a singular system
SinusoidFit fit_sinusoid(std::span<double const> chi, std::span<double const> y);

struct VisibilityResult
{
    double visibility{0};
    double amplitude{0};
    double phase{0};
};

VisibilityResult analyze_visibility(std::span<double const> chi,
                                    std::span<double const> counts);

//---------------------------------------------------------------------------//
/*!
 * Spin-path correlation from the four counts (or count rates)
 * N(a, c), N(a + pi, c + pi), N(a, c + pi), N(a + pi, c).
 */
double
analyze_correlation(double n_ac, double n_apcp, double n_acp, double n_apc);

//---------------------------------------------------------------------------//
//! Standard error of a binomial proportion
double binomial_stderr(double p, double n);

double sample_mean(std::span<double const> v);
//! Unbiased (n - 1) sample standard deviation
double sample_stddev(std::span<double const> v);

struct LinearFit
{
    double intercept{0};
    double slope{0};
    double slope_stderr{0};
};

// Weighted least squares with known per-point standard deviations
LinearFit fit_line(std::span<double const> x,
                   std::span<double const> y,
                   std::span<double const> sigma);

//---------------------------------------------------------------------------//
}  // namespace nisim
