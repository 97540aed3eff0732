//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/unit/AnalysisTest.cc
//---------------------------------------------------------------------------//
#include "nisim/Analysis.hh"

#include <cmath>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "nisim/Message.hh"

namespace nisim
{
//---------------------------------------------------------------------------//
TEST(AnalysisTest, sinusoid_fit_exact_recovery)
{
    // Five-point grid with a repeated endpoint, as in the low-count runs
    std::vector<double> chi{0, pi / 2, pi, 3 * pi / 2, 2 * pi};
    std::vector<double> y;
    for (double c : chi)
    {
        y.push_back(3.0 + 1.2 * std::cos(c - 0.7));
    }
    auto const f = fit_sinusoid(chi, y);
    EXPECT_NEAR(f.c0, 3.0, 1e-9);
    EXPECT_NEAR(f.amplitude(), 1.2, 1e-9);
    EXPECT_NEAR(f.phase(), 0.7, 1e-9);
    EXPECT_NEAR(f.visibility(), 0.4, 1e-9);
    EXPECT_NEAR(f(1.0), 3.0 + 1.2 * std::cos(0.3), 1e-9);
}

TEST(AnalysisTest, sinusoid_fit_errors)
{
    std::vector<double> chi{0, 1}, y{1};
    EXPECT_THROW(fit_sinusoid(chi, y), std::invalid_argument);
    // All points at one angle: cos and sin columns are degenerate
    std::vector<double> same{0.5, 0.5, 0.5}, ys{1, 2, 3};
    EXPECT_THROW(fit_sinusoid(same, ys), std::invalid_argument);
    SinusoidFit zero;
    EXPECT_EQ(zero.visibility(), 0);
}

TEST(AnalysisTest, visibility_of_counts)
{
    std::vector<double> chi, n;
    for (int i = 0; i < 16; ++i)
    {
        chi.push_back(2 * pi * i / 16);
        n.push_back(100 * (1 + 0.6 * std::cos(chi.back() + 0.2)));
    }
    auto const v = analyze_visibility(chi, n);
    EXPECT_NEAR(v.visibility, 0.6, 1e-12);
    EXPECT_NEAR(v.amplitude, 60, 1e-10);
    EXPECT_NEAR(v.phase, -0.2, 1e-12);
}

TEST(AnalysisTest, correlation)
{
    EXPECT_DOUBLE_EQ(analyze_correlation(10, 10, 0, 0), 1);
    EXPECT_DOUBLE_EQ(analyze_correlation(0, 0, 5, 5), -1);
    EXPECT_DOUBLE_EQ(analyze_correlation(3, 1, 1, 3), 0);
    EXPECT_DOUBLE_EQ(analyze_correlation(6, 2, 1, 1), 0.6);
    EXPECT_DOUBLE_EQ(analyze_correlation(0, 0, 0, 0), 0);
}

TEST(AnalysisTest, estimators)
{
    EXPECT_DOUBLE_EQ(binomial_stderr(0.25, 300), std::sqrt(0.25 * 0.75 / 300));
    std::vector<double> v{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(sample_mean(v), 2.5);
    EXPECT_NEAR(sample_stddev(v), std::sqrt(5.0 / 3), 1e-15);
}

// Weighted least squares against the textbook normal equations
TEST(AnalysisTest, line_fit)
{
    std::vector<double> x{0, 1, 2, 3}, y{1, 3.1, 4.9, 7.2},
        s{0.1, 0.2, 0.1, 0.3};
    double S = 0, Sx = 0, Sy = 0, Sxx = 0, Sxy = 0;
    for (int i = 0; i < 4; ++i)
    {
        double const w = 1 / (s[i] * s[i]);
        S += w;
        Sx += w * x[i];
        Sy += w * y[i];
        Sxx += w * x[i] * x[i];
        Sxy += w * x[i] * y[i];
    }
    double const d = S * Sxx - Sx * Sx;
    auto const f = fit_line(x, y, s);
    EXPECT_NEAR(f.slope, (S * Sxy - Sx * Sy) / d, 1e-12);
    EXPECT_NEAR(f.intercept, (Sxx * Sy - Sx * Sxy) / d, 1e-12);
    EXPECT_NEAR(f.slope_stderr, std::sqrt(S / d), 1e-12);

    std::vector<double> one{1};
    EXPECT_THROW(fit_line(one, one, one), std::invalid_argument);
}

//---------------------------------------------------------------------------//
}  // namespace nisim
