//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Analysis.cc
//---------------------------------------------------------------------------//
#include "nisim/Analysis.hh"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace nisim
{
//---------------------------------------------------------------------------//
double SinusoidFit::amplitude() const
{
    return std::hypot(c1, s1);
}

double SinusoidFit::phase() const
{
    return std::atan2(s1, c1);
}

double SinusoidFit::visibility() const
{
    return c0 == 0 ? 0 : this->amplitude() / std::fabs(c0);
}

double SinusoidFit::operator()(double chi) const
{
    return c0 + c1 * std::cos(chi) + s1 * std::sin(chi);
}

//---------------------------------------------------------------------------//
/*!
 * Solve the 3x3 normal equations by Gaussian elimination with partial
 * pivoting.
 */
SinusoidFit fit_sinusoid(std::span<double const> chi, std::span<double const> y)
{
    if (chi.size() != y.size())
    {
        throw std::invalid_argument("sinusoid fit: size mismatch");
    }
    std::array<std::array<double, 4>, 3> a{};
    for (std::size_t k = 0; k < chi.size(); ++k)
    {
        std::array<double, 3> const f{1, std::cos(chi[k]), std::sin(chi[k])};
        for (int i = 0; i < 3; ++i)
        {
            for (int j = 0; j < 3; ++j)
            {
                a[i][j] += f[i] * f[j];
            }
            a[i][3] += f[i] * y[k];
        }
    }

    for (int col = 0; col < 3; ++col)
    {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
        {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col]))
            {
                pivot = r;
            }
        }
        if (std::fabs(a[pivot][col]) < 1e-12 * (1 + std::fabs(a[0][0])))
        {
            throw std::invalid_argument(
                "sinusoid fit: phase grid does not determine three "
                "coefficients");
        }
        std::swap(a[col], a[pivot]);
        for (int r = 0; r < 3; ++r)
        {
            if (r == col)
            {
                continue;
            }
            double const f = a[r][col] / a[col][col];
            for (int c = col; c < 4; ++c)
            {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    return {a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
}

//---------------------------------------------------------------------------//
VisibilityResult analyze_visibility(std::span<double const> chi,
                                    std::span<double const> counts)
{
    SinusoidFit const fit = fit_sinusoid(chi, counts);
    return {fit.visibility(), fit.amplitude(), fit.phase()};
}

//---------------------------------------------------------------------------//
double
analyze_correlation(double n_ac, double n_apcp, double n_acp, double n_apc)
{
    double const plus = n_ac + n_apcp;
    double const minus = n_acp + n_apc;
    double const total = plus + minus;
    return total == 0 ? 0 : (plus - minus) / total;
}

//---------------------------------------------------------------------------//
double binomial_stderr(double p, double n)
{
    if (!(n > 0))
    {
        return 0;
    }
    return std::sqrt(std::max(p * (1 - p), 0.0) / n);
}

double sample_mean(std::span<double const> v)
{
    if (v.empty())
    {
        return 0;
    }
    return std::accumulate(v.begin(), v.end(), 0.0)
           / static_cast<double>(v.size());
}

double sample_stddev(std::span<double const> v)
{
    if (v.size() < 2)
    {
        return 0;
    }
    double const mean = sample_mean(v);
    double ss = 0;
    for (double x : v)
    {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

//---------------------------------------------------------------------------//
LinearFit fit_line(std::span<double const> x,
                   std::span<double const> y,
                   std::span<double const> sigma)
{
    if (x.size() != y.size() || x.size() != sigma.size() || x.size() < 2)
    {
        throw std::invalid_argument("line fit: need matching sizes >= 2");
    }
    double s = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(sigma[i] > 0))
        {
            throw std::invalid_argument("line fit: sigma must be positive");
        }
        double const w = 1 / (sigma[i] * sigma[i]);
        s += w;
        sx += w * x[i];
        sy += w * y[i];
        sxx += w * x[i] * x[i];
        sxy += w * x[i] * y[i];
    }
    double const det = s * sxx - sx * sx;
    if (!(det > 0))
    {
        throw std::invalid_argument("line fit: degenerate abscissae");
    }
    LinearFit fit;
    fit.slope = (s * sxy - sx * sy) / det;
    fit.intercept = (sxx * sy - sx * sxy) / det;
    fit.slope_stderr = std::sqrt(s / det);
    return fit;
}

//---------------------------------------------------------------------------//
}  // namespace nisim
