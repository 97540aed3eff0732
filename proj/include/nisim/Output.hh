//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Output.hh
//! CSV and JSON serialization of experiment records.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "Experiments.hh"

namespace nisim
{
//! Version stamped into every output file
inline constexpr int output_schema_version = 1;

enum class OutputFormat
{
    csv,
    json,
};

OutputFormat parse_output_format(std::string const& s);

// Decimal text with 17 significant digits
std::string format_real(double v);

// CSV: '#' provenance lines, a header row, then one line per table row
void write_csv(ExperimentRecord const& rec, std::ostream& os);
void write_json(ExperimentRecord const& rec, std::ostream& os);
void write_results(ExperimentRecord const& rec,
                   OutputFormat format,
                   std::ostream& os);

// Write to a file; throws std::runtime_error on I/O failure
void write_results(ExperimentRecord const& rec,
                   OutputFormat format,
                   std::string const& path);

nlohmann::ordered_json record_to_json(ExperimentRecord const& rec);
ExperimentRecord record_from_json(nlohmann::ordered_json const& j);

// Table part of a CSV file (provenance lines are skipped)
ResultTable read_csv_table(std::istream& is);

//---------------------------------------------------------------------------//
}  // namespace nisim
