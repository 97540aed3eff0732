//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file nisim/Config.hh
//! JSON run configuration: parsing, validation and canonical snapshots.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json.hpp>

#include "Experiments.hh"

namespace nisim
{
using Json = nlohmann::ordered_json;

//---------------------------------------------------------------------------//
//! Invalid configuration; the message starts with the offending path
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string path, std::string const& what);

    std::string const& path() const { return path_; }

  private:
    std::string path_;
};

//---------------------------------------------------------------------------//
using ExperimentParams = std::variant<MziConfig,
                                      AbsorberConfig,
                                      BellConfig,
                                      RfConfig,
                                      LowCountConfig,
                                      ShutterConfig,
                                      LearningTraceSpec>;

struct RunConfig
{
    std::string experiment;
    std::uint64_t seed{1};
    ExperimentParams params;
};

// Parse and validate JSON text; throws ConfigError
RunConfig parse_config(std::string_view text);
RunConfig parse_config(Json const& j);
inline RunConfig parse_config(char const* text)
{
    return parse_config(std::string_view(text));
}
inline RunConfig parse_config(std::string const& text)
{
    return parse_config(std::string_view(text));
}

// Parse an angle such as "60deg", "1.5rad" or "0.25pi"; throws ConfigError
double parse_angle(std::string_view text, std::string const& path = "$");

// Canonical snapshot with every default made explicit; parses back to an
// identical configuration
Json to_json(MziConfig const& c);
Json to_json(AbsorberConfig const& c);
Json to_json(BellConfig const& c);
Json to_json(RfConfig const& c);
Json to_json(LowCountConfig const& c);
Json to_json(ShutterConfig const& c);
Json to_json(LearningTraceSpec const& c);
Json to_json(RunConfig const& c);

// Dispatch on the parameter type
ExperimentRecord run_experiment(RunConfig const& c);

//---------------------------------------------------------------------------//
}  // namespace nisim
