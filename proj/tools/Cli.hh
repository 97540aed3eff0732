//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/Cli.hh
//! Command-line front end, separated from main() for testing.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nisim
{
//---------------------------------------------------------------------------//
// Run the nisim command line; args excludes the program name
int run_command(std::vector<std::string> const& args,
                std::ostream& out,
                std::ostream& err);

//---------------------------------------------------------------------------//
}  // namespace nisim
