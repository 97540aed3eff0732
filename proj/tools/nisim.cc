//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/nisim.cc
//---------------------------------------------------------------------------//
#include <iostream>
#include <string>
#include <vector>

#include "Cli.hh"

int main(int argc, char* argv[])
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return nisim::run_command(args, std::cout, std::cerr);
}
