//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 The nisim developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file src/Output.cc
//---------------------------------------------------------------------------//
#include "nisim/Output.hh"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nisim
{
namespace
{
using Json = nlohmann::ordered_json;

constexpr char const* fixed_columns[]
    = {"beam", "label", "count", "normalized", "oracle", "stderr"};

std::vector<std::string> split_csv_line(std::string const& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ','))
    {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',')
    {
        out.emplace_back();
    }
    return out;
}

double read_real(std::string const& s)
{
    if (s == "nan")
    {
        return std::nan("");
    }
    if (s == "inf" || s == "-inf")
    {
        return s[0] == '-' ? -HUGE_VAL : HUGE_VAL;
    }
    double v = 0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
    {
        throw std::runtime_error("cannot read number '" + s + "'");
    }
    return v;
}

Json real_json(double v)
{
    // JSON has no NaN or infinity
    if (!std::isfinite(v))
    {
        return format_real(v);
    }
    return v;
}

double real_from_json(Json const& j)
{
    if (j.is_string())
    {
        return read_real(j.get<std::string>());
    }
    return j.get<double>();
}
}  // namespace

//---------------------------------------------------------------------------//
OutputFormat parse_output_format(std::string const& s)
{
    if (s == "csv")
    {
        return OutputFormat::csv;
    }
    if (s == "json")
    {
        return OutputFormat::json;
    }
    throw std::invalid_argument("unknown output format '" + s
                                + "' (expected csv or json)");
}

std::string format_real(double v)
{
    std::array<char, 40> buf{};
    auto const r = std::to_chars(
        buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), r.ptr);
}

//---------------------------------------------------------------------------//
void write_csv(ExperimentRecord const& rec, std::ostream& os)
{
    os << "# nisim-csv-schema: " << output_schema_version << '\n'
       << "# experiment: " << rec.experiment << '\n'
       << "# seed: " << rec.seed << '\n'
       << "# config: " << rec.config.dump() << '\n'
       << "# emitted: " << rec.emitted << '\n';
    for (auto const& [name, count] : rec.terminals)
    {
        os << "# terminal " << name << ": " << count << '\n';
    }
    for (auto const& [name, value] : rec.derived)
    {
        os << "# stat " << name << ": " << format_real(value) << '\n';
    }

    bool first = true;
    auto sep = [&] {
        if (!first)
        {
            os << ',';
        }
        first = false;
    };
    for (auto const& c : rec.table.setting_columns)
    {
        sep();
        os << c;
    }
    for (auto const* c : fixed_columns)
    {
        sep();
        os << c;
    }
    os << '\n';

    for (auto const& row : rec.table.rows)
    {
        for (double s : row.settings)
        {
            os << format_real(s) << ',';
        }
        os << row.beam << ',' << row.label << ',' << row.count << ','
           << format_real(row.normalized) << ',' << format_real(row.oracle)
           << ',' << format_real(row.stderr_value) << '\n';
    }
}

//---------------------------------------------------------------------------//
Json record_to_json(ExperimentRecord const& rec)
{
    Json j;
    j["schema"] = output_schema_version;
    j["experiment"] = rec.experiment;
    j["seed"] = rec.seed;
    j["config"] = rec.config;
    j["emitted"] = rec.emitted;
    j["terminals"] = Json::object();
    for (auto const& [name, count] : rec.terminals)
    {
        j["terminals"][name] = count;
    }
    j["derived"] = Json::object();
    for (auto const& [name, value] : rec.derived)
    {
        j["derived"][name] = real_json(value);
    }

    Json cols = Json::array();
    for (auto const& c : rec.table.setting_columns)
    {
        cols.push_back(c);
    }
    for (auto const* c : fixed_columns)
    {
        cols.push_back(c);
    }
    j["columns"] = cols;

    Json rows = Json::array();
    for (auto const& row : rec.table.rows)
    {
        Json r;
        for (std::size_t i = 0; i < row.settings.size(); ++i)
        {
            r[rec.table.setting_columns.at(i)] = real_json(row.settings[i]);
        }
        r["beam"] = row.beam;
        r["label"] = row.label;
        r["count"] = row.count;
        r["normalized"] = real_json(row.normalized);
        r["oracle"] = real_json(row.oracle);
        r["stderr"] = real_json(row.stderr_value);
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

ExperimentRecord record_from_json(Json const& j)
{
    ExperimentRecord rec;
    rec.experiment = j.at("experiment").get<std::string>();
    rec.seed = j.at("seed").get<std::uint64_t>();
    rec.config = j.at("config");
    rec.emitted = j.at("emitted").get<std::uint64_t>();
    for (auto const& [name, count] : j.at("terminals").items())
    {
        rec.terminals[name] = count.get<std::uint64_t>();
    }
    for (auto const& [name, value] : j.at("derived").items())
    {
        rec.derived.emplace_back(name, real_from_json(value));
    }
    auto const& cols = j.at("columns");
    std::size_t const n_fixed = std::size(fixed_columns);
    if (cols.size() < n_fixed)
    {
        throw std::runtime_error("record JSON: too few columns");
    }
    for (std::size_t i = 0; i + n_fixed < cols.size(); ++i)
    {
        rec.table.setting_columns.push_back(cols[i].get<std::string>());
    }
    for (auto const& r : j.at("rows"))
    {
        ResultRow row;
        for (auto const& c : rec.table.setting_columns)
        {
            row.settings.push_back(real_from_json(r.at(c)));
        }
        row.beam = r.at("beam").get<std::string>();
        row.label = r.at("label").get<std::string>();
        row.count = r.at("count").get<std::uint64_t>();
        row.normalized = real_from_json(r.at("normalized"));
        row.oracle = real_from_json(r.at("oracle"));
        row.stderr_value = real_from_json(r.at("stderr"));
        rec.table.rows.push_back(std::move(row));
    }
    return rec;
}

void write_json(ExperimentRecord const& rec, std::ostream& os)
{
    os << record_to_json(rec).dump(2) << '\n';
}

//---------------------------------------------------------------------------//
void write_results(ExperimentRecord const& rec,
                   OutputFormat format,
                   std::ostream& os)
{
    if (format == OutputFormat::csv)
    {
        write_csv(rec, os);
    }
    else
    {
        write_json(rec, os);
    }
}

void write_results(ExperimentRecord const& rec,
                   OutputFormat format,
                   std::string const& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_results(rec, format, out);
    out.flush();
    if (!out)
    {
        throw std::runtime_error("error writing '" + path + "'");
    }
}

//---------------------------------------------------------------------------//
ResultTable read_csv_table(std::istream& is)
{
    ResultTable table;
    std::string line;
    bool have_header = false;
    std::size_t n_settings = 0;
    std::size_t const n_fixed = std::size(fixed_columns);
    while (std::getline(is, line))
    {
        if (line.empty() || line[0] == '#')
        {
            continue;
        }
        auto fields = split_csv_line(line);
        if (!have_header)
        {
            if (fields.size() < n_fixed)
            {
                throw std::runtime_error("CSV header has too few columns");
            }
            n_settings = fields.size() - n_fixed;
            table.setting_columns.assign(fields.begin(),
                                         fields.begin() + n_settings);
            have_header = true;
            continue;
        }
        if (fields.size() != n_settings + n_fixed)
        {
            throw std::runtime_error("CSV row has wrong number of fields");
        }
        ResultRow row;
        for (std::size_t i = 0; i < n_settings; ++i)
        {
            row.settings.push_back(read_real(fields[i]));
        }
        row.beam = fields[n_settings];
        row.label = fields[n_settings + 1];
        row.count = std::stoull(fields[n_settings + 2]);
        row.normalized = read_real(fields[n_settings + 3]);
        row.oracle = read_real(fields[n_settings + 4]);
        row.stderr_value = read_real(fields[n_settings + 5]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

//---------------------------------------------------------------------------//
}  // namespace nisim
