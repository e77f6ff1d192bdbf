#include "trunclap/profile_io.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace trunclap {

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last)
        throw std::invalid_argument("parse_double: bad number '" + text + "'");
    return value;
}

void write_profile_csv(const RadialProfile& profile, std::ostream& out) {
    validate(profile);
    const bool du = profile.has_deriv();
    const bool d2u = du && profile.has_deriv2();
    out << "r,u";
    if (du) out << ",du";
    if (d2u) out << ",d2u";
    out << "\n";
    for (std::size_t i = 0; i < profile.size(); ++i) {
        out << format_double(profile.mesh.nodes[i]) << ',' << format_double(profile.values[i]);
        if (du) out << ',' << format_double(profile.deriv[i]);
        if (d2u) out << ',' << format_double(profile.deriv2[i]);
        out << "\n";
    }
}

std::string profile_to_csv(const RadialProfile& profile) {
    std::ostringstream out;
    write_profile_csv(profile, out);
    return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

RadialProfile read_profile_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("profile CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "r" || header[1] != "u")
        throw std::invalid_argument("profile CSV: header must start with r,u");
    const bool du = header.size() >= 3 && header[2] == "du";
    const bool d2u = header.size() >= 4 && header[3] == "d2u";
    if ((header.size() >= 3 && !du) || (header.size() >= 4 && !d2u))
        throw std::invalid_argument("profile CSV: unexpected header columns");

    RadialProfile profile;
    std::vector<double> nodes;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        const std::size_t expected = 2 + (du ? 1 : 0) + (d2u ? 1 : 0);
        if (fields.size() != expected)
            throw std::invalid_argument("profile CSV: wrong field count in row");
        nodes.push_back(parse_double(fields[0]));
        profile.values.push_back(parse_double(fields[1]));
        if (du) profile.deriv.push_back(parse_double(fields[2]));
        if (d2u) profile.deriv2.push_back(parse_double(fields[3]));
    }
    profile.mesh = mesh_from_nodes(std::move(nodes));
    validate(profile);
    return profile;
}

RadialProfile profile_from_csv(const std::string& text) {
    std::istringstream in(text);
    return read_profile_csv(in);
}

std::string profile_to_json(const RadialProfile& profile) {
    validate(profile);
    nlohmann::json j;
    j["r"] = profile.mesh.nodes;
    j["u"] = profile.values;
    if (profile.has_deriv()) j["du"] = profile.deriv;
    if (profile.has_deriv2()) j["d2u"] = profile.deriv2;
    return j.dump();
}

RadialProfile profile_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    RadialProfile profile;
    profile.mesh = mesh_from_nodes(j.at("r").get<std::vector<double>>());
    profile.values = j.at("u").get<std::vector<double>>();
    if (j.contains("du")) profile.deriv = j.at("du").get<std::vector<double>>();
    if (j.contains("d2u")) profile.deriv2 = j.at("d2u").get<std::vector<double>>();
    validate(profile);
    return profile;
}

}  // namespace trunclap
