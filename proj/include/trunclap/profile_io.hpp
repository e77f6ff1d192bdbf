#ifndef TRUNCLAP_PROFILE_IO_HPP
#define TRUNCLAP_PROFILE_IO_HPP

#include <iosfwd>
#include <string>

#include "trunclap/mesh.hpp"

namespace trunclap {

/// Shortest decimal representation that round-trips bit-exactly.
std::string format_double(double value);
double parse_double(const std::string& text);

/// CSV with header r,u[,du[,d2u]]; derivative columns appear when present.
void write_profile_csv(const RadialProfile& profile, std::ostream& out);
std::string profile_to_csv(const RadialProfile& profile);
RadialProfile read_profile_csv(std::istream& in);
RadialProfile profile_from_csv(const std::string& text);

/// JSON object {"r": [...], "u": [...], "du": [...]?, "d2u": [...]?}.
std::string profile_to_json(const RadialProfile& profile);
RadialProfile profile_from_json(const std::string& text);

}  // namespace trunclap

#endif
