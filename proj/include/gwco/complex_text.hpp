#pragma once

#include <string>

#include "gwco/numeric.hpp"

namespace gwco {

/// Parses "a+bi" / "a-bi", plain "a", pure-imaginary "bi" / "i" / "-i",
/// and "exp:theta" meaning e^{i theta} with theta in radians.
cplx parse_complex(const std::string& text);

/// Shortest decimal form that round-trips through parse (std::to_chars).
std::string format_double(double x);

/// "a", "bi", or "a+bi" / "a-bi"; inverse of parse_complex up to spelling.
std::string format_complex(cplx z);

} // namespace gwco
