#pragma once

#include <ostream>
#include <string>

#include "json.hpp"

namespace disclinate::cli {

using Json = nlohmann::ordered_json;

/// Fixed 17-significant-digit, locale-independent formatting; NaN prints as `nan`.
std::string format_number(double value);

/// Pretty-prints with two-space indent, numbers via format_number, non-finite as null.
void write_json(std::ostream& out, const Json& value);

}  // namespace disclinate::cli
