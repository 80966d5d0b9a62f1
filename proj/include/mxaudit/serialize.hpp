#pragma once

#include "mxaudit/model.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace mxaudit
{

using Json = nlohmann::ordered_json;

/// \brief JSON object for one profile; keys appear in declaration order.
Json to_json(const DomainProfile& profile);

/// \brief Inverse of to_json. Throws std::invalid_argument on schema violations.
DomainProfile profile_from_json(const Json& j);

/// \brief One JSONL line (no trailing newline).
std::string to_jsonl_line(const DomainProfile& profile);

DomainProfile parse_jsonl_line(std::string_view line);

/// \brief Emit a double as an integer token when it has no fractional part.
Json number_json(double v);

} // namespace mxaudit
