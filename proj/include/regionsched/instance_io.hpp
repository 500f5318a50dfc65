#pragma once

#include "regionsched/core.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace rsched {

// Instance wire format, the contract for every CLI subcommand:
//   {"epsilon": "<p/q or int>",
//    "jobs": [{"id": int, "r": str, "p": str, "d": str, "w": str?}, ...]}
// Rationals are "num/den" or integer strings; integer JSON numbers are
// accepted on input. Serialization is canonical: weights of 1 are omitted
// and rationals are reduced, so parse -> serialize -> parse is the identity.
Instance parse_instance(std::string_view json_text);
Instance parse_instance_stream(std::istream& in);
Instance load_instance_file(const std::string& path);

std::string serialize_instance(const Instance& instance);

}  // namespace rsched
