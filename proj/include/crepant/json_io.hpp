#pragma once

#include <json.hpp>

#include <string>

#include "crepant/exact.hpp"
#include "crepant/fan.hpp"

namespace crepant {

using Json = nlohmann::ordered_json;

// Integers below 2^53 serialize as JSON numbers, larger ones as strings;
// rationals are always "p/q" (or "p") strings. Parsers accept both forms.
Json int_to_json(const Int& x);
Int int_from_json(const Json& j);
Rat rat_from_string(const std::string& s);

Json fan_to_json(const Fan& f);
Fan fan_from_json(const Json& j);

// Canonical on-disk form: one line per top-level key, rays and cones inline.
std::string fan_file_text(const Fan& f);

// Throws ParseError on unreadable files, malformed JSON, or structural
// problems (bad arity, out-of-range indices).
Fan load_fan(const std::string& path);
void save_fan(const Fan& f, const std::string& path);

}  // namespace crepant
