#pragma once

// JSON report emission. Reports are machine-diffed, so everything is
// serialized with a fixed key order and deterministic content; elapsed_ms
// is the only volatile field and can be zeroed for byte comparison.

#include <string>

#include "json.hpp"
#include "trex/verify.hpp"

namespace trex {

using Json = nlohmann::ordered_json;

Json to_json(const Model& m);
Json to_json(const Witness& w);
Json to_json(const CheckEntry& e);
Json to_json(const Registry& r);

Model model_from_json(const Json& j);

// schema_version tags the layout documented in the README
Json make_report(const std::string& suite, const Bounds& bounds,
                 const std::vector<CheckEntry>& entries);
Json make_report(const std::string& suite, const Bounds& bounds,
                 const std::vector<CheckEntry>& entries, const Registry& registry);

// zeroes every elapsed_ms field, for byte-identical comparison across runs
void strip_elapsed(Json& j);

void write_report(const Json& report, const std::string& path);

}  // namespace trex
