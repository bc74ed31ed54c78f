#pragma once

#include <string>

#include "json.hpp"

#include "bhdpc/dpc.hpp"
#include "bhdpc/instance.hpp"
#include "bhdpc/verifier.hpp"

namespace bhdpc {

using nlohmann::json;

/// [a0, a1, ...]
json vertex_to_json(const Vertex& v);
Vertex vertex_from_json(const json& j);

/// {"n": int, "sources": [[...], ...], "sinks": [[...], ...]}
json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& j);

/// {"paths": [[[...], ...], ...], "pairing": [int, ...]}
json cover_to_json(const PathCover& cover);
PathCover cover_from_json(const json& j);

/// {"ok": bool, "violations": [{"kind": str, "detail": str}, ...]}
json report_to_json(const VerifyReport& report);

json trace_to_json(const SolveTrace& trace);

/// Vertex and edge lists of BH_n for 1 <= n <= 4.
json topology_json(int n);
/// Graphviz text; white and black vertices filled differently, edges
/// labelled with their dimension.
std::string topology_dot(int n);

/// Parse failures and structural mismatches throw InvalidInput.
json parse_json(const std::string& text);
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace bhdpc
