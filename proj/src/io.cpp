#include "bhdpc/io.hpp"

#include <fstream>
#include <sstream>

#include "bhdpc/errors.hpp"
#include "bhdpc/topology.hpp"

namespace bhdpc {
namespace {

constexpr int kExportCap = 4;

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<Vertex> vertices_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<Vertex> out;
  for (const json& v : j) out.push_back(vertex_from_json(v));
  return out;
}

json vertices_to_json(const std::vector<Vertex>& vs) {
  json out = json::array();
  for (const Vertex& v : vs) out.push_back(vertex_to_json(v));
  return out;
}

void check_export_cap(int n) {
  if (n < 1 || n > kExportCap) {
    throw InvalidInput("topology export supports 1 <= n <= " + std::to_string(kExportCap));
  }
}

}  // namespace

json vertex_to_json(const Vertex& v) { return json(v.coords()); }

Vertex vertex_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("vertex must be a non-empty array of digits");
  std::vector<int> coords;
  for (const json& d : j) {
    if (!d.is_number_integer()) throw InvalidInput("vertex digits must be integers: " + j.dump());
    coords.push_back(d.get<int>());
  }
  return Vertex::from_coords(coords);
}

json instance_to_json(const Instance& instance) {
  return json{{"n", instance.n},
              {"sources", vertices_to_json(instance.sources)},
              {"sinks", vertices_to_json(instance.sinks)}};
}

Instance instance_from_json(const json& j) {
  const json& n = field(j, "n");
  if (!n.is_number_integer()) throw InvalidInput("\"n\" must be an integer");
  Instance instance;
  instance.n = n.get<int>();
  instance.sources = vertices_from_json(field(j, "sources"), "sources");
  instance.sinks = vertices_from_json(field(j, "sinks"), "sinks");
  return instance;
}

json cover_to_json(const PathCover& cover) {
  json paths = json::array();
  for (const Path& p : cover.paths) paths.push_back(vertices_to_json(p));
  return json{{"paths", paths}, {"pairing", cover.pairing}};
}

PathCover cover_from_json(const json& j) {
  const json& paths = field(j, "paths");
  const json& pairing = field(j, "pairing");
  if (!paths.is_array() || !pairing.is_array()) throw InvalidInput("\"paths\" and \"pairing\" must be arrays");
  PathCover cover;
  for (const json& p : paths) cover.paths.push_back(vertices_from_json(p, "path"));
  for (const json& i : pairing) {
    if (!i.is_number_integer()) throw InvalidInput("pairing entries must be integers");
    cover.pairing.push_back(i.get<int>());
  }
  return cover;
}

json report_to_json(const VerifyReport& report) {
  json violations = json::array();
  for (const Violation& v : report.violations) {
    violations.push_back(json{{"kind", std::string(to_string(v.kind))}, {"detail", v.detail}});
  }
  return json{{"ok", report.ok()}, {"violations", violations}};
}

json trace_to_json(const SolveTrace& trace) {
  return json{{"case", to_string(trace.top_case)},
              {"split_dim", trace.split_dim},
              {"anchor", trace.anchor},
              {"empty_positions", trace.empty_positions},
              {"spliced_positions", trace.spliced_positions},
              {"circulation", trace.circulation},
              {"levels", trace.levels},
              {"relaxations", trace.relaxations},
              {"relax_retries", trace.relax_retries},
              {"splices", trace.splices},
              {"plan_fallbacks", trace.plan_fallbacks}};
}

json topology_json(int n) {
  check_export_cap(n);
  BalancedHypercube cube(n);
  json vertices = json::array();
  json edges = json::array();
  for (const Vertex& u : cube.vertices()) {
    vertices.push_back(vertex_to_json(u));
    for (const Vertex& v : cube.neighbors(u)) {
      if (v < u) continue;
      edges.push_back(json{{"u", vertex_to_json(u)}, {"v", vertex_to_json(v)}, {"dim", edge_dimension(cube, u, v)}});
    }
  }
  return json{{"n", n}, {"vertices", vertices}, {"edges", edges}};
}

std::string topology_dot(int n) {
  check_export_cap(n);
  BalancedHypercube cube(n);
  std::ostringstream out;
  out << "graph BH" << n << " {\n";
  out << "  node [shape=circle, style=filled, fontsize=10];\n";
  for (const Vertex& v : cube.vertices()) {
    out << "  \"" << v.to_string() << "\" [fillcolor="
        << (v.color() == Color::kWhite ? "white" : "gray25, fontcolor=white") << "];\n";
  }
  for (const Vertex& u : cube.vertices()) {
    for (const Vertex& v : cube.neighbors(u)) {
      if (v < u) continue;
      out << "  \"" << u.to_string() << "\" -- \"" << v.to_string() << "\" [label=\""
          << edge_dimension(cube, u, v) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed: " + path);
}

}  // namespace bhdpc
