#include "pfc/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pfc/errors.hpp"

namespace pfc {
namespace {

using nlohmann::json;

std::string edge_key_string(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return std::to_string(a) + "-" + std::to_string(b);
}

EdgeKey parse_edge_key(const std::string& s) {
  const auto dash = s.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == s.size()) {
    throw IoError("malformed edge key '" + s + "' (expected \"i-j\")");
  }
  try {
    return EdgeKey(std::stoi(s.substr(0, dash)), std::stoi(s.substr(dash + 1)));
  } catch (const std::exception&) {
    throw IoError("malformed edge key '" + s + "' (expected \"i-j\")");
  }
}

}  // namespace

Mesh read_mesh(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw IoError(std::string("mesh JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("tets") || !j.contains("lengths")) {
    throw IoError("mesh JSON must contain \"vertices\", \"tets\" and \"lengths\"");
  }

  const int n_vertices = j.at("vertices").get<int>();
  std::vector<std::array<VertexId, 4>> tets;
  for (const auto& t : j.at("tets")) {
    if (!t.is_array() || t.size() != 4) throw IoError("each tet must be a 4-element array");
    tets.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>(), t[3].get<int>()});
  }

  std::optional<QuotientLabeling> labeling;
  if (j.contains("labeling") && !j.at("labeling").is_null()) {
    const auto& jl = j.at("labeling");
    QuotientLabeling lab;
    lab.vertex_keys = jl.at("vertex_keys").get<std::vector<std::int64_t>>();
    for (const auto& [key, value] : jl.at("edge_keys").items()) {
      lab.edge_keys.emplace(parse_edge_key(key).packed(), value.get<std::int64_t>());
    }
    lab.multiplicity = jl.value("multiplicity", 1.0);
    labeling = std::move(lab);
  }

  SimplicialComplex3 complex(n_vertices, std::move(tets), std::move(labeling));

  EdgeLengthMetric metric;
  metric.lengths.assign(complex.edges().size(), -1.0);
  for (const auto& [key, value] : j.at("lengths").items()) {
    const EdgeKey ek = parse_edge_key(key);
    const auto e = complex.find_edge(ek.a, ek.b);
    if (!e) throw IoError("length given for nonexistent edge " + key);
    metric.lengths[*e] = value.get<double>();
  }
  for (EdgeId e = 0; e < static_cast<EdgeId>(complex.edges().size()); ++e) {
    if (metric.lengths[e] < 0.0) {
      throw IoError("missing length for edge " +
                    edge_key_string(complex.edges()[e].a, complex.edges()[e].b));
    }
  }
  validate_metric(complex, metric);
  return Mesh{std::move(complex), std::move(metric)};
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file " + path);
  return read_mesh(in);
}

void write_mesh(std::ostream& out, const SimplicialComplex3& c, const EdgeLengthMetric& m) {
  json j;
  j["vertices"] = c.n_vertices();
  json tets = json::array();
  for (const auto& t : c.tets()) tets.push_back({t[0], t[1], t[2], t[3]});
  j["tets"] = std::move(tets);
  json lengths = json::object();
  for (EdgeId e = 0; e < static_cast<EdgeId>(c.edges().size()); ++e) {
    lengths[edge_key_string(c.edges()[e].a, c.edges()[e].b)] = m.length(e);
  }
  j["lengths"] = std::move(lengths);
  if (c.labeling()) {
    json jl;
    jl["vertex_keys"] = c.labeling()->vertex_keys;
    json ek = json::object();
    for (EdgeId e = 0; e < static_cast<EdgeId>(c.edges().size()); ++e) {
      const auto it = c.labeling()->edge_keys.find(c.edges()[e].packed());
      ek[edge_key_string(c.edges()[e].a, c.edges()[e].b)] = it->second;
    }
    jl["edge_keys"] = std::move(ek);
    jl["multiplicity"] = c.labeling()->multiplicity;
    j["labeling"] = std::move(jl);
  }
  out << j.dump(1) << "\n";
}

void write_mesh_file(const std::string& path, const SimplicialComplex3& c,
                     const EdgeLengthMetric& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file " + path);
  write_mesh(out, c, m);
  if (!out) throw IoError("failed writing mesh file " + path);
}

}  // namespace pfc
