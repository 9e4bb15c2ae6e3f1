#include "tmpk/result_json.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>

#include "tmpk/errors.hpp"

namespace tmpk {

namespace {

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << hash;
  return out.str();
}

// remaps a partition-shaped payload so parts appear by smallest vertex
struct CanonicalParts {
  std::vector<std::vector<int>> parts;
  std::vector<int> old_to_new;
};

CanonicalParts canonicalize_parts(const std::vector<std::vector<int>>& parts) {
  CanonicalParts out;
  std::vector<int> order(parts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return parts[a].front() < parts[b].front();
  });
  out.old_to_new.assign(parts.size(), -1);
  for (size_t i = 0; i < order.size(); ++i) {
    out.old_to_new[order[i]] = static_cast<int>(i);
    out.parts.push_back(parts[order[i]]);
  }
  return out;
}

Json edges_to_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (auto [u, v] : edges) out.push_back(Json::array({u, v}));
  return out;
}

std::string verdict_of(const std::vector<std::string>& violations) {
  return violations.empty() ? "ok" : violations.front();
}

std::vector<int> int_vector(const Json& j) {
  std::vector<int> out;
  for (const auto& x : j) out.push_back(x.get<int>());
  return out;
}

std::vector<std::vector<int>> int_matrix(const Json& j) {
  std::vector<std::vector<int>> out;
  for (const auto& row : j) out.push_back(int_vector(row));
  return out;
}

Graph graph_from_parts(const Json& n_json, const Json& edges_json) {
  std::vector<Edge> edges;
  for (const auto& e : edges_json) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  return Graph::from_edges(n_json.get<int>(), std::move(edges));
}

}  // namespace

std::string graph_content_hash(const Graph& g) {
  std::ostringstream text;
  write_graph(text, g);
  return fnv1a_hex(text.str());
}

Json input_fingerprint(const Graph& g) {
  return Json{{"hash", graph_content_hash(g)}, {"m", g.m()}, {"n", g.n()}};
}

Json decomposition_to_json(const TreeDecomposition& td) {
  Json bags = Json::array();
  for (const auto& bag : td.bags) bags.push_back(bag);
  return Json{{"bags", bags}, {"edges", edges_to_json(td.index_tree.edges())}};
}

TreeDecomposition decomposition_from_json(const Json& j) {
  TreeDecomposition td;
  td.bags = int_matrix(j.at("bags"));
  for (auto& bag : td.bags) std::sort(bag.begin(), bag.end());
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  td.index_tree = Graph::from_edges(static_cast<int>(td.bags.size()), std::move(edges));
  return td;
}

Json tree_partition_document(const Graph& g, const TreeDecomposition& d,
                             const TreePartitionResult& res, int h, int dd, Json parameters) {
  auto canon = canonicalize_parts(res.partition.parts());
  Json parts = Json::array();
  for (const auto& part : canon.parts) parts.push_back(part);
  Json provenance = Json::array();
  for (size_t i = 0; i < canon.parts.size(); ++i) provenance.push_back(Json::array());
  for (size_t i = 0; i < res.part_provenance.size(); ++i)
    provenance[canon.old_to_new[i]] = res.part_provenance[i];

  std::vector<Edge> qedges;
  for (auto [a, b] : res.quotient_graph.edges()) {
    int na = canon.old_to_new[a], nb = canon.old_to_new[b];
    qedges.emplace_back(std::min(na, nb), std::max(na, nb));
  }
  std::sort(qedges.begin(), qedges.end());

  Json bags = Json::array();
  for (const auto& bag : res.quotient_decomposition.bags) {
    std::vector<int> nb;
    for (int id : bag) nb.push_back(canon.old_to_new[id]);
    std::sort(nb.begin(), nb.end());
    bags.push_back(nb);
  }

  Json payload{{"host_decomposition", decomposition_to_json(d)},
               {"parts", parts},
               {"part_provenance", provenance},
               {"quotient_bags", bags},
               {"quotient_edges", edges_to_json(qedges)},
               {"root_part", canon.old_to_new[res.root_part]}};

  Json verdicts{{"tree_partition", verdict_of(tree_partition_violations(g, d, res, h, dd))}};
  return Json{{"input", input_fingerprint(g)},
              {"kind", "tree-partition"},
              {"parameters", std::move(parameters)},
              {"payload", std::move(payload)},
              {"verdicts", std::move(verdicts)}};
}

Json tree_model_document(const Graph& g, const MinorModel& model, Json parameters) {
  Json branch = Json::array();
  for (const auto& set : model.branch_sets) branch.push_back(set);
  Json pattern{{"edges", edges_to_json(model.pattern.tree.edges())},
               {"n", model.pattern.vertex_count()},
               {"root", model.pattern.root}};
  Json payload{{"branch_sets", branch}, {"pattern", pattern}};
  Json verdicts{{"model", verdict_of(model_violations(g, model))}};
  return Json{{"input", input_fingerprint(g)},
              {"kind", "tree-model"},
              {"parameters", std::move(parameters)},
              {"payload", std::move(payload)},
              {"verdicts", std::move(verdicts)}};
}

Json path_partition_document(const Graph& g, const TreeDecomposition& d,
                             const PathPartitionResult& res, int h, Json parameters) {
  auto canon = canonicalize_parts(res.partition.parts());
  Json parts = Json::array();
  for (const auto& part : canon.parts) parts.push_back(part);
  Json provenance = Json::array();
  for (size_t i = 0; i < canon.parts.size(); ++i) provenance.push_back(Json::array());
  for (size_t i = 0; i < res.part_provenance.size(); ++i)
    provenance[canon.old_to_new[i]] = res.part_provenance[i];

  std::vector<Edge> qedges;
  for (auto [a, b] : res.quotient_graph.edges()) {
    int na = canon.old_to_new[a], nb = canon.old_to_new[b];
    qedges.emplace_back(std::min(na, nb), std::max(na, nb));
  }
  std::sort(qedges.begin(), qedges.end());

  std::vector<int> forest(canon.parts.size(), -1);
  for (size_t i = 0; i < res.quotient_forest.parent.size(); ++i) {
    int p = res.quotient_forest.parent[i];
    forest[canon.old_to_new[i]] = p < 0 ? -1 : canon.old_to_new[p];
  }

  Json payload{{"forest_parent", forest},
               {"host_decomposition", decomposition_to_json(d)},
               {"part_provenance", provenance},
               {"parts", parts},
               {"quotient_edges", edges_to_json(qedges)}};
  Json verdicts{{"path_partition", verdict_of(path_partition_violations(g, d, res, h))}};
  return Json{{"input", input_fingerprint(g)},
              {"kind", "path-partition"},
              {"parameters", std::move(parameters)},
              {"payload", std::move(payload)},
              {"verdicts", std::move(verdicts)}};
}

Json long_path_document(const Graph& g, const std::vector<int>& path, int h, Json parameters) {
  Json payload{{"path", path}};
  Json verdicts{{"long_path", verdict_of(long_path_violations(g, path, h))}};
  return Json{{"input", input_fingerprint(g)},
              {"kind", "long-path"},
              {"parameters", std::move(parameters)},
              {"payload", std::move(payload)},
              {"verdicts", std::move(verdicts)}};
}

Json gadget_report_document(const Graph& g, const GadgetReport& report, Json parameters) {
  Json checks = Json::array();
  for (const auto& check : report.checks)
    checks.push_back(
        Json{{"detail", check.detail}, {"name", check.name}, {"status", check.status}});
  Json payload{{"base_path_vertex_count", report.base_path_vertex_count},
               {"c", report.c},
               {"checks", checks},
               {"h", report.h},
               {"spine_edge_count", report.spine_edge_count}};
  Json verdicts{{"gadget_report", report.all_ok_or_skipped() ? "ok" : "failed"}};
  return Json{{"input", input_fingerprint(g)},
              {"kind", "gadget-report"},
              {"parameters", std::move(parameters)},
              {"payload", std::move(payload)},
              {"verdicts", std::move(verdicts)}};
}

std::vector<std::string> verify_document(const Graph& g, const Json& doc) {
  std::vector<std::string> out;
  try {
    const auto& input = doc.at("input");
    if (input.at("n").get<int>() != g.n() || input.at("m").get<int>() != g.m())
      out.push_back("fingerprint size mismatch");
    else if (input.at("hash").get<std::string>() != graph_content_hash(g))
      out.push_back("fingerprint hash mismatch");

    const std::string kind = doc.at("kind").get<std::string>();
    const auto& payload = doc.at("payload");
    const auto& params = doc.at("parameters");

    if (kind == "tree-partition") {
      TreePartitionResult res;
      res.partition = Partition::from_parts(g.n(), int_matrix(payload.at("parts")));
      res.quotient_graph = quotient(g, res.partition);
      res.quotient_decomposition.bags = int_matrix(payload.at("quotient_bags"));
      res.part_provenance = int_matrix(payload.at("part_provenance"));
      res.root_part = payload.at("root_part").get<int>();
      if (res.root_part >= 0 && res.root_part < res.partition.size() &&
          !res.partition.part(res.root_part).empty())
        res.root_vertex = res.partition.part(res.root_part).front();
      auto claimed = graph_from_parts(Json(res.partition.size()), payload.at("quotient_edges"));
      if (claimed.edges() != res.quotient_graph.edges())
        out.push_back("quotient_edges differ from the quotient of the parts");
      TreeDecomposition d = decomposition_from_json(payload.at("host_decomposition"));
      auto dv = tree_decomposition_violations(g, d);
      for (auto& v : dv) out.push_back("host decomposition: " + v);
      int h = params.at("h").get<int>();
      int dd = params.at("d").get<int>();
      auto rv = tree_partition_violations(g, d, res, h, dd);
      out.insert(out.end(), rv.begin(), rv.end());
    } else if (kind == "tree-model") {
      MinorModel model;
      const auto& pat = payload.at("pattern");
      Graph pattern_tree = graph_from_parts(pat.at("n"), pat.at("edges"));
      model.pattern = root_tree_at(pattern_tree, pat.at("root").get<int>());
      model.branch_sets = int_matrix(payload.at("branch_sets"));
      for (auto& set : model.branch_sets) std::sort(set.begin(), set.end());
      auto mv = model_violations(g, model);
      out.insert(out.end(), mv.begin(), mv.end());
    } else if (kind == "path-partition") {
      PathPartitionResult res;
      res.partition = Partition::from_parts(g.n(), int_matrix(payload.at("parts")));
      res.quotient_graph = quotient(g, res.partition);
      res.quotient_forest.parent = int_vector(payload.at("forest_parent"));
      res.part_provenance = int_matrix(payload.at("part_provenance"));
      auto claimed = graph_from_parts(Json(res.partition.size()), payload.at("quotient_edges"));
      if (claimed.edges() != res.quotient_graph.edges())
        out.push_back("quotient_edges differ from the quotient of the parts");
      TreeDecomposition d = decomposition_from_json(payload.at("host_decomposition"));
      auto dv = tree_decomposition_violations(g, d);
      for (auto& v : dv) out.push_back("host decomposition: " + v);
      int h = params.at("h").get<int>();
      auto rv = path_partition_violations(g, d, res, h);
      out.insert(out.end(), rv.begin(), rv.end());
    } else if (kind == "long-path") {
      int h = params.at("h").get<int>();
      auto rv = long_path_violations(g, int_vector(payload.at("path")), h);
      out.insert(out.end(), rv.begin(), rv.end());
    } else if (kind == "gadget-report") {
      // informational beyond the fingerprint
    } else {
      out.push_back("unknown result kind: " + kind);
    }
  } catch (const Json::exception& e) {
    out.push_back(std::string("malformed document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    out.push_back(std::string("malformed payload: ") + e.what());
  }
  return out;
}

std::string to_dot(const Json& doc) {
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind != "tree-partition" && kind != "path-partition")
    throw std::invalid_argument("dot export is only available for partition results");
  const auto& payload = doc.at("payload");
  auto parts = int_matrix(payload.at("parts"));
  std::ostringstream out;
  out << "graph quotient {\n";
  for (size_t i = 0; i < parts.size(); ++i) {
    out << "  p" << i << " [label=\"" << i << ": {";
    for (size_t j = 0; j < parts[i].size(); ++j) {
      if (j) out << ",";
      out << parts[i][j];
    }
    out << "}\"];\n";
  }
  for (const auto& e : payload.at("quotient_edges"))
    out << "  p" << e[0].get<int>() << " -- p" << e[1].get<int>() << ";\n";
  out << "}\n";
  return out.str();
}

std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace tmpk
