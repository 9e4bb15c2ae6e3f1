#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tmpk/decomposition.hpp"
#include "tmpk/errors.hpp"
#include "tmpk/excluded_path.hpp"
#include "tmpk/excluded_tree.hpp"
#include "tmpk/gadgets.hpp"
#include "tmpk/graph.hpp"
#include "tmpk/minors.hpp"
#include "tmpk/result_json.hpp"

namespace {

using tmpk::Json;

constexpr int kExitOk = 0;
constexpr int kExitCertificate = 10;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitValidation = 4;

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw tmpk::ParseError("cannot open output file: " + path);
    out << content;
  }
  fs::rename(tmp, target);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty())
    std::cout << content;
  else
    write_atomic(out_path, content);
}

void emit_document(const Json& doc, const std::string& format, const std::string& out_path) {
  if (format == "dot")
    emit(tmpk::to_dot(doc), out_path);
  else
    emit(tmpk::dump_document(doc), out_path);
}

tmpk::TreeDecomposition load_or_compute_decomposition(const tmpk::Graph& g,
                                                      const std::string& td_file, int max_n) {
  if (!td_file.empty()) {
    auto td = tmpk::read_td_file(td_file);
    auto bad = tmpk::tree_decomposition_violations(g, td);
    if (!bad.empty())
      throw tmpk::ParseError("supplied decomposition is invalid: " + bad.front());
    return td;
  }
  auto [w, pd] = tmpk::exact_pathwidth(g, max_n);
  return pd.as_tree();
}

int run_decompose_tree(const std::string& graph_file, const std::vector<int>& hd,
                       const std::string& tree_file, std::optional<int> root,
                       const std::string& td_file, int max_n, long long seed,
                       const std::string& format, const std::string& out_path) {
  tmpk::Graph g = tmpk::read_graph_file(graph_file);
  Json params{{"seed", seed}};
  if (root) params["root"] = *root;

  if (!tree_file.empty()) {
    tmpk::Graph t = tmpk::read_graph_file(tree_file);
    std::optional<tmpk::TreeDecomposition> d;
    if (!td_file.empty()) d = load_or_compute_decomposition(g, td_file, max_n);
    auto res = tmpk::decompose_excluded_tree_theorem(g, t, std::move(d), root, {}, max_n);
    params["d"] = res.params.d;
    params["h"] = res.params.h;
    params["t"] = res.params.t;
    params["part_bound"] = res.part_bound;
    if (res.outcome.is_partition()) {
      emit_document(tmpk::tree_partition_document(g, res.used_decomposition,
                                                  *res.outcome.partition, res.params.h,
                                                  res.params.d, params),
                    format, out_path);
      return kExitOk;
    }
    emit_document(tmpk::tree_model_document(g, *res.outcome.model, params), format, out_path);
    return kExitCertificate;
  }

  int h = hd[0], d = hd[1];
  if (h < 1 || d < 1) throw tmpk::ParseError("--hd needs h >= 1 and d >= 1");
  params["d"] = d;
  params["h"] = h;
  auto decomposition = load_or_compute_decomposition(g, td_file, max_n);

  if (d == 1) {
    // T_{h,1} is the path on h+1 vertices; the excluded-path engine with
    // 2*ph+1 >= h+1 covers it, and a long-path certificate still witnesses it
    int ph = (h + 1) / 2;
    params["path_h"] = ph;
    auto out = tmpk::decompose_excluded_path(g, decomposition, ph, max_n);
    if (out.is_partition()) {
      emit_document(tmpk::path_partition_document(g, decomposition, *out.partition, ph, params),
                    format, out_path);
      return kExitOk;
    }
    emit_document(tmpk::long_path_document(g, *out.long_path, ph, params), format, out_path);
    return kExitCertificate;
  }

  auto out = tmpk::decompose_excluded_tree_any(g, decomposition, root, h, d, {});
  if (out.is_partition()) {
    emit_document(tmpk::tree_partition_document(g, decomposition, *out.partition, h, d, params),
                  format, out_path);
    return kExitOk;
  }
  emit_document(tmpk::tree_model_document(g, *out.model, params), format, out_path);
  return kExitCertificate;
}

int run_decompose_path(const std::string& graph_file, int h, const std::string& td_file, int max_n,
                       long long seed, const std::string& format, const std::string& out_path) {
  tmpk::Graph g = tmpk::read_graph_file(graph_file);
  Json params{{"h", h}, {"seed", seed}};
  auto decomposition = load_or_compute_decomposition(g, td_file, max_n);
  auto out = tmpk::decompose_excluded_path(g, decomposition, h, max_n);
  if (out.is_partition()) {
    emit_document(tmpk::path_partition_document(g, decomposition, *out.partition, h, params),
                  format, out_path);
    return kExitOk;
  }
  emit_document(tmpk::long_path_document(g, *out.long_path, h, params), format, out_path);
  return kExitCertificate;
}

int run_gadget(int h, int c, bool preview, bool do_verify, const std::string& out_path,
               const std::string& report_path) {
  if (preview) {
    std::cout << tmpk::lower_bound_graph_size(h, c) << "\n";
    return kExitOk;
  }
  auto gadget = tmpk::lower_bound_graph(h, c);
  std::ostringstream text;
  tmpk::write_graph(text, gadget.graph);
  emit(text.str(), out_path);
  if (do_verify) {
    auto report = tmpk::verify_gadget_claims(gadget.graph, h, c, {});
    Json params{{"c", c}, {"h", h}};
    auto doc = tmpk::gadget_report_document(gadget.graph, report, params);
    if (report_path.empty())
      std::cout << tmpk::dump_document(doc);
    else
      write_atomic(report_path, tmpk::dump_document(doc));
    if (!report.all_ok_or_skipped()) return kExitValidation;
  }
  return kExitOk;
}

int run_verify(const std::string& graph_file, const std::string& result_file) {
  tmpk::Graph g = tmpk::read_graph_file(graph_file);
  std::ifstream in(result_file);
  if (!in) throw tmpk::ParseError("cannot open result file: " + result_file);
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw tmpk::ParseError(std::string("result file is not valid JSON: ") + e.what());
  }
  auto violations = tmpk::verify_document(g, doc);
  if (violations.empty()) {
    std::cout << "ok\n";
    return kExitOk;
  }
  for (const auto& v : violations) std::cerr << "violation: " << v << "\n";
  return kExitValidation;
}

int run_exact(const std::string& graph_file, const std::string& measure, int max_n,
              const std::string& out_path) {
  tmpk::Graph g = tmpk::read_graph_file(graph_file);
  Json doc{{"input", tmpk::input_fingerprint(g)}, {"measure", measure}};
  if (measure == "pathwidth") {
    auto [w, pd] = tmpk::exact_pathwidth(g, max_n);
    doc["value"] = w;
    doc["witness"] = tmpk::decomposition_to_json(pd.as_tree());
  } else if (measure == "treewidth") {
    auto [w, td] = tmpk::exact_treewidth(g, std::min(max_n, tmpk::kDefaultTreewidthCap));
    doc["value"] = w;
    doc["witness"] = tmpk::decomposition_to_json(td);
  } else if (measure == "treedepth") {
    auto [depth, f] = tmpk::exact_treedepth(g, std::min(max_n, tmpk::kDefaultTreedepthCap));
    doc["value"] = depth;
    doc["witness"] = Json{{"forest_parent", f.parent}};
  } else {
    auto path = tmpk::longest_path(g, std::min(max_n, tmpk::kDefaultLongestPathCap));
    doc["value"] = static_cast<int>(path.size());
    doc["witness"] = Json{{"path", path}};
  }
  emit(tmpk::dump_document(doc), out_path);
  return kExitOk;
}

int run_product(const std::string& graph_file, int c, const std::string& out_path,
                const std::string& result_file, const std::string& result_graph_file) {
  tmpk::Graph h_graph = tmpk::read_graph_file(graph_file);
  if (c < 1) throw tmpk::ParseError("--c must be at least 1");

  if (result_file.empty()) {
    auto product = tmpk::strong_product(h_graph, tmpk::complete_graph(c));
    std::ostringstream text;
    tmpk::write_graph(text, product);
    emit(text.str(), out_path);
    return kExitOk;
  }

  // check that a partition document realizes the product containment: the
  // placement v -> (part(v), rank within part) must be injective and
  // adjacency-preserving into quotient x K_width, and the width readback
  // must stay within the requested c
  if (result_graph_file.empty())
    throw tmpk::ParseError("--result needs --graph-file with the decomposed graph");
  tmpk::Graph g = tmpk::read_graph_file(result_graph_file);
  std::ifstream in(result_file);
  if (!in) throw tmpk::ParseError("cannot open result file: " + result_file);
  Json doc;
  try {
    in >> doc;
  } catch (const Json::exception& e) {
    throw tmpk::ParseError(std::string("result file is not valid JSON: ") + e.what());
  }
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind != "tree-partition" && kind != "path-partition")
    throw tmpk::ParseError("product check needs a partition result document");
  auto bad = tmpk::verify_document(g, doc);
  if (!bad.empty()) {
    for (const auto& v : bad) std::cerr << "violation: " << v << "\n";
    return kExitValidation;
  }
  std::vector<std::vector<int>> parts;
  for (const auto& part : doc.at("payload").at("parts")) {
    parts.push_back({});
    for (const auto& v : part) parts.back().push_back(v.get<int>());
  }
  auto partition = tmpk::Partition::from_parts(g.n(), parts);
  int width = partition.width();
  tmpk::Graph quotient_graph = tmpk::quotient(g, partition);
  tmpk::Graph product = tmpk::strong_product(quotient_graph, tmpk::complete_graph(width));
  std::vector<int> rank(g.n(), -1);
  for (const auto& part : parts)
    for (size_t i = 0; i < part.size(); ++i) rank[part[i]] = static_cast<int>(i);
  auto place = [&](int v) { return tmpk::product_vertex(partition.part_of(v), rank[v], width); };
  std::vector<char> taken(product.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    int image = place(v);
    if (taken[image]) {
      std::cerr << "violation: placement is not injective\n";
      return kExitValidation;
    }
    taken[image] = 1;
  }
  for (auto [u, v] : g.edges())
    if (!product.has_edge(place(u), place(v))) {
      std::cerr << "violation: edge (" << u << "," << v << ") is not preserved in the product\n";
      return kExitValidation;
    }
  if (width > c) {
    std::cerr << "violation: partition width " << width << " exceeds the requested " << c << "\n";
    return kExitValidation;
  }
  std::cout << "ok width " << width << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certifying tree-minor decompositions"};
  app.set_help_flag("--help", "print help");  // frees -h / --h for the radius option
  app.require_subcommand(1);

  std::string graph_file, tree_file, td_file, out_path, report_path, format = "json";
  std::string result_file, result_graph_file, measure = "pathwidth";
  std::vector<int> hd;
  int opt_h = 1, opt_c = 1, max_n = tmpk::kDefaultPathwidthCap;
  long long seed = 0;
  std::optional<int> root;
  bool preview = false, do_verify = false;
  int root_value = -1;

  auto* tree_cmd = app.add_subcommand("decompose-tree", "partition or tree-minor certificate");
  tree_cmd->set_help_flag("--help", "print help");
  tree_cmd->add_option("graph", graph_file, "graph file")->required();
  auto* hd_opt = tree_cmd->add_option("--hd", hd, "pattern parameters h d")->expected(2);
  auto* tf_opt = tree_cmd->add_option("--tree-file", tree_file, "excluded tree as a graph file");
  tf_opt->excludes(hd_opt);
  tree_cmd->add_option("--root", root_value, "root vertex r");
  tree_cmd->add_option("--td-file", td_file, "host tree-decomposition (.td)");
  tree_cmd->add_option("--max-n", max_n, "exact pathwidth cap");
  tree_cmd->add_option("--seed", seed, "seed recorded in the document");
  tree_cmd->add_option("--format", format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
  tree_cmd->add_option("--out", out_path, "output file (atomic)");

  auto* path_cmd = app.add_subcommand("decompose-path", "partition or long-path certificate");
  path_cmd->set_help_flag("--help", "print help");
  path_cmd->add_option("graph", graph_file, "graph file")->required();
  path_cmd->add_option("--h", opt_h, "excluded path parameter h")->required();
  path_cmd->add_option("--td-file", td_file, "host tree-decomposition (.td)");
  path_cmd->add_option("--max-n", max_n, "exact solver cap");
  path_cmd->add_option("--seed", seed, "seed recorded in the document");
  path_cmd->add_option("--format", format, "json|dot")->check(CLI::IsMember({"json", "dot"}));
  path_cmd->add_option("--out", out_path, "output file (atomic)");

  auto* gadget_cmd = app.add_subcommand("gadget", "lower-bound construction");
  gadget_cmd->set_help_flag("--help", "print help");
  gadget_cmd->add_option("--h", opt_h, "radius parameter")->required();
  gadget_cmd->add_option("--c", opt_c, "width parameter")->required();
  gadget_cmd->add_flag("--preview", preview, "print the vertex count only");
  gadget_cmd->add_flag("--verify", do_verify, "run the claim checks");
  gadget_cmd->add_option("--out", out_path, "graph output file");
  gadget_cmd->add_option("--report", report_path, "claim report output file");

  auto* verify_cmd = app.add_subcommand("verify", "re-validate a result document");
  verify_cmd->set_help_flag("--help", "print help");
  verify_cmd->add_option("graph", graph_file, "graph file")->required();
  verify_cmd->add_option("result", result_file, "result document (json)")->required();

  auto* exact_cmd = app.add_subcommand("exact", "exact width solvers");
  exact_cmd->set_help_flag("--help", "print help");
  exact_cmd->add_option("graph", graph_file, "graph file")->required();
  exact_cmd->add_option("--measure", measure, "pathwidth|treewidth|treedepth|longest-path")
      ->check(CLI::IsMember({"pathwidth", "treewidth", "treedepth", "longest-path"}));
  exact_cmd->add_option("--max-n", max_n, "solver cap");
  exact_cmd->add_option("--out", out_path, "output file");

  auto* product_cmd = app.add_subcommand("product", "strong product with K_c, or embedding check");
  product_cmd->set_help_flag("--help", "print help");
  product_cmd->add_option("graph", graph_file, "graph H")->required();
  product_cmd->add_option("--c", opt_c, "clique factor size")->required();
  product_cmd->add_option("--out", out_path, "output file");
  product_cmd->add_option("--result", result_file, "partition document to check");
  product_cmd->add_option("--graph-file", result_graph_file, "graph the document describes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  if (tree_cmd->count("--root")) root = root_value;

  try {
    if (*tree_cmd) {
      if (hd.empty() && tree_file.empty())
        throw tmpk::ParseError("decompose-tree needs --hd or --tree-file");
      return run_decompose_tree(graph_file, hd, tree_file, root, td_file, max_n, seed, format,
                                out_path);
    }
    if (*path_cmd)
      return run_decompose_path(graph_file, opt_h, td_file, max_n, seed, format, out_path);
    if (*gadget_cmd) return run_gadget(opt_h, opt_c, preview, do_verify, out_path, report_path);
    if (*verify_cmd) return run_verify(graph_file, result_file);
    if (*exact_cmd) return run_exact(graph_file, measure, max_n, out_path);
    if (*product_cmd)
      return run_product(graph_file, opt_c, out_path, result_file, result_graph_file);
  } catch (const tmpk::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const tmpk::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const tmpk::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const tmpk::InternalError& e) {
    std::cerr << "internal validation failure: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
