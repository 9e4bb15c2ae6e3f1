#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "tmpk/excluded_path.hpp"
#include "tmpk/excluded_tree.hpp"
#include "tmpk/gadgets.hpp"
#include "tmpk/graph.hpp"

namespace tmpk {

using Json = nlohmann::json;

// FNV-1a over the canonical graph text.
std::string graph_content_hash(const Graph& g);
Json input_fingerprint(const Graph& g);

Json decomposition_to_json(const TreeDecomposition& td);
TreeDecomposition decomposition_from_json(const Json& j);

// Result documents carry the payload in canonical form (parts ordered by
// smallest vertex, ascending arrays, sorted keys) plus validator verdicts,
// so identical inputs serialize byte-identically.
Json tree_partition_document(const Graph& g, const TreeDecomposition& d,
                             const TreePartitionResult& res, int h, int dd, Json parameters);
Json tree_model_document(const Graph& g, const MinorModel& model, Json parameters);
Json path_partition_document(const Graph& g, const TreeDecomposition& d,
                             const PathPartitionResult& res, int h, Json parameters);
Json long_path_document(const Graph& g, const std::vector<int>& path, int h, Json parameters);
Json gadget_report_document(const Graph& g, const GadgetReport& report, Json parameters);

// Full re-validation of a result document against its graph; empty result
// means the document checks out.
std::vector<std::string> verify_document(const Graph& g, const Json& doc);

// Quotient rendering for partition documents.
std::string to_dot(const Json& doc);

std::string dump_document(const Json& doc);

}  // namespace tmpk
