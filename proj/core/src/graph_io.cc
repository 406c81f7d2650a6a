// Copyright 2026 The collcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>
#include <utility>
#include <vector>

#include "collcert/errors.h"
#include "collcert/graph.h"
#include "internal/json_util.h"

namespace collcert {

using internal::GetField;
using internal::Json;

namespace {

std::vector<NodePair> ParsePairs(const Json& doc, const char* key,
                                 const std::string& origin) {
  const auto raw =
      GetField<std::vector<std::vector<int>>>(doc, key, origin);
  std::vector<NodePair> pairs;
  pairs.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != 2) {
      throw InputError(origin + ": " + key + "[" + std::to_string(i) +
                       "] must have two entries");
    }
    pairs.emplace_back(raw[i][0], raw[i][1]);
  }
  return pairs;
}

Json PairsToJson(const std::vector<NodePair>& pairs) {
  Json out = Json::array();
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

}  // namespace

Graph ParseGraphJson(const std::string& text, const std::string& origin) {
  const Json doc = internal::ParseJsonText(text, origin);
  if (!doc.is_object()) throw InputError(origin + ": expected a JSON object");
  const int n = GetField<int>(doc, "num_nodes", origin);
  const int d = GetField<int>(doc, "num_features", origin);
  const bool directed = GetField<bool>(doc, "directed", origin);
  std::vector<NodePair> edges = ParsePairs(doc, "edges", origin);
  std::vector<NodePair> attributes = ParsePairs(doc, "attributes", origin);
  std::optional<std::vector<int>> labels;
  if (doc.contains("labels") && !doc["labels"].is_null()) {
    labels = GetField<std::vector<int>>(doc, "labels", origin);
  }
  try {
    return Graph::Create(n, d, directed, std::move(edges),
                         std::move(attributes), std::move(labels));
  } catch (const InputError& e) {
    throw InputError(origin + ": " + e.what());
  }
}

Graph LoadGraph(const std::filesystem::path& path) {
  return ParseGraphJson(internal::ReadTextFile(path), path.string());
}

std::string GraphToJson(const Graph& graph) {
  Json doc;
  doc["num_nodes"] = graph.num_nodes();
  doc["num_features"] = graph.num_features();
  doc["directed"] = graph.directed();
  doc["edges"] = PairsToJson(graph.edges());
  doc["attributes"] = PairsToJson(graph.AttributeList());
  if (graph.labels()) doc["labels"] = *graph.labels();
  return doc.dump() + "\n";
}

void SaveGraph(const Graph& graph, const std::filesystem::path& path) {
  internal::WriteTextFile(path, GraphToJson(graph));
}

ThreatModel ParseThreatModelJson(const std::string& text,
                                 const std::string& origin) {
  const Json doc = internal::ParseJsonText(text, origin);
  if (!doc.is_object()) throw InputError(origin + ": expected a JSON object");
  ThreatModel tm;
  const Json global = doc.contains("global") ? doc["global"] : Json::object();
  if (!global.is_object()) {
    throw InputError(origin + ": field \"global\" must be an object");
  }
  for (PerturbationType type : kAllPerturbationTypes) {
    const std::string name(ToString(type));
    tm.global[type] =
        internal::GetFieldOr<int>(global, name.c_str(), 0, origin + ": global");
    const std::string local_key = "local_" + name;
    if (doc.contains(local_key) && !doc[local_key].is_null()) {
      tm.Local(type) =
          GetField<std::vector<int>>(doc, local_key.c_str(), origin);
    }
  }
  if (doc.contains("sigma") && !doc["sigma"].is_null()) {
    tm.sigma = GetField<int>(doc, "sigma", origin);
  }
  if (doc.contains("directed") && !doc["directed"].is_null()) {
    tm.directed = GetField<bool>(doc, "directed", origin);
  }
  if (!tm.global.IsNonNegative()) {
    throw InputError(origin + ": global budgets must be non-negative");
  }
  return tm;
}

ThreatModel LoadThreatModel(const std::filesystem::path& path) {
  return ParseThreatModelJson(internal::ReadTextFile(path), path.string());
}

std::string ThreatModelToJson(const ThreatModel& tm) {
  Json doc;
  Json global = Json::object();
  for (PerturbationType type : kAllPerturbationTypes) {
    const std::string name(ToString(type));
    global[name] = tm.global[type];
    const auto& local = tm.Local(type);
    doc["local_" + name] = local ? Json(*local) : Json(nullptr);
  }
  doc["global"] = global;
  doc["sigma"] = tm.sigma ? Json(*tm.sigma) : Json(nullptr);
  if (tm.directed) doc["directed"] = *tm.directed;
  return doc.dump() + "\n";
}

}  // namespace collcert
