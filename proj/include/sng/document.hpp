#pragma once

#include <string>

#if __has_include(<nlohmann/json.hpp>)
#include <nlohmann/json.hpp>
#else
#include "json.hpp"  // vendored single header
#endif

#include "sng/errors.hpp"
#include "sng/network.hpp"

namespace sng {

inline constexpr const char* kDocumentFormat = "sng/1";

namespace detail {

inline std::pair<int, int> position_of_byte(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline const nlohmann::json& expect(const nlohmann::json& j, const char* key,
                                    const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw SyntaxError(0, 0, std::string(where) + " is missing \"" + key + "\"");
  return *it;
}

inline std::string expect_string(const nlohmann::json& j, const char* key,
                                 const char* where) {
  const auto& value = expect(j, key, where);
  if (!value.is_string())
    throw SyntaxError(0, 0, std::string(where) + "." + key + " must be a string");
  return value.get<std::string>();
}

}  // namespace detail

/// Parses the "sng/1" document format into a raw description. Structural
/// problems raise SyntaxError (with line/column for malformed JSON); value
/// problems surface later through validate_network.
inline NetworkDescription parse_document(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = detail::position_of_byte(text, e.byte ? e.byte - 1 : 0);
    throw SyntaxError(line, column, e.what());
  }
  if (!j.is_object()) throw SyntaxError(0, 0, "document must be a JSON object");
  if (detail::expect_string(j, "format", "document") != kDocumentFormat)
    throw SyntaxError(0, 0, std::string("unsupported format, expected \"") +
                              kDocumentFormat + "\"");

  NetworkDescription d;
  if (j.contains("c0")) {
    if (!j["c0"].is_string()) throw SyntaxError(0, 0, "c0 must be a decimal string");
    d.c0 = j["c0"].get<std::string>();
  }
  const auto& products = detail::expect(j, "products", "document");
  if (!products.is_array()) throw SyntaxError(0, 0, "products must be an array");
  for (const auto& p : products) {
    if (!p.is_string()) throw SyntaxError(0, 0, "products must contain strings");
    d.products.push_back(p.get<std::string>());
  }
  const auto& nodes = detail::expect(j, "nodes", "document");
  if (!nodes.is_array()) throw SyntaxError(0, 0, "nodes must be an array");
  for (const auto& n : nodes) {
    if (!n.is_object()) throw SyntaxError(0, 0, "each node must be an object");
    NodeDescription node;
    node.id = detail::expect_string(n, "id", "node");
    const auto& owned = detail::expect(n, "products", "node");
    if (!owned.is_array()) throw SyntaxError(0, 0, "node products must be an array");
    for (const auto& p : owned) {
      if (!p.is_string()) throw SyntaxError(0, 0, "node products must contain strings");
      node.products.push_back(p.get<std::string>());
    }
    const auto& thresholds = detail::expect(n, "thresholds", "node");
    if (!thresholds.is_object()) throw SyntaxError(0, 0, "thresholds must be an object");
    for (const auto& [key, value] : thresholds.items()) {
      if (!value.is_string())
        throw SyntaxError(0, 0, "thresholds must map products to decimal strings");
      node.thresholds[key] = value.get<std::string>();
    }
    d.nodes.push_back(std::move(node));
  }
  const auto& edges = detail::expect(j, "edges", "document");
  if (!edges.is_array()) throw SyntaxError(0, 0, "edges must be an array");
  for (const auto& e : edges) {
    if (!e.is_object()) throw SyntaxError(0, 0, "each edge must be an object");
    d.edges.push_back({detail::expect_string(e, "from", "edge"),
                       detail::expect_string(e, "to", "edge"),
                       detail::expect_string(e, "weight", "edge")});
  }
  if (j.contains("metadata")) {
    const auto& meta = j["metadata"];
    if (!meta.is_object()) throw SyntaxError(0, 0, "metadata must be an object");
    if (meta.contains("name")) d.name = meta["name"].get<std::string>();
    if (meta.contains("notes")) d.notes = meta["notes"].get<std::string>();
  }
  return d;
}

/// Canonical serialisation: sorted keys, nodes sorted by id, edges sorted by
/// (from, to), numeric strings normalised through exact parsing. Serialising
/// a parsed document reproduces the same bytes.
inline std::string serialize_document(const NetworkDescription& description) {
  nlohmann::json j;
  j["format"] = kDocumentFormat;
  j["c0"] = Rational::parse(description.c0).to_string();
  j["products"] = description.products;

  std::vector<const NodeDescription*> nodes;
  for (const auto& node : description.nodes) nodes.push_back(&node);
  std::sort(nodes.begin(), nodes.end(),
            [](const NodeDescription* a, const NodeDescription* b) { return a->id < b->id; });
  j["nodes"] = nlohmann::json::array();
  for (const NodeDescription* node : nodes) {
    nlohmann::json n;
    n["id"] = node->id;
    n["products"] = node->products;
    nlohmann::json thresholds = nlohmann::json::object();
    for (const auto& [product, theta] : node->thresholds)
      thresholds[product] = Rational::parse(theta).to_string();
    n["thresholds"] = std::move(thresholds);
    j["nodes"].push_back(std::move(n));
  }

  std::vector<const EdgeDescription*> edges;
  for (const auto& edge : description.edges) edges.push_back(&edge);
  std::sort(edges.begin(), edges.end(), [](const EdgeDescription* a, const EdgeDescription* b) {
    return std::pair(a->from, a->to) < std::pair(b->from, b->to);
  });
  j["edges"] = nlohmann::json::array();
  for (const EdgeDescription* edge : edges) {
    nlohmann::json e;
    e["from"] = edge->from;
    e["to"] = edge->to;
    e["weight"] = Rational::parse(edge->weight).to_string();
    j["edges"].push_back(std::move(e));
  }

  if (!description.name.empty() || !description.notes.empty()) {
    nlohmann::json meta = nlohmann::json::object();
    if (!description.name.empty()) meta["name"] = description.name;
    if (!description.notes.empty()) meta["notes"] = description.notes;
    j["metadata"] = std::move(meta);
  }
  return j.dump(2) + "\n";
}

/// Parse + validate in one step.
inline SocialNetwork parse_network(const std::string& text) {
  return validate_network(parse_document(text));
}

}  // namespace sng
