#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace hgoe {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

enum class NodeKind : std::uint8_t { Term = 0, Entity = 1 };

enum class EdgeKind : std::uint8_t {
  Document = 0,
  ContainedIn = 1,
  RelatedTo = 2,
  Synonym = 3,
  Context = 4,
};

enum class Role : std::uint8_t { Member = 0, Tail = 1, Head = 2 };

enum class Variant : std::uint8_t { Base = 0, SynsContext = 1, Weighted = 2 };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);
std::string_view to_string(Variant variant);
// Accepts "base", "syns-context" and "weighted".
std::optional<Variant> parse_variant(std::string_view text);

struct Node {
  NodeId id = 0;
  NodeKind kind = NodeKind::Term;
  std::string label;
  std::optional<double> weight;

  bool operator==(const Node&) const = default;
};

// Either an undirected member set or a directed tail -> head pair. Node sets
// are kept sorted and deduplicated so equal sets compare equal.
class Topology {
 public:
  Topology() = default;
  static Topology undirected(std::vector<NodeId> members);
  static Topology directed(std::vector<NodeId> tail, std::vector<NodeId> head);

  bool is_directed() const noexcept { return directed_; }

  // Undirected member set. Empty for directed edges.
  std::span<const NodeId> members() const noexcept {
    return directed_ ? std::span<const NodeId>{} : std::span<const NodeId>{first_};
  }
  std::span<const NodeId> tail() const noexcept {
    return directed_ ? std::span<const NodeId>{first_} : std::span<const NodeId>{};
  }
  std::span<const NodeId> head() const noexcept { return second_; }

  // Nodes a walker may depart from (members or tail), and nodes it may arrive at
  // (members or head).
  std::span<const NodeId> sources() const noexcept { return first_; }
  std::span<const NodeId> targets() const noexcept {
    return directed_ ? std::span<const NodeId>{second_} : std::span<const NodeId>{first_};
  }

  bool operator==(const Topology&) const = default;
  auto operator<=>(const Topology&) const = default;

 private:
  Topology(bool directed, std::vector<NodeId> first, std::vector<NodeId> second);

  bool directed_ = false;
  std::vector<NodeId> first_;
  std::vector<NodeId> second_;
};

struct Hyperedge {
  EdgeId id = 0;
  EdgeKind kind = EdgeKind::Document;
  Topology topology;
  std::optional<std::string> doc_id;
  std::optional<double> weight;
  // Cosine similarities of the contextual neighbours; Context edges only.
  std::vector<double> similarities;

  bool operator==(const Hyperedge&) const = default;
};

struct Incidence {
  EdgeId edge = 0;
  Role role = Role::Member;

  bool operator==(const Incidence&) const = default;
  auto operator<=>(const Incidence&) const = default;
};

struct Transition {
  EdgeId edge = 0;
  NodeId target = 0;

  bool operator==(const Transition&) const = default;
};

// Mixed hypergraph of terms and entities. Built by a single writer; once
// handed out as `const Hypergraph&` it is immutable and safe for concurrent
// readers.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(Variant variant) : variant_(variant) {}

  Variant variant() const noexcept { return variant_; }
  void set_variant(Variant variant) noexcept { variant_ = variant; }

  // Returns the id of the (kind, label) node, creating it if needed.
  NodeId upsert_node(NodeKind kind, std::string_view label);
  std::optional<NodeId> find_node(NodeKind kind, std::string_view label) const;

  // Stores an edge, merging with an existing identical one. Document edges are
  // identified by their docId as well as their topology.
  EdgeId add_edge(EdgeKind kind, Topology topology, std::optional<std::string> doc_id = std::nullopt);

  std::optional<EdgeId> find_document(std::string_view doc_id) const;

  // Every (edge, target) pair a walker standing on `node` could take, in
  // ascending edge order then ascending target order.
  std::vector<Transition> eligible_transitions(NodeId node,
                                               const std::unordered_set<EdgeId>& excluded_edges = {},
                                               const std::unordered_set<NodeId>& excluded_nodes = {}) const;

  const Node& node(NodeId id) const;
  const Hyperedge& edge(EdgeId id) const;
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const Hyperedge> edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Sorted by (edge, role).
  std::span<const Incidence> incidence(NodeId id) const;

  // Recomputes incidence from edge topology; equals the stored incidence for
  // any well-formed graph.
  std::vector<std::vector<Incidence>> rebuild_incidence() const;

  void set_node_weight(NodeId id, double weight);
  void set_edge_weight(EdgeId id, double weight);
  void set_similarities(EdgeId id, std::vector<double> similarities);

  // Number of Document edges.
  std::uint64_t document_count() const noexcept { return document_index_.size(); }

  // Documents containing each corpus term.
  const std::map<std::string, std::uint64_t>& document_frequency() const noexcept { return document_frequency_; }
  void set_document_frequency(std::map<std::string, std::uint64_t> df) { document_frequency_ = std::move(df); }

  std::size_t count_edges(EdgeKind kind) const;
  std::size_t count_nodes(NodeKind kind) const;

  // Structural equality: ids, labels, topologies, weights and statistics.
  bool operator==(const Hypergraph& other) const;

 private:
  using EdgeKey = std::tuple<EdgeKind, Topology, std::string>;

  void check_node(NodeId id) const;
  void validate(EdgeKind kind, const Topology& topology, const std::optional<std::string>& doc_id) const;

  Variant variant_ = Variant::Base;
  std::vector<Node> nodes_;
  std::vector<Hyperedge> edges_;
  std::vector<std::vector<Incidence>> incidence_;
  std::unordered_map<std::string, NodeId> term_labels_;
  std::unordered_map<std::string, NodeId> entity_labels_;
  std::map<EdgeKey, EdgeId> edge_keys_;
  std::unordered_map<std::string, EdgeId> document_index_;
  std::map<std::string, std::uint64_t> document_frequency_;
};

}  // namespace hgoe
