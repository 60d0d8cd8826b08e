#include "hgoe/hypergraph.hpp"

#include <algorithm>

#include "hgoe/error.hpp"

namespace hgoe {

namespace {

void sort_unique(std::vector<NodeId>& ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
}

void check_weight(double weight) {
  if (!(weight > 0.0 && weight <= 1.0)) {
    throw InvariantError("weight must lie in (0, 1], got " + std::to_string(weight));
  }
}

}  // namespace

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Term:
      return "term";
    case NodeKind::Entity:
      return "entity";
  }
  return "?";
}

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Document:
      return "document";
    case EdgeKind::ContainedIn:
      return "contained_in";
    case EdgeKind::RelatedTo:
      return "related_to";
    case EdgeKind::Synonym:
      return "synonym";
    case EdgeKind::Context:
      return "context";
  }
  return "?";
}

std::string_view to_string(Variant variant) {
  switch (variant) {
    case Variant::Base:
      return "base";
    case Variant::SynsContext:
      return "syns-context";
    case Variant::Weighted:
      return "weighted";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view text) {
  if (text == "base") return Variant::Base;
  if (text == "syns-context") return Variant::SynsContext;
  if (text == "weighted") return Variant::Weighted;
  return std::nullopt;
}

Topology::Topology(bool directed, std::vector<NodeId> first, std::vector<NodeId> second)
    : directed_(directed), first_(std::move(first)), second_(std::move(second)) {
  sort_unique(first_);
  sort_unique(second_);
}

Topology Topology::undirected(std::vector<NodeId> members) {
  if (members.empty()) throw InputError("undirected hyperedge needs at least one member");
  return Topology(false, std::move(members), {});
}

Topology Topology::directed(std::vector<NodeId> tail, std::vector<NodeId> head) {
  if (tail.empty() || head.empty()) throw InputError("directed hyperedge needs nonempty tail and head");
  return Topology(true, std::move(tail), std::move(head));
}

NodeId Hypergraph::upsert_node(NodeKind kind, std::string_view label) {
  if (label.empty()) throw InputError("node label must be nonempty");
  auto& labels = kind == NodeKind::Term ? term_labels_ : entity_labels_;
  std::string key(label);
  if (auto it = labels.find(key); it != labels.end()) return it->second;

  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(Node{id, kind, key, std::nullopt});
  incidence_.emplace_back();
  labels.emplace(std::move(key), id);
  return id;
}

std::optional<NodeId> Hypergraph::find_node(NodeKind kind, std::string_view label) const {
  const auto& labels = kind == NodeKind::Term ? term_labels_ : entity_labels_;
  if (auto it = labels.find(std::string(label)); it != labels.end()) return it->second;
  return std::nullopt;
}

void Hypergraph::check_node(NodeId id) const {
  if (id >= nodes_.size()) throw InputError("unknown node id " + std::to_string(id));
}

void Hypergraph::validate(EdgeKind kind, const Topology& topology, const std::optional<std::string>& doc_id) const {
  for (NodeId id : topology.sources()) check_node(id);
  for (NodeId id : topology.head()) check_node(id);

  const auto all_of_kind = [this](std::span<const NodeId> ids, NodeKind want) {
    return std::all_of(ids.begin(), ids.end(), [&](NodeId id) { return nodes_[id].kind == want; });
  };
  const std::string name(to_string(kind));

  if (kind == EdgeKind::ContainedIn) {
    if (!topology.is_directed()) throw InvariantError("contained_in edges must be directed");
    if (topology.head().size() != 1) throw InvariantError("contained_in edges need exactly one head node");
    if (!all_of_kind(topology.head(), NodeKind::Entity)) throw InvariantError("contained_in head must be an entity");
    if (!all_of_kind(topology.tail(), NodeKind::Term)) throw InvariantError("contained_in tail must be terms");
  } else {
    if (topology.is_directed()) throw InvariantError(name + " edges must be undirected");
    if (kind == EdgeKind::RelatedTo && !all_of_kind(topology.members(), NodeKind::Entity)) {
      throw InvariantError("related_to members must be entities");
    }
    if ((kind == EdgeKind::Synonym || kind == EdgeKind::Context) && !all_of_kind(topology.members(), NodeKind::Term)) {
      throw InvariantError(name + " members must be terms");
    }
  }

  if (kind == EdgeKind::Document) {
    if (!doc_id || doc_id->empty()) throw InvariantError("document edges need a docId");
  } else if (doc_id) {
    throw InvariantError(name + " edges cannot carry a docId");
  }
}

EdgeId Hypergraph::add_edge(EdgeKind kind, Topology topology, std::optional<std::string> doc_id) {
  validate(kind, topology, doc_id);

  EdgeKey key{kind, topology, doc_id.value_or(std::string{})};
  if (auto it = edge_keys_.find(key); it != edge_keys_.end()) return it->second;
  if (doc_id && document_index_.contains(*doc_id)) {
    throw InputError("docId '" + *doc_id + "' already has a document edge");
  }

  const auto id = static_cast<EdgeId>(edges_.size());
  if (topology.is_directed()) {
    for (NodeId n : topology.tail()) incidence_[n].push_back({id, Role::Tail});
    for (NodeId n : topology.head()) incidence_[n].push_back({id, Role::Head});
  } else {
    for (NodeId n : topology.members()) incidence_[n].push_back({id, Role::Member});
  }
  if (doc_id) document_index_.emplace(*doc_id, id);
  edge_keys_.emplace(std::move(key), id);
  edges_.push_back(Hyperedge{id, kind, std::move(topology), std::move(doc_id), std::nullopt, {}});
  return id;
}

std::optional<EdgeId> Hypergraph::find_document(std::string_view doc_id) const {
  if (auto it = document_index_.find(std::string(doc_id)); it != document_index_.end()) return it->second;
  return std::nullopt;
}

std::vector<Transition> Hypergraph::eligible_transitions(NodeId node,
                                                         const std::unordered_set<EdgeId>& excluded_edges,
                                                         const std::unordered_set<NodeId>& excluded_nodes) const {
  check_node(node);
  std::vector<Transition> out;
  for (const Incidence& inc : incidence_[node]) {
    if (inc.role == Role::Head) continue;
    if (excluded_edges.contains(inc.edge)) continue;
    for (NodeId target : edges_[inc.edge].topology.targets()) {
      if (target == node || excluded_nodes.contains(target)) continue;
      out.push_back({inc.edge, target});
    }
  }
  return out;
}

const Node& Hypergraph::node(NodeId id) const {
  check_node(id);
  return nodes_[id];
}

const Hyperedge& Hypergraph::edge(EdgeId id) const {
  if (id >= edges_.size()) throw InputError("unknown edge id " + std::to_string(id));
  return edges_[id];
}

std::span<const Incidence> Hypergraph::incidence(NodeId id) const {
  check_node(id);
  return incidence_[id];
}

std::vector<std::vector<Incidence>> Hypergraph::rebuild_incidence() const {
  std::vector<std::vector<Incidence>> rebuilt(nodes_.size());
  for (const Hyperedge& e : edges_) {
    if (e.topology.is_directed()) {
      for (NodeId n : e.topology.tail()) rebuilt[n].push_back({e.id, Role::Tail});
      for (NodeId n : e.topology.head()) rebuilt[n].push_back({e.id, Role::Head});
    } else {
      for (NodeId n : e.topology.members()) rebuilt[n].push_back({e.id, Role::Member});
    }
  }
  for (auto& list : rebuilt) std::sort(list.begin(), list.end());
  return rebuilt;
}

void Hypergraph::set_node_weight(NodeId id, double weight) {
  check_node(id);
  check_weight(weight);
  nodes_[id].weight = weight;
}

void Hypergraph::set_edge_weight(EdgeId id, double weight) {
  if (id >= edges_.size()) throw InputError("unknown edge id " + std::to_string(id));
  check_weight(weight);
  edges_[id].weight = weight;
}

void Hypergraph::set_similarities(EdgeId id, std::vector<double> similarities) {
  if (id >= edges_.size()) throw InputError("unknown edge id " + std::to_string(id));
  edges_[id].similarities = std::move(similarities);
}

std::size_t Hypergraph::count_edges(EdgeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [kind](const Hyperedge& e) { return e.kind == kind; }));
}

std::size_t Hypergraph::count_nodes(NodeKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [kind](const Node& n) { return n.kind == kind; }));
}

bool Hypergraph::operator==(const Hypergraph& other) const {
  return variant_ == other.variant_ && nodes_ == other.nodes_ && edges_ == other.edges_ &&
         incidence_ == other.incidence_ && document_frequency_ == other.document_frequency_;
}

}  // namespace hgoe
