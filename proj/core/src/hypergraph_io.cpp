#include "hgoe/hypergraph_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "hgoe/error.hpp"

namespace hgoe {

namespace {

constexpr char kMagic[4] = {'H', 'G', 'O', 'E'};

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  void ids(std::span<const NodeId> ids) {
    u32(static_cast<std::uint32_t>(ids.size()));
    for (NodeId id : ids) u32(id);
  }

  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint64_t offset() const noexcept { return pos_; }
  bool done() const noexcept { return pos_ == in_.size(); }

  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  std::vector<NodeId> ids() {
    const std::uint32_t n = u32();
    need(std::uint64_t{n} * 4);
    std::vector<NodeId> v(n);
    for (auto& id : v) id = u32();
    return v;
  }
  bool flag() {
    const auto at = pos_;
    const std::uint8_t v = u8();
    if (v > 1) throw FormatError("invalid flag byte " + std::to_string(v), at);
    return v == 1;
  }

 private:
  void need(std::uint64_t n) const {
    if (in_.size() - pos_ < n) throw FormatError("truncated index file", pos_);
  }

  std::span<const std::uint8_t> in_;
  std::uint64_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize(const Hypergraph& graph) {
  Writer w;
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u32(kIndexFormatVersion);
  w.u8(static_cast<std::uint8_t>(graph.variant()));

  w.u64(graph.node_count());
  for (const Node& n : graph.nodes()) {
    w.u8(static_cast<std::uint8_t>(n.kind));
    w.u8(n.weight ? 1 : 0);
    if (n.weight) w.f64(*n.weight);
    w.str(n.label);
  }

  w.u64(graph.edge_count());
  for (const Hyperedge& e : graph.edges()) {
    w.u8(static_cast<std::uint8_t>(e.kind));
    w.u8(e.topology.is_directed() ? 1 : 0);
    w.ids(e.topology.sources());
    w.ids(e.topology.head());
    w.u8(e.doc_id ? 1 : 0);
    if (e.doc_id) w.str(*e.doc_id);
    w.u8(e.weight ? 1 : 0);
    if (e.weight) w.f64(*e.weight);
    w.u32(static_cast<std::uint32_t>(e.similarities.size()));
    for (double s : e.similarities) w.f64(s);
  }

  w.u64(graph.document_count());
  const auto& df = graph.document_frequency();
  w.u64(df.size());
  for (const auto& [label, count] : df) {
    w.str(label);
    w.u64(count);
  }
  return w.take();
}

Hypergraph deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  for (char c : kMagic) {
    const auto at = r.offset();
    if (r.u8() != static_cast<std::uint8_t>(c)) throw FormatError("bad magic bytes, not an HGOE index", at);
  }
  {
    const auto at = r.offset();
    const std::uint32_t version = r.u32();
    if (version != kIndexFormatVersion) {
      throw FormatError("unsupported index format version " + std::to_string(version), at);
    }
  }
  const auto variant_at = r.offset();
  const std::uint8_t variant = r.u8();
  if (variant > static_cast<std::uint8_t>(Variant::Weighted)) {
    throw FormatError("unknown variant " + std::to_string(variant), variant_at);
  }
  Hypergraph graph(static_cast<Variant>(variant));

  // Structural errors found while rebuilding are reported against the record
  // that triggered them.
  const std::uint64_t node_count = r.u64();
  for (std::uint64_t i = 0; i < node_count; ++i) {
    const auto at = r.offset();
    const std::uint8_t kind = r.u8();
    if (kind > static_cast<std::uint8_t>(NodeKind::Entity)) throw FormatError("unknown node kind", at);
    const bool has_weight = r.flag();
    const double weight = has_weight ? r.f64() : 0.0;
    const std::string label = r.str();
    try {
      const NodeId id = graph.upsert_node(static_cast<NodeKind>(kind), label);
      if (id != i) throw FormatError("duplicate node label '" + label + "'", at);
      if (has_weight) graph.set_node_weight(id, weight);
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(std::string("invalid node record: ") + e.what(), at);
    }
  }

  const std::uint64_t edge_count = r.u64();
  for (std::uint64_t i = 0; i < edge_count; ++i) {
    const auto at = r.offset();
    const std::uint8_t kind = r.u8();
    if (kind > static_cast<std::uint8_t>(EdgeKind::Context)) throw FormatError("unknown edge kind", at);
    const bool directed = r.flag();
    auto first = r.ids();
    auto second = r.ids();
    std::optional<std::string> doc_id;
    if (r.flag()) doc_id = r.str();
    std::optional<double> weight;
    if (r.flag()) weight = r.f64();
    std::vector<double> sims(r.u32());
    for (double& s : sims) s = r.f64();
    try {
      Topology topology = directed ? Topology::directed(std::move(first), std::move(second))
                                   : Topology::undirected(std::move(first));
      const EdgeId id = graph.add_edge(static_cast<EdgeKind>(kind), std::move(topology), std::move(doc_id));
      if (id != i) throw FormatError("duplicate edge record", at);
      if (weight) graph.set_edge_weight(id, *weight);
      if (!sims.empty()) graph.set_similarities(id, std::move(sims));
    } catch (const FormatError&) {
      throw;
    } catch (const Error& e) {
      throw FormatError(std::string("invalid edge record: ") + e.what(), at);
    }
  }

  const auto stats_at = r.offset();
  const std::uint64_t n_docs = r.u64();
  if (n_docs != graph.document_count()) {
    throw FormatError("document count does not match document edges", stats_at);
  }
  std::map<std::string, std::uint64_t> df;
  const std::uint64_t df_count = r.u64();
  for (std::uint64_t i = 0; i < df_count; ++i) {
    std::string label = r.str();
    df.emplace(std::move(label), r.u64());
  }
  graph.set_document_frequency(std::move(df));

  if (!r.done()) throw FormatError("trailing bytes after statistics block", r.offset());
  return graph;
}

void save(const Hypergraph& graph, const std::filesystem::path& path) {
  const auto bytes = serialize(graph);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

Hypergraph load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open index file '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace hgoe
