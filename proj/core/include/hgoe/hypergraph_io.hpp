#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "hgoe/hypergraph.hpp"

namespace hgoe {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

// Binary index layout, all integers little-endian, f64 as IEEE-754 bits:
//
//   char[4]  magic "HGOE"
//   u32      format version
//   u8       variant (0 base, 1 syns-context, 2 weighted)
//   u64      node count, then per node in id order:
//              u8 kind, u8 has_weight, [f64 weight], u32 label length, label bytes
//   u64      edge count, then per edge in id order:
//              u8 kind, u8 directed,
//              u32 n, u32[n] members (undirected) or tail (directed),
//              u32 m, u32[m] head (m = 0 when undirected),
//              u8 has_doc_id, [u32 length, bytes],
//              u8 has_weight, [f64 weight],
//              u32 k, f64[k] context similarities
//   u64      document count N
//   u64      df entry count, then per entry in label order: u32 length, bytes, u64 df
std::vector<std::uint8_t> serialize(const Hypergraph& graph);
Hypergraph deserialize(std::span<const std::uint8_t> bytes);

void save(const Hypergraph& graph, const std::filesystem::path& path);
Hypergraph load(const std::filesystem::path& path);

}  // namespace hgoe
