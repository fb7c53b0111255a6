#pragma once
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slabperc/geometry.hpp"

namespace slabperc {

// Site of the two-layer slab. Layer is 0 (bottom) or 1 (top).
struct SlabVertex {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::uint8_t layer = 1;

    friend bool operator==(const SlabVertex&, const SlabVertex&) = default;
};

// Packs coordinates into one key; valid for |x|,|y| < 2^30.
inline std::uint64_t pack_vertex(const SlabVertex& v) {
    constexpr std::int64_t bias = 1LL << 30;
    return (static_cast<std::uint64_t>(v.x + bias) << 32) |
           (static_cast<std::uint64_t>(v.y + bias) << 1) |
           static_cast<std::uint64_t>(v.layer & 1);
}

inline SlabVertex unpack_vertex(std::uint64_t key) {
    constexpr std::int64_t bias = 1LL << 30;
    SlabVertex v;
    v.x = static_cast<std::int64_t>(key >> 32) - bias;
    v.y = static_cast<std::int64_t>((key >> 1) & 0x7fffffffULL) - bias;
    v.layer = static_cast<std::uint8_t>(key & 1);
    return v;
}

// True iff {a,b} is a legal slab bond: lattice neighbours in one layer, or
// the same site on the two layers.
bool slab_adjacent(const SlabVertex& a, const SlabVertex& b);

// Simple undirected graph over slab sites. No self-loops, no duplicate
// edges, every edge is a legal slab bond with both endpoints present.
class FiniteGraph {
  public:
    std::uint32_t add_vertex(const SlabVertex& v);          // dedups
    void add_edge(const SlabVertex& a, const SlabVertex& b);  // dedups, validates
    void add_edge_by_index(std::uint32_t a, std::uint32_t b);

    bool has_vertex(const SlabVertex& v) const;
    bool has_edge(const SlabVertex& a, const SlabVertex& b) const;
    // Index of v, or npos.
    std::uint32_t find_vertex(const SlabVertex& v) const;
    static constexpr std::uint32_t npos = 0xffffffffu;

    std::size_t vertex_count() const { return verts_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<SlabVertex>& vertices() const { return verts_; }
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const {
        return edges_;
    }

    // Adjacency lists, built on demand and cached.
    const std::vector<std::vector<std::uint32_t>>& adjacency() const;

    // Component id per vertex, ids are 0..count-1 in first-seen order.
    std::vector<std::uint32_t> component_labels() const;
    std::size_t component_count() const;

    friend bool operator==(const FiniteGraph& a, const FiniteGraph& b) {
        return a.verts_ == b.verts_ && a.edges_ == b.edges_;
    }

  private:
    std::vector<SlabVertex> verts_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    std::unordered_map<std::uint64_t, bool> edge_seen_;
    mutable std::vector<std::vector<std::uint32_t>> adj_;
    mutable bool adj_valid_ = false;
};

// All sites of `r` on one layer with the lattice edges inside it.
FiniteGraph induced_rect_graph(const PlanarRect& r, std::uint8_t layer = 1);

// Graph union: union of vertex sets and union of edge sets, deduplicated.
// Deliberately weaker than the induced graph of the vertex union: an edge
// between sites contributed by different parts is absent unless some part
// contains it.
FiniteGraph graph_union(const std::vector<FiniteGraph>& parts);

// Edges present in the induced graph of the union's vertex set but absent
// from the graph union itself: adjacent site pairs sharing no common part.
std::vector<std::pair<SlabVertex, SlabVertex>> union_pathology(
    const std::vector<FiniteGraph>& parts);

// Induced subgraph of the one-layer lattice over an explicit site list.
FiniteGraph induced_site_graph(const std::vector<SlabVertex>& sites);

}  // namespace slabperc
