#include "slabperc/slabgraph.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace slabperc {

bool slab_adjacent(const SlabVertex& a, const SlabVertex& b) {
    if (a.layer == b.layer) {
        std::int64_t dx = std::llabs(a.x - b.x), dy = std::llabs(a.y - b.y);
        return dx + dy == 1;
    }
    return a.x == b.x && a.y == b.y;
}

std::uint32_t FiniteGraph::add_vertex(const SlabVertex& v) {
    auto key = pack_vertex(v);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    auto id = static_cast<std::uint32_t>(verts_.size());
    verts_.push_back(v);
    index_.emplace(key, id);
    adj_valid_ = false;
    return id;
}

void FiniteGraph::add_edge(const SlabVertex& a, const SlabVertex& b) {
    if (!slab_adjacent(a, b))
        throw std::invalid_argument("FiniteGraph::add_edge: not a slab bond");
    add_edge_by_index(add_vertex(a), add_vertex(b));
}

void FiniteGraph::add_edge_by_index(std::uint32_t a, std::uint32_t b) {
    if (a == b) throw std::invalid_argument("FiniteGraph::add_edge: self-loop");
    if (a >= verts_.size() || b >= verts_.size())
        throw std::invalid_argument("FiniteGraph::add_edge: endpoint missing");
    if (!slab_adjacent(verts_[a], verts_[b]))
        throw std::invalid_argument("FiniteGraph::add_edge: not a slab bond");
    std::uint32_t lo = std::min(a, b), hi = std::max(a, b);
    std::uint64_t ekey = (static_cast<std::uint64_t>(lo) << 32) | hi;
    if (edge_seen_.emplace(ekey, true).second) {
        edges_.emplace_back(lo, hi);
        adj_valid_ = false;
    }
}

bool FiniteGraph::has_vertex(const SlabVertex& v) const {
    return index_.count(pack_vertex(v)) > 0;
}

bool FiniteGraph::has_edge(const SlabVertex& a, const SlabVertex& b) const {
    auto ai = find_vertex(a), bi = find_vertex(b);
    if (ai == npos || bi == npos) return false;
    std::uint32_t lo = std::min(ai, bi), hi = std::max(ai, bi);
    return edge_seen_.count((static_cast<std::uint64_t>(lo) << 32) | hi) > 0;
}

std::uint32_t FiniteGraph::find_vertex(const SlabVertex& v) const {
    auto it = index_.find(pack_vertex(v));
    return it == index_.end() ? npos : it->second;
}

const std::vector<std::vector<std::uint32_t>>& FiniteGraph::adjacency() const {
    if (!adj_valid_) {
        adj_.assign(verts_.size(), {});
        for (auto& [a, b] : edges_) {
            adj_[a].push_back(b);
            adj_[b].push_back(a);
        }
        adj_valid_ = true;
    }
    return adj_;
}

namespace {
// Small union-find with path compression and union by size.
struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;
    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t v) {
        std::uint32_t root = v;
        while (parent[root] != root) root = parent[root];
        while (parent[v] != root) {  // compress path to root
            auto next = parent[v];
            parent[v] = root;
            v = next;
        }
        return root;
    }
    void join(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};
}  // namespace

std::vector<std::uint32_t> FiniteGraph::component_labels() const {
    UnionFind uf(verts_.size());
    for (auto& [a, b] : edges_) uf.join(a, b);
    std::vector<std::uint32_t> label(verts_.size(), npos);
    std::uint32_t next = 0;
    std::vector<std::uint32_t> root_label(verts_.size(), npos);
    for (std::uint32_t v = 0; v < verts_.size(); ++v) {
        auto r = uf.find(v);
        if (root_label[r] == npos) root_label[r] = next++;
        label[v] = root_label[r];
    }
    return label;
}

std::size_t FiniteGraph::component_count() const {
    auto labels = component_labels();
    std::size_t mx = 0;
    for (auto l : labels) mx = std::max<std::size_t>(mx, l + 1);
    return verts_.empty() ? 0 : mx;
}

FiniteGraph induced_rect_graph(const PlanarRect& r, std::uint8_t layer) {
    FiniteGraph g;
    for (std::int64_t y = r.v.lo; y <= r.v.hi; ++y)
        for (std::int64_t x = r.h.lo; x <= r.h.hi; ++x)
            g.add_vertex({x, y, layer});
    for (std::int64_t y = r.v.lo; y <= r.v.hi; ++y)
        for (std::int64_t x = r.h.lo; x <= r.h.hi; ++x) {
            if (x + 1 <= r.h.hi) g.add_edge({x, y, layer}, {x + 1, y, layer});
            if (y + 1 <= r.v.hi) g.add_edge({x, y, layer}, {x, y + 1, layer});
        }
    return g;
}

FiniteGraph graph_union(const std::vector<FiniteGraph>& parts) {
    FiniteGraph g;
    for (const auto& p : parts) {
        for (const auto& v : p.vertices()) g.add_vertex(v);
        for (auto& [a, b] : p.edges()) g.add_edge(p.vertices()[a], p.vertices()[b]);
    }
    return g;
}

std::vector<std::pair<SlabVertex, SlabVertex>> union_pathology(
    const std::vector<FiniteGraph>& parts) {
    FiniteGraph u = graph_union(parts);
    std::vector<std::pair<SlabVertex, SlabVertex>> missing;
    const auto& vs = u.vertices();
    // Candidate neighbours of each site; report adjacent pairs present as
    // vertices but not joined by any part's edge.
    for (const auto& v : vs) {
        const SlabVertex cands[3] = {
            {v.x + 1, v.y, v.layer},
            {v.x, v.y + 1, v.layer},
            {v.x, v.y, static_cast<std::uint8_t>(1 - v.layer)},
        };
        for (const auto& w : cands) {
            if (w.layer != v.layer && v.layer == 1) continue;  // count column once
            if (!u.has_vertex(w)) continue;
            if (!u.has_edge(v, w)) missing.emplace_back(v, w);
        }
    }
    return missing;
}

FiniteGraph induced_site_graph(const std::vector<SlabVertex>& sites) {
    FiniteGraph g;
    for (const auto& v : sites) g.add_vertex(v);
    for (const auto& v : sites) {
        const SlabVertex cands[3] = {
            {v.x + 1, v.y, v.layer},
            {v.x, v.y + 1, v.layer},
            {v.x, v.y, static_cast<std::uint8_t>(1 - v.layer)},
        };
        for (const auto& w : cands) {
            if (w.layer != v.layer && v.layer == 1) continue;
            if (g.has_vertex(w)) g.add_edge(v, w);
        }
    }
    return g;
}

}  // namespace slabperc
