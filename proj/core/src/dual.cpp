#include "slabperc/dual.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace slabperc {

namespace {

// Undirected edge key over vertex indices.
std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct UnionFind {
    std::vector<std::uint32_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

PlanarRect bounding_box(const FiniteGraph& g) {
    const auto& verts = g.vertices();
    std::int64_t xlo = verts[0].x, xhi = verts[0].x;
    std::int64_t ylo = verts[0].y, yhi = verts[0].y;
    for (const auto& v : verts) {
        xlo = std::min(xlo, v.x);
        xhi = std::max(xhi, v.x);
        ylo = std::min(ylo, v.y);
        yhi = std::max(yhi, v.y);
    }
    return PlanarRect(Block(xlo, xhi), Block(ylo, yhi));
}

}  // namespace

std::size_t DualConfig::defined_count() const {
    std::size_t n = 0;
    for (auto s : state) n += s >= 0;
    return n;
}

std::size_t DualConfig::open_count() const {
    std::size_t n = 0;
    for (auto s : state) n += s == 1;
    return n;
}

DualConfig dual_of_config(const BondConfig& omega) {
    const auto& g = *omega.graph;
    if (g.vertex_count() == 0)
        throw std::invalid_argument("dual_of_config: empty configuration");
    const auto& verts = g.vertices();
    auto layer = verts[0].layer;
    for (const auto& v : verts)
        if (v.layer != layer)
            throw std::invalid_argument("dual_of_config: duality is planar only");
    auto box = bounding_box(g);
    auto w = box.width(), h = box.height();
    if (static_cast<std::int64_t>(g.vertex_count()) != w * h ||
        static_cast<std::int64_t>(g.edge_count()) != 2 * w * h - w - h)
        throw std::invalid_argument("dual_of_config: full rectangle graph required");

    DualConfig d;
    d.viewport = box;
    d.primal_layer = layer;
    // One ring of dual sites past the box, so rim primal edges keep their
    // crossing partners.
    PlanarRect dual_box(Block(box.h.lo - 1, box.h.hi), Block(box.v.lo - 1, box.v.hi));
    d.graph = induced_rect_graph(dual_box, 0);

    std::unordered_map<std::uint64_t, std::uint32_t> primal_index;
    const auto& pedges = g.edges();
    for (std::uint32_t e = 0; e < pedges.size(); ++e)
        primal_index.emplace(edge_key(pedges[e].first, pedges[e].second), e);

    const auto& dedges = d.graph.edges();
    const auto& dverts = d.graph.vertices();
    d.state.assign(dedges.size(), -1);
    d.primal_edge.assign(dedges.size(), FiniteGraph::npos);
    for (std::uint32_t e = 0; e < dedges.size(); ++e) {
        auto a = dverts[dedges[e].first];
        auto b = dverts[dedges[e].second];
        if (a.x > b.x || a.y > b.y) std::swap(a, b);
        // Horizontal dual edge crosses the primal vertical edge between the
        // cells; vertical dual edge crosses the primal horizontal one.
        SlabVertex p1, p2;
        if (a.y == b.y) {
            p1 = {b.x, b.y, layer};
            p2 = {b.x, b.y + 1, layer};
        } else {
            p1 = {b.x, b.y, layer};
            p2 = {b.x + 1, b.y, layer};
        }
        auto i1 = g.find_vertex(p1);
        auto i2 = g.find_vertex(p2);
        if (i1 == FiniteGraph::npos || i2 == FiniteGraph::npos) continue;
        auto it = primal_index.find(edge_key(i1, i2));
        if (it == primal_index.end()) continue;
        d.primal_edge[e] = it->second;
        d.state[e] = omega.open[it->second] ? 0 : 1;
    }
    return d;
}

BondConfig primal_of_dual(const DualConfig& dual, const FiniteGraph& primal) {
    BondConfig omega;
    omega.graph = &primal;
    omega.open.assign(primal.edge_count(), 0);
    std::size_t matched = 0;
    for (std::size_t e = 0; e < dual.state.size(); ++e) {
        if (dual.state[e] < 0) continue;
        auto pe = dual.primal_edge[e];
        if (pe >= primal.edge_count())
            throw std::invalid_argument("primal_of_dual: viewport mismatch");
        omega.open[pe] = dual.state[e] == 1 ? 0 : 1;
        ++matched;
    }
    if (matched != primal.edge_count())
        throw std::invalid_argument("primal_of_dual: viewport mismatch");
    return omega;
}

BondConfig dual_open_config(const DualConfig& dual) {
    BondConfig c;
    c.graph = &dual.graph;
    c.open.assign(dual.state.size(), 0);
    for (std::size_t e = 0; e < dual.state.size(); ++e) c.open[e] = dual.state[e] == 1;
    return c;
}

bool touches(const std::vector<SlabVertex>& dual_cluster,
             const std::vector<SlabVertex>& primal_cluster) {
    if (dual_cluster.empty() || primal_cluster.empty()) return false;
    std::unordered_set<std::uint64_t> primal_keys;
    for (const auto& v : primal_cluster)
        primal_keys.insert(pack_vertex({v.x, v.y, 0}));
    for (const auto& v : dual_cluster) {
        // The four primal corners of the cell centred at (x+1/2, y+1/2).
        for (std::int64_t dx = 0; dx <= 1; ++dx)
            for (std::int64_t dy = 0; dy <= 1; ++dy)
                if (primal_keys.count(pack_vertex({v.x + dx, v.y + dy, 0})))
                    return true;
    }
    return false;
}

namespace {

// Connectivity between two label classes after deleting a set of primal
// edges; everything else (open or closed) conducts.
bool still_connected(const FiniteGraph& g, const std::vector<std::uint32_t>& label,
                     std::uint32_t c1, std::uint32_t c2,
                     const std::unordered_set<std::uint32_t>& removed_edges) {
    const auto& edges = g.edges();
    UnionFind uf(g.vertex_count());
    for (std::uint32_t e = 0; e < edges.size(); ++e)
        if (!removed_edges.count(e)) uf.unite(edges[e].first, edges[e].second);
    std::uint32_t r1 = FiniteGraph::npos, r2 = FiniteGraph::npos;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (label[v] == c1 && r1 == FiniteGraph::npos) r1 = uf.find(v);
        if (label[v] == c2 && r2 == FiniteGraph::npos) r2 = uf.find(v);
    }
    if (r1 == FiniteGraph::npos || r2 == FiniteGraph::npos) return false;
    // The clusters are connected internally, so one representative each
    // suffices.
    return r1 == r2;
}

}  // namespace

std::optional<DualWitness> separation_witness(const BondConfig& omega,
                                              const ClusterLabeling& labels,
                                              std::uint32_t c1, std::uint32_t c2) {
    if (c1 == c2)
        throw std::invalid_argument("separation_witness: clusters must differ");
    const auto& g = *omega.graph;
    if (labels.label.size() != g.vertex_count())
        throw std::invalid_argument("separation_witness: labels do not fit the graph");
    if (c1 >= labels.count || c2 >= labels.count)
        throw std::invalid_argument("separation_witness: no such cluster");

    auto dual = dual_of_config(omega);
    // Crossing pairs, primal side up.
    std::vector<std::uint32_t> dual_of_primal(g.edge_count(), FiniteGraph::npos);
    for (std::uint32_t e = 0; e < dual.primal_edge.size(); ++e)
        if (dual.primal_edge[e] != FiniteGraph::npos)
            dual_of_primal[dual.primal_edge[e]] = e;

    // The edge cut around c1: closed by maximality of open clusters.
    const auto& pedges = g.edges();
    std::vector<std::uint32_t> cut;
    for (std::uint32_t e = 0; e < pedges.size(); ++e) {
        bool a = labels.label[pedges[e].first] == c1;
        bool b = labels.label[pedges[e].second] == c1;
        if (a == b) continue;
        if (omega.open[e])
            throw std::invalid_argument(
                "separation_witness: labels do not match the configuration");
        cut.push_back(e);
    }
    if (cut.empty()) return std::nullopt;

    // Interface components in the dual.
    UnionFind uf(dual.graph.vertex_count());
    const auto& dedges = dual.graph.edges();
    for (auto pe : cut) {
        auto de = dual_of_primal[pe];
        uf.unite(dedges[de].first, dedges[de].second);
    }

    // Shortest primal path from c1 to c2 through any sites; its first cut
    // crossing picks the component the exploration meets first.
    std::vector<std::uint32_t> parent_of(g.vertex_count(), FiniteGraph::npos);
    std::vector<std::uint8_t> seen(g.vertex_count(), 0);
    std::queue<std::uint32_t> q;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (labels.label[v] == c1) {
            seen[v] = 1;
            q.push(v);
        }
    std::uint32_t hit = FiniteGraph::npos;
    while (!q.empty() && hit == FiniteGraph::npos) {
        auto v = q.front();
        q.pop();
        for (auto w : g.adjacency()[v]) {
            if (seen[w]) continue;
            seen[w] = 1;
            parent_of[w] = v;
            if (labels.label[w] == c2) {
                hit = w;
                break;
            }
            q.push(w);
        }
    }
    if (hit == FiniteGraph::npos) return std::nullopt;

    std::vector<std::uint32_t> ordered_roots;
    {
        // Walk back to the cluster and note interface components in path
        // order, nearest to c2 last.
        std::unordered_map<std::uint64_t, std::uint32_t> primal_index;
        for (std::uint32_t e = 0; e < pedges.size(); ++e)
            primal_index.emplace(edge_key(pedges[e].first, pedges[e].second), e);
        std::unordered_set<std::uint32_t> cut_set(cut.begin(), cut.end());
        std::vector<std::uint32_t> along;
        for (auto v = hit; parent_of[v] != FiniteGraph::npos; v = parent_of[v]) {
            auto e = primal_index.at(edge_key(v, parent_of[v]));
            if (cut_set.count(e)) along.push_back(e);
        }
        std::reverse(along.begin(), along.end());
        std::unordered_set<std::uint32_t> noted;
        for (auto pe : along) {
            auto de = dual_of_primal[pe];
            auto root = uf.find(dedges[de].first);
            if (noted.insert(root).second) ordered_roots.push_back(root);
        }
        for (auto pe : cut) {
            auto de = dual_of_primal[pe];
            auto root = uf.find(dedges[de].first);
            if (noted.insert(root).second) ordered_roots.push_back(root);
        }
    }

    const auto& dverts = dual.graph.vertices();
    auto rim_dual = [&](std::uint32_t v) {
        return dverts[v].x == dual.viewport.h.lo - 1 ||
               dverts[v].x == dual.viewport.h.hi ||
               dverts[v].y == dual.viewport.v.lo - 1 || dverts[v].y == dual.viewport.v.hi;
    };

    for (auto root : ordered_roots) {
        std::vector<std::uint32_t> comp_duals;
        std::unordered_set<std::uint32_t> removed;
        for (auto pe : cut) {
            auto de = dual_of_primal[pe];
            if (uf.find(dedges[de].first) != root) continue;
            comp_duals.push_back(de);
            removed.insert(pe);
        }
        if (still_connected(g, labels.label, c1, c2, removed)) continue;

        // Trim interior leaves; a separating curve keeps its loose ends only
        // on the rim.
        std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> incident;
        std::unordered_set<std::uint32_t> kept(comp_duals.begin(), comp_duals.end());
        for (auto de : comp_duals) {
            incident[dedges[de].first].push_back(de);
            incident[dedges[de].second].push_back(de);
        }
        auto degree = [&](std::uint32_t v) {
            std::uint32_t n = 0;
            for (auto de : incident[v]) n += kept.count(de) ? 1 : 0;
            return n;
        };
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [v, list] : incident) {
                if (rim_dual(v) || degree(v) != 1) continue;
                for (auto de : list)
                    if (kept.erase(de)) changed = true;
            }
        }
        // The trim must not break the separation; fall back if it would.
        std::unordered_set<std::uint32_t> trimmed_removed;
        for (auto de : kept) trimmed_removed.insert(dual.primal_edge[de]);
        if (still_connected(g, labels.label, c1, c2, trimmed_removed)) {
            kept.insert(comp_duals.begin(), comp_duals.end());
        }

        DualWitness w;
        std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> adj;
        for (auto de : kept) {
            w.edges.emplace_back(dverts[dedges[de].first], dverts[dedges[de].second]);
            adj[dedges[de].first].push_back(dedges[de].second);
            adj[dedges[de].second].push_back(dedges[de].first);
        }
        std::uint32_t max_degree = 0, ends = 0;
        std::uint32_t start = dedges[*kept.begin()].first;
        for (auto& [v, nbs] : adj) {
            max_degree = std::max<std::uint32_t>(max_degree,
                                                 static_cast<std::uint32_t>(nbs.size()));
            if (nbs.size() == 1) {
                ++ends;
                start = v;
            }
        }
        if (max_degree <= 2 && (ends == 2 || ends == 0)) {
            w.is_simple_path = ends == 2;
            w.is_cycle = ends == 0;
            std::uint32_t prev = FiniteGraph::npos, cur = start;
            w.vertices.push_back(dverts[cur]);
            for (std::size_t step = 0; step < kept.size(); ++step) {
                std::uint32_t next = FiniteGraph::npos;
                for (auto nb : adj[cur])
                    if (nb != prev) {
                        next = nb;
                        break;
                    }
                if (next == FiniteGraph::npos) break;
                w.vertices.push_back(dverts[next]);
                prev = cur;
                cur = next;
            }
        } else {
            for (auto& [v, nbs] : adj) w.vertices.push_back(dverts[v]);
        }
        return w;
    }
    return std::nullopt;
}

bool verify_separation(const BondConfig& omega, const ClusterLabeling& labels,
                       std::uint32_t c1, std::uint32_t c2, const DualWitness& w) {
    const auto& g = *omega.graph;
    auto dual = dual_of_config(omega);
    std::unordered_map<std::uint64_t, std::uint32_t> dual_index;
    const auto& dedges = dual.graph.edges();
    for (std::uint32_t e = 0; e < dedges.size(); ++e)
        dual_index.emplace(edge_key(dedges[e].first, dedges[e].second), e);

    std::unordered_set<std::uint32_t> removed;
    for (const auto& [a, b] : w.edges) {
        auto ia = dual.graph.find_vertex(a);
        auto ib = dual.graph.find_vertex(b);
        if (ia == FiniteGraph::npos || ib == FiniteGraph::npos) return false;
        auto it = dual_index.find(edge_key(ia, ib));
        if (it == dual_index.end()) return false;
        if (dual.state[it->second] != 1) return false;  // not an open dual edge
        removed.insert(dual.primal_edge[it->second]);
    }
    return !still_connected(g, labels.label, c1, c2, removed);
}

std::size_t boundary_arm_estimate(const std::vector<SlabVertex>& cluster,
                                  const PlanarRect& viewport) {
    if (cluster.empty()) return 0;
    std::unordered_set<std::uint64_t> keys;
    for (const auto& v : cluster) keys.insert(pack_vertex({v.x, v.y, 0}));

    // Rim sites in cyclic order, each once.
    std::vector<SlabVertex> rim;
    std::unordered_set<std::uint64_t> rim_seen;
    auto add = [&](std::int64_t x, std::int64_t y) {
        if (rim_seen.insert(pack_vertex({x, y, 0})).second) rim.push_back({x, y, 0});
    };
    for (auto x = viewport.h.lo; x <= viewport.h.hi; ++x) add(x, viewport.v.lo);
    for (auto y = viewport.v.lo; y <= viewport.v.hi; ++y) add(viewport.h.hi, y);
    for (auto x = viewport.h.hi; x >= viewport.h.lo; --x) add(x, viewport.v.hi);
    for (auto y = viewport.v.hi; y >= viewport.v.lo; --y) add(viewport.h.lo, y);

    std::size_t arms = 0;
    bool prev = false;
    for (const auto& v : rim) {
        bool cur = keys.count(pack_vertex({v.x, v.y, 0})) > 0;
        if (cur && !prev) ++arms;
        prev = cur;
    }
    // Merge a run that wraps around the rim's cyclic seam.
    if (arms > 1 && keys.count(pack_vertex({rim.front().x, rim.front().y, 0})) &&
        keys.count(pack_vertex({rim.back().x, rim.back().y, 0})))
        --arms;
    return arms;
}

std::string dump_witness(const DualWitness& w) {
    std::ostringstream os;
    os << "# dual edges; site (x,y) sits at (x+1/2, y+1/2)\n";
    os << "# kind " << (w.is_cycle ? "cycle" : w.is_simple_path ? "path" : "set")
       << "\n";
    for (const auto& [a, b] : w.edges)
        os << a.x << ' ' << a.y << ' ' << b.x << ' ' << b.y << '\n';
    return os.str();
}

}  // namespace slabperc
