#include "slabperc/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace slabperc {

namespace {

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

// Adjacency with edge ids so walks can honour the open flags.
std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edge_adjacency(
    const FiniteGraph& g) {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(
        g.vertex_count());
    const auto& edges = g.edges();
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].first].emplace_back(edges[e].second, e);
        adj[edges[e].second].emplace_back(edges[e].first, e);
    }
    return adj;
}

Estimate make_estimate(std::size_t hits, std::size_t trials) {
    Estimate est;
    est.trials = trials;
    est.p_hat = trials ? static_cast<double>(hits) / trials : 0.0;
    est.sigma = trials ? std::sqrt(est.p_hat * (1.0 - est.p_hat) / trials) : 0.0;
    return est;
}

void summarize(CensusResult& r) {
    if (r.counts.empty()) return;
    auto sorted = r.counts;
    std::sort(sorted.begin(), sorted.end());
    r.min = sorted.front();
    r.max = sorted.back();
    double sum = 0.0;
    for (auto c : sorted) sum += c;
    r.mean = sum / sorted.size();
    auto n = sorted.size();
    r.median = n % 2 ? sorted[n / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

}  // namespace

std::vector<double> sample_uniforms(const FiniteGraph& g, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> u(g.edge_count());
    for (auto& x : u) x = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return u;
}

BondConfig config_from_uniforms(const FiniteGraph& g, const std::vector<double>& u,
                                double p) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("config_from_uniforms: p must lie in [0,1]");
    if (u.size() != g.edge_count())
        throw std::invalid_argument("config_from_uniforms: one uniform per edge");
    BondConfig c;
    c.graph = &g;
    c.p = p;
    c.open.resize(u.size());
    for (std::size_t e = 0; e < u.size(); ++e) c.open[e] = u[e] < p ? 1 : 0;
    return c;
}

BondConfig sample_config(const FiniteGraph& g, double p, std::uint64_t seed) {
    auto c = config_from_uniforms(g, sample_uniforms(g, seed), p);
    c.seed = seed;
    return c;
}

ClusterLabeling label_clusters(const BondConfig& config) {
    const auto& g = *config.graph;
    UnionFind uf(g.vertex_count());
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (config.open[e]) uf.unite(edges[e].first, edges[e].second);

    ClusterLabeling lab;
    lab.label.assign(g.vertex_count(), 0);
    std::vector<std::uint32_t> id_of_root(g.vertex_count(), FiniteGraph::npos);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        auto root = uf.find(v);
        if (id_of_root[root] == FiniteGraph::npos) {
            id_of_root[root] = static_cast<std::uint32_t>(lab.count++);
            lab.sizes.push_back(0);
        }
        lab.label[v] = id_of_root[root];
        ++lab.sizes[lab.label[v]];
    }
    return lab;
}

CrossingSpec rect_crossing(const FiniteGraph& g, const PlanarRect& r, CrossDir dir,
                           std::uint8_t layer) {
    CrossingSpec spec;
    auto push = [&](std::vector<std::uint32_t>& side, std::int64_t x, std::int64_t y) {
        auto i = g.find_vertex({x, y, layer});
        if (i != FiniteGraph::npos) side.push_back(i);
    };
    if (dir == CrossDir::Horizontal) {
        for (auto y = r.v.lo; y <= r.v.hi; ++y) {
            push(spec.side_a, r.h.lo, y);
            push(spec.side_b, r.h.hi, y);
        }
    } else {
        for (auto x = r.h.lo; x <= r.h.hi; ++x) {
            push(spec.side_a, x, r.v.lo);
            push(spec.side_b, x, r.v.hi);
        }
    }
    spec.allowed.assign(g.vertex_count(), 0);
    const auto& verts = g.vertices();
    for (std::uint32_t i = 0; i < verts.size(); ++i)
        if (verts[i].layer == layer && r.contains(verts[i].x, verts[i].y))
            spec.allowed[i] = 1;
    return spec;
}

CrossingSpec folded_crossing(const FoldedSlice& fs, CrossDir dir) {
    CrossingSpec spec;
    const auto& r = fs.source.rect;
    auto push = [&](std::vector<std::uint32_t>& side, std::int64_t x, std::int64_t y) {
        auto layer = static_cast<std::uint8_t>(fs.indicator(x, y));
        auto i = fs.graph.find_vertex({x, y, layer});
        if (i != FiniteGraph::npos) side.push_back(i);
    };
    if (dir == CrossDir::Horizontal) {
        for (auto y = r.v.lo; y <= r.v.hi; ++y) {
            push(spec.side_a, r.h.lo, y);
            push(spec.side_b, r.h.hi, y);
        }
    } else {
        for (auto x = r.h.lo; x <= r.h.hi; ++x) {
            push(spec.side_a, x, r.v.lo);
            push(spec.side_b, x, r.v.hi);
        }
    }
    // The whole folded graph, detour sites included, carries the crossing.
    return spec;
}

bool crossing_event(const CrossingSpec& spec, const BondConfig& config) {
    const auto& g = *config.graph;
    auto allowed = [&](std::uint32_t v) {
        return spec.allowed.empty() || spec.allowed[v];
    };
    std::vector<std::uint8_t> target(g.vertex_count(), 0);
    for (auto v : spec.side_b) target[v] = 1;

    auto adj = edge_adjacency(g);
    std::vector<std::uint8_t> seen(g.vertex_count(), 0);
    std::queue<std::uint32_t> q;
    for (auto v : spec.side_a)
        if (allowed(v) && !seen[v]) {
            if (target[v]) return true;
            seen[v] = 1;
            q.push(v);
        }
    while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (auto [w, e] : adj[v]) {
            if (!config.open[e] || seen[w] || !allowed(w)) continue;
            if (target[w]) return true;
            seen[w] = 1;
            q.push(w);
        }
    }
    return false;
}

Estimate estimate_crossing(const FiniteGraph& g, const CrossingSpec& spec, double p,
                           std::size_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("estimate_crossing: trials >= 1");
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto config = sample_config(g, p, derive_seed(seed, stream::trial, t));
        if (crossing_event(spec, config)) ++hits;
    }
    return make_estimate(hits, trials);
}

std::vector<Estimate> estimate_crossing_curve(const FiniteGraph& g,
                                              const CrossingSpec& spec,
                                              const std::vector<double>& ps,
                                              std::size_t trials, std::uint64_t seed) {
    std::vector<std::size_t> hits(ps.size(), 0);
    for (std::size_t t = 0; t < trials; ++t) {
        auto u = sample_uniforms(g, derive_seed(seed, stream::trial, t));
        for (std::size_t i = 0; i < ps.size(); ++i) {
            auto config = config_from_uniforms(g, u, ps[i]);
            if (crossing_event(spec, config)) ++hits[i];
        }
    }
    std::vector<Estimate> out;
    out.reserve(ps.size());
    for (auto h : hits) out.push_back(make_estimate(h, trials));
    return out;
}

double crossing_probability_exact(const FiniteGraph& g, const CrossingSpec& spec,
                                  double p) {
    auto E = g.edge_count();
    if (E > 20)
        throw std::invalid_argument("crossing_probability_exact: needs at most 20 edges");
    BondConfig config;
    config.graph = &g;
    config.p = p;
    config.open.assign(E, 0);
    double total = 0.0;
    for (std::uint64_t mask = 0; mask < (1ull << E); ++mask) {
        int k = 0;
        for (std::size_t e = 0; e < E; ++e) {
            config.open[e] = (mask >> e) & 1;
            k += config.open[e];
        }
        if (!crossing_event(spec, config)) continue;
        total += std::pow(p, k) * std::pow(1.0 - p, static_cast<int>(E) - k);
    }
    return total;
}

Road make_road(const std::vector<PlanarRect>& members) {
    if (members.empty()) throw std::invalid_argument("make_road: no members");
    Road road;
    std::vector<FiniteGraph> parts;
    parts.reserve(members.size());
    for (const auto& r : members) {
        if (r.orientation == Orientation::Untagged)
            throw std::invalid_argument("make_road: members must be tagged");
        parts.push_back(induced_rect_graph(r));
    }
    road.graph = graph_union(parts);
    for (const auto& r : members)
        road.specs.push_back(rect_crossing(
            road.graph, r,
            r.orientation == Orientation::Vertical ? CrossDir::Vertical
                                                   : CrossDir::Horizontal));
    return road;
}

RoadSurvival road_survival(const Road& road, double p, std::size_t trials,
                           std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("road_survival: trials >= 1");
    RoadSurvival rs;
    std::size_t joint_hits = 0;
    std::vector<std::size_t> member_hits(road.specs.size(), 0);
    CrossingSpec span;
    span.side_a = road.specs.front().side_a;
    span.side_b = road.specs.back().side_b;

    for (std::size_t t = 0; t < trials; ++t) {
        auto config = sample_config(road.graph, p, derive_seed(seed, stream::trial, t));
        bool all = true;
        for (std::size_t i = 0; i < road.specs.size(); ++i) {
            bool hit = crossing_event(road.specs[i], config);
            if (hit) ++member_hits[i];
            all = all && hit;
        }
        if (!all) continue;
        ++joint_hits;
        if (!crossing_event(span, config)) ++rs.span_failures;
    }
    rs.joint = make_estimate(joint_hits, trials);
    for (auto h : member_hits) rs.marginals.push_back(make_estimate(h, trials));
    return rs;
}

SpanSpec default_span(const SlabAssembly& assembly) {
    const auto& verts = assembly.graph.vertices();
    if (verts.empty()) throw std::invalid_argument("default_span: empty assembly");
    std::int64_t xlo = verts[0].x, xhi = verts[0].x;
    std::int64_t ylo = verts[0].y, yhi = verts[0].y;
    for (const auto& v : verts) {
        xlo = std::min(xlo, v.x);
        xhi = std::max(xhi, v.x);
        ylo = std::min(ylo, v.y);
        yhi = std::max(yhi, v.y);
    }
    SpanSpec s;
    s.arena = PlanarRect(Block(xlo, xhi), Block(ylo, yhi));
    s.mode = SpanMode::Either;
    return s;
}

namespace {

// Spanning component ids for one configuration, restricted to the arena.
std::uint32_t census_one(const SlabAssembly& assembly, const BondConfig& config,
                         const SpanSpec& span, const std::vector<std::uint8_t>& inside) {
    const auto& g = assembly.graph;
    const auto& verts = g.vertices();
    UnionFind uf(g.vertex_count());
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (config.open[e] && inside[edges[e].first] && inside[edges[e].second])
            uf.unite(edges[e].first, edges[e].second);

    // Per root: which arena sides its cluster touches.
    std::vector<std::uint8_t> touch(g.vertex_count(), 0);
    for (std::uint32_t v = 0; v < verts.size(); ++v) {
        if (!inside[v]) continue;
        std::uint8_t bits = 0;
        if (verts[v].x == span.arena.h.lo) bits |= 1;
        if (verts[v].x == span.arena.h.hi) bits |= 2;
        if (verts[v].y == span.arena.v.lo) bits |= 4;
        if (verts[v].y == span.arena.v.hi) bits |= 8;
        if (bits) touch[uf.find(v)] |= bits;
    }
    std::unordered_set<std::uint32_t> spanning_components;
    for (std::uint32_t v = 0; v < verts.size(); ++v) {
        if (!inside[v] || uf.find(v) != v) continue;
        bool horiz = (touch[v] & 1) && (touch[v] & 2);
        bool vert = (touch[v] & 4) && (touch[v] & 8);
        bool spans = span.mode == SpanMode::Horizontal  ? horiz
                     : span.mode == SpanMode::Vertical ? vert
                                                       : (horiz || vert);
        if (spans) spanning_components.insert(assembly.vertex_component[v]);
    }
    return static_cast<std::uint32_t>(spanning_components.size());
}

std::vector<std::uint8_t> arena_mask(const SlabAssembly& assembly,
                                     const SpanSpec& span) {
    const auto& verts = assembly.graph.vertices();
    std::vector<std::uint8_t> inside(verts.size(), 0);
    for (std::uint32_t v = 0; v < verts.size(); ++v)
        if (span.arena.contains(verts[v].x, verts[v].y)) inside[v] = 1;
    return inside;
}

}  // namespace

CensusResult spanning_census(const SlabAssembly& assembly, double p,
                             std::size_t trials, std::uint64_t seed,
                             const SpanSpec& span) {
    if (trials < 1) throw std::invalid_argument("spanning_census: trials >= 1");
    auto inside = arena_mask(assembly, span);
    CensusResult r;
    r.counts.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        auto config =
            sample_config(assembly.graph, p, derive_seed(seed, stream::trial, t));
        r.counts.push_back(census_one(assembly, config, span, inside));
    }
    summarize(r);
    return r;
}

CensusResult spanning_census(const SlabAssembly& assembly, double p,
                             std::size_t trials, std::uint64_t seed) {
    return spanning_census(assembly, p, trials, seed, default_span(assembly));
}

std::vector<CensusResult> spanning_census_curve(const SlabAssembly& assembly,
                                                const std::vector<double>& ps,
                                                std::size_t trials,
                                                std::uint64_t seed,
                                                const SpanSpec& span) {
    if (trials < 1) throw std::invalid_argument("spanning_census_curve: trials >= 1");
    auto inside = arena_mask(assembly, span);
    std::vector<CensusResult> out(ps.size());
    for (auto& r : out) r.counts.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        auto u = sample_uniforms(assembly.graph, derive_seed(seed, stream::trial, t));
        for (std::size_t i = 0; i < ps.size(); ++i) {
            auto config = config_from_uniforms(assembly.graph, u, ps[i]);
            out[i].counts.push_back(census_one(assembly, config, span, inside));
        }
    }
    for (auto& r : out) summarize(r);
    return out;
}

FkgResult fkg_check(const FiniteGraph& g, const EventFn& a, const EventFn& b,
                    double p) {
    auto E = g.edge_count();
    if (E > 20) throw std::invalid_argument("fkg_check: needs at most 20 edges");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("fkg_check: p must lie in [0,1]");

    BondConfig config;
    config.graph = &g;
    config.p = p;
    config.open.assign(E, 0);
    auto n_masks = 1ull << E;
    std::vector<std::uint8_t> va(n_masks), vb(n_masks);
    for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
        for (std::size_t e = 0; e < E; ++e) config.open[e] = (mask >> e) & 1;
        va[mask] = a(config) ? 1 : 0;
        vb[mask] = b(config) ? 1 : 0;
    }
    // Opening one further edge must never destroy the event.
    for (std::uint64_t mask = 0; mask < n_masks; ++mask)
        for (std::size_t e = 0; e < E; ++e) {
            if ((mask >> e) & 1) continue;
            auto up = mask | (1ull << e);
            if (va[mask] && !va[up])
                throw std::invalid_argument("fkg_check: first event is not increasing");
            if (vb[mask] && !vb[up])
                throw std::invalid_argument("fkg_check: second event is not increasing");
        }

    FkgResult r;
    for (std::uint64_t mask = 0; mask < n_masks; ++mask) {
        if (!va[mask] && !vb[mask]) continue;
        int k = 0;
        for (std::size_t e = 0; e < E; ++e) k += (mask >> e) & 1;
        double w = std::pow(p, k) * std::pow(1.0 - p, static_cast<int>(E) - k);
        if (va[mask]) r.p_a += w;
        if (vb[mask]) r.p_b += w;
        if (va[mask] && vb[mask]) r.p_joint += w;
    }
    r.pass = r.p_joint >= r.p_a * r.p_b - 1e-12;
    return r;
}

}  // namespace slabperc
