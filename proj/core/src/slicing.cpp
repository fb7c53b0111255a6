#include "slabperc/slicing.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "slabperc/rng.hpp"

namespace slabperc {

namespace {

std::uint64_t planar_key(std::int64_t x, std::int64_t y) {
    return pack_vertex({x, y, 0});
}

}  // namespace

std::vector<Block> balanced_cut(const Block& b, std::uint32_t m, std::uint64_t seed) {
    if (m == 0) throw std::invalid_argument("balanced_cut: m must be positive");
    std::int64_t n = b.length();
    if (static_cast<std::int64_t>(m) > n) {
        std::ostringstream os;
        os << "balanced_cut: cannot split " << n << " sites into " << m << " runs";
        throw std::invalid_argument(os.str());
    }
    std::int64_t q = n / m, r = n % m;
    // Choose uniformly which r of the m runs are the longer ones.
    std::vector<char> longer(m, 0);
    std::vector<std::uint32_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0u);
    std::mt19937_64 gen(seed);
    for (std::int64_t k = 0; k < r; ++k) {
        auto pick = k + static_cast<std::int64_t>(uniform_below(gen, m - k));
        std::swap(idx[k], idx[pick]);
        longer[idx[k]] = 1;
    }
    std::vector<Block> out;
    out.reserve(m);
    std::int64_t lo = b.lo;
    for (std::uint32_t k = 0; k < m; ++k) {
        std::int64_t len = q + (longer[k] ? 1 : 0);
        out.emplace_back(lo, lo + len - 1);
        lo += len;
    }
    return out;
}

std::vector<Slice> cut_rect(const PlanarRect& r, std::uint32_t m, std::uint64_t seed,
                            std::uint32_t owner) {
    if (r.orientation == Orientation::Untagged)
        throw std::invalid_argument("cut_rect: rectangle must be tagged");
    if (m == 0) throw std::invalid_argument("cut_rect: m must be positive");
    std::vector<Slice> out;
    if (m == 1) {
        out.push_back({r, owner, 0});
        return out;
    }
    if (3 * static_cast<std::int64_t>(m) > r.shorter_side()) {
        std::ostringstream os;
        os << "cut_rect: " << m << " slices of " << to_string(r)
           << " would drop a side below 3";
        throw std::invalid_argument(os.str());
    }
    if (r.orientation == Orientation::Vertical) {
        auto cols = balanced_cut(r.h, m, seed);
        for (std::uint32_t k = 0; k < m; ++k)
            out.push_back({PlanarRect(cols[k], r.v, r.orientation), owner, k});
    } else {
        auto rows = balanced_cut(r.v, m, seed);
        for (std::uint32_t k = 0; k < m; ++k)
            out.push_back({PlanarRect(r.h, rows[k], r.orientation), owner, k});
    }
    return out;
}

bool FoldedSlice::indicator(std::int64_t x, std::int64_t y) const {
    return zero_keys.find(planar_key(x, y)) == zero_keys.end();
}

FoldedSlice lift_slice(const Slice& s) {
    FoldedSlice f;
    f.source = s;
    std::vector<SlabVertex> sites;
    sites.reserve(static_cast<std::size_t>(s.rect.area()));
    for (std::int64_t y = s.rect.v.lo; y <= s.rect.v.hi; ++y)
        for (std::int64_t x = s.rect.h.lo; x <= s.rect.h.hi; ++x)
            sites.push_back({x, y, 1});
    f.graph = induced_site_graph(sites);
    return f;
}

FoldedSlice fold_slice(const Slice& s, const PlanarRect& next_rect,
                       const Slice& beta_slice) {
    if (!next_rect.contains(beta_slice.rect)) {
        std::ostringstream os;
        os << "fold_slice: designated image " << to_string(beta_slice.rect)
           << " leaves " << to_string(next_rect);
        throw std::invalid_argument(os.str());
    }
    if (!s.rect.intersects(next_rect)) return lift_slice(s);

    FoldedSlice f;
    f.source = s;
    f.has_overlap = true;
    f.overlap = rect_meet(s.rect, next_rect);
    const auto& sr = s.rect;
    for (std::int64_t y = f.overlap.v.lo; y <= f.overlap.v.hi; ++y)
        for (std::int64_t x = f.overlap.h.lo; x <= f.overlap.h.hi; ++x)
            if (!beta_slice.rect.contains(x, y)) f.zero_keys.insert(planar_key(x, y));
    if (f.zero_keys.empty()) return lift_slice(s);

    // Boundary sites: indicator flips across a lattice edge inside s.
    auto flips = [&](std::int64_t x, std::int64_t y, bool val) {
        static const std::int64_t dx[4] = {1, -1, 0, 0};
        static const std::int64_t dy[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            std::int64_t nx = x + dx[k], ny = y + dy[k];
            if (sr.contains(nx, ny) && f.indicator(nx, ny) != val) return true;
        }
        return false;
    };
    std::vector<SlabVertex> image, columns, floor;
    for (std::int64_t y = sr.v.lo; y <= sr.v.hi; ++y) {
        for (std::int64_t x = sr.h.lo; x <= sr.h.hi; ++x) {
            bool one = f.indicator(x, y);
            image.push_back({x, y, static_cast<std::uint8_t>(one ? 1 : 0)});
            if (one && flips(x, y, true)) {
                f.top_boundary.emplace_back(x, y);
                columns.push_back({x, y, 0});
                columns.push_back({x, y, 1});
                floor.push_back({x, y, 0});
            } else if (!one && flips(x, y, false)) {
                f.bottom_boundary.emplace_back(x, y);
                floor.push_back({x, y, 0});
            }
        }
    }
    f.graph = graph_union({induced_site_graph(image), induced_site_graph(columns),
                           induced_site_graph(floor)});
    return f;
}

SlabAssembly build_assembly(const RectCatalog& cat, const RectTree& tree,
                          const std::vector<std::uint32_t>& m_by_j,
                          std::uint64_t seed) {
    SlabAssembly a;
    auto sizes = bag_sizes_from_plan(tree, m_by_j);
    a.forest = build_abstract_forest(tree, sizes, seed);
    a.slices.resize(a.forest.slot_count());
    for (std::uint32_t e = 0; e < tree.nodes.size(); ++e) {
        if (!tree.nodes[e].in_tree) continue;
        auto cut = cut_rect(cat.entries[e].rect, a.forest.bag_size[e],
                            derive_seed(seed, stream::cut, e), e);
        for (std::uint32_t k = 0; k < cut.size(); ++k)
            a.slices[a.forest.slot(e, k)] = cut[k];
    }
    a.folded.resize(a.slices.size());
    for (std::uint64_t sid = 0; sid < a.slices.size(); ++sid) {
        const auto& s = a.slices[sid];
        auto target = a.forest.beta[sid];
        try {
            if (target < 0) {
                a.folded[sid] = lift_slice(s);
            } else {
                auto parent_entry = static_cast<std::uint32_t>(tree.nodes[s.owner].next);
                a.folded[sid] = fold_slice(s, cat.entries[parent_entry].rect,
                                           a.slices[static_cast<std::uint64_t>(target)]);
            }
        } catch (const std::exception& err) {
            std::ostringstream os;
            os << "build_assembly: slice " << sid << ": " << err.what();
            throw std::runtime_error(os.str());
        }
    }
    std::vector<FiniteGraph> parts;
    parts.reserve(a.folded.size());
    for (const auto& f : a.folded) parts.push_back(f.graph);
    a.graph = graph_union(parts);
    a.vertex_component = a.graph.component_labels();
    a.component_count = a.graph.component_count();
    a.vertex_slices.resize(a.graph.vertex_count());
    for (std::uint64_t sid = 0; sid < a.folded.size(); ++sid)
        for (const auto& v : a.folded[sid].graph.vertices()) {
            auto idx = a.graph.find_vertex(v);
            a.vertex_slices[idx].push_back(static_cast<std::uint32_t>(sid));
        }
    return a;
}

OverlapAudit overlap_audit(const SlabAssembly& a) {
    OverlapAudit audit;
    constexpr std::size_t kMaxOffenders = 16;
    // Fold locality first: a slice leaving its footprint would poison the
    // pairwise logic below.
    for (std::uint32_t sid = 0; sid < a.folded.size(); ++sid) {
        OverlapViolation v;
        for (const auto& vert : a.folded[sid].graph.vertices())
            if (!a.folded[sid].source.rect.contains(vert.x, vert.y)) {
                if (v.offending.size() < kMaxOffenders) v.offending.push_back(vert);
            }
        if (!v.offending.empty()) {
            v.slice_a = v.slice_b = sid;
            v.detail = "fold left its planar footprint";
            audit.violations.push_back(std::move(v));
        }
    }
    auto related = [&](std::uint32_t x, std::uint32_t y) {
        return a.forest.beta[x] == static_cast<std::int64_t>(y) ||
               a.forest.beta[y] == static_cast<std::int64_t>(x);
    };
    for (std::uint32_t sa = 0; sa < a.folded.size(); ++sa) {
        for (std::uint32_t sb = sa + 1; sb < a.folded.size(); ++sb) {
            const auto& ra = a.slices[sa].rect;
            const auto& rb = a.slices[sb].rect;
            if (!ra.intersects(rb)) continue;
            ++audit.pairs_checked;
            const auto& ga = a.folded[sa].graph;
            const auto& gb = a.folded[sb].graph;
            const auto& small = ga.vertex_count() <= gb.vertex_count() ? ga : gb;
            const auto& big = ga.vertex_count() <= gb.vertex_count() ? gb : ga;
            OverlapViolation v;
            v.slice_a = sa;
            v.slice_b = sb;
            if (related(sa, sb)) {
                // Shared set must be exactly the layer-1 lift of the planar
                // intersection.
                auto meet = rect_meet(ra, rb);
                for (const auto& vert : small.vertices()) {
                    bool shared = big.has_vertex(vert);
                    bool expected = vert.layer == 1 && meet.contains(vert.x, vert.y);
                    if (shared != expected && v.offending.size() < kMaxOffenders)
                        v.offending.push_back(vert);
                }
                if (!v.offending.empty())
                    v.detail = "designated overlap is not the layer-1 lift";
            } else {
                for (const auto& vert : small.vertices())
                    if (big.has_vertex(vert)) {
                        if (v.offending.size() < kMaxOffenders) v.offending.push_back(vert);
                    }
                if (!v.offending.empty()) v.detail = "unrelated slices share vertices";
            }
            if (!v.offending.empty()) audit.violations.push_back(std::move(v));
        }
    }
    return audit;
}

void dump_assembly(const SlabAssembly& a, std::ostream& os) {
    os << "# v x y layer component slices\n";
    const auto& verts = a.graph.vertices();
    for (std::uint32_t i = 0; i < verts.size(); ++i) {
        os << "v " << verts[i].x << ' ' << verts[i].y << ' ' << int(verts[i].layer)
           << ' ' << a.vertex_component[i] << ' ';
        const auto& owners = a.vertex_slices[i];
        for (std::size_t k = 0; k < owners.size(); ++k)
            os << (k ? "," : "") << owners[k];
        os << '\n';
    }
    os << "# e x1 y1 l1 x2 y2 l2\n";
    for (const auto& [ia, ib] : a.graph.edges()) {
        const auto& p = verts[ia];
        const auto& q = verts[ib];
        os << "e " << p.x << ' ' << p.y << ' ' << int(p.layer) << ' ' << q.x << ' '
           << q.y << ' ' << int(q.layer) << '\n';
    }
}

}  // namespace slabperc
