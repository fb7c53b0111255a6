#include "slabperc/tree.hpp"

#include <numeric>
#include <sstream>

#include "slabperc/rng.hpp"

namespace slabperc {

namespace {

[[noreturn]] void structural_error(std::uint32_t entry, const char* what) {
    std::ostringstream os;
    os << "build_overlap_tree: entry " << entry << " " << what;
    throw std::runtime_error(os.str());
}

}  // namespace

RectTree build_overlap_tree(const RectCatalog& cat) {
    RectTree tree;
    const auto& es = cat.entries;
    tree.nodes.resize(es.size());
    for (std::uint32_t e = 0; e < es.size(); ++e) {
        auto& n = tree.nodes[e];
        n.in_tree = !es[e].clipped;
        n.j = es[e].j;
        n.orientation = es[e].rect.orientation;
    }
    for (std::uint32_t a = 0; a < es.size(); ++a) {
        if (!tree.nodes[a].in_tree) continue;
        for (std::uint32_t b = a + 1; b < es.size(); ++b) {
            if (!tree.nodes[b].in_tree) continue;
            if (!es[a].rect.intersects(es[b].rect)) continue;
            tree.nodes[a].neighbors.push_back(b);
            tree.nodes[b].neighbors.push_back(a);
            ++tree.edge_count;
        }
    }
    for (std::uint32_t e = 0; e < es.size(); ++e) {
        auto& n = tree.nodes[e];
        if (!n.in_tree) continue;
        std::int32_t parent = -1;
        int candidates = 0;
        if (n.orientation == Orientation::Vertical) {
            for (auto nb : n.neighbors) {
                if (tree.nodes[nb].orientation == Orientation::Horizontal &&
                    es[nb].index_i == es[e].index_i) {
                    parent = static_cast<std::int32_t>(nb);
                    ++candidates;
                }
            }
            if (candidates > 1) structural_error(e, "has several same-index horizontals");
            if (candidates == 0) {
                // The partner exists in every catalog; if it was clipped away
                // the vertical ends the forest here, otherwise the catalog is
                // corrupt.
                bool clipped_partner = false;
                for (const auto& other : es)
                    if (other.window_id == es[e].window_id && other.clipped &&
                        other.rect.orientation == Orientation::Horizontal)
                        clipped_partner = true;
                if (!clipped_partner) structural_error(e, "has no horizontal partner");
            }
        } else {
            for (auto nb : n.neighbors) {
                if (tree.nodes[nb].orientation == Orientation::Vertical &&
                    es[nb].index_i == es[e].index_i + 1) {
                    parent = static_cast<std::int32_t>(nb);
                    ++candidates;
                }
            }
            if (candidates > 1) structural_error(e, "has several next-level verticals");
        }
        n.next = candidates == 1 ? parent : -1;
        n.frontier = n.next < 0;
        if (n.frontier)
            tree.frontier.push_back(e);
        else
            tree.nodes[parent].children.push_back(e);
    }
    // Any intersection that is not a parent/child link would make a cycle.
    for (std::uint32_t e = 0; e < es.size(); ++e) {
        for (auto nb : tree.nodes[e].neighbors) {
            if (nb < e) continue;
            if (tree.nodes[e].next != static_cast<std::int32_t>(nb) &&
                tree.nodes[nb].next != static_cast<std::int32_t>(e))
                structural_error(e, "meets a rectangle outside the joining pattern");
        }
    }
    return tree;
}

Ray ray(const RectTree& tree, std::uint32_t start, std::size_t maxlen) {
    if (start >= tree.nodes.size() || !tree.nodes[start].in_tree) {
        std::ostringstream os;
        os << "ray: entry " << start << " is not in the tree";
        throw std::invalid_argument(os.str());
    }
    if (maxlen == 0) throw std::invalid_argument("ray: maxlen must be positive");
    Ray r;
    std::uint32_t cur = start;
    for (;;) {
        r.entries.push_back(cur);
        if (r.entries.size() == maxlen || tree.nodes[cur].next < 0) break;
        cur = static_cast<std::uint32_t>(tree.nodes[cur].next);
    }
    r.truncated = tree.nodes[r.entries.back()].frontier;
    return r;
}

AbstractForest build_abstract_forest(const RectTree& tree,
                                     const std::vector<std::uint32_t>& bag_sizes,
                                     std::uint64_t seed) {
    if (bag_sizes.size() != tree.nodes.size())
        throw std::invalid_argument("build_abstract_forest: bag_sizes size mismatch");
    AbstractForest f;
    auto n = tree.nodes.size();
    f.bag_base.resize(n, 0);
    f.bag_size.resize(n, 0);
    std::uint64_t total = 0;
    for (std::uint32_t e = 0; e < n; ++e) {
        if (!tree.nodes[e].in_tree) continue;
        if (bag_sizes[e] == 0) {
            std::ostringstream os;
            os << "build_abstract_forest: entry " << e << " has an empty bag";
            throw std::invalid_argument(os.str());
        }
        f.bag_base[e] = total;
        f.bag_size[e] = bag_sizes[e];
        total += bag_sizes[e];
    }
    f.beta.assign(total, -1);
    for (std::uint32_t e = 0; e < n; ++e) {
        const auto& node = tree.nodes[e];
        if (!node.in_tree || node.frontier) continue;
        auto parent = static_cast<std::uint32_t>(node.next);
        std::uint32_t mc = f.bag_size[e], mp = f.bag_size[parent];
        if (mc > mp) {
            std::ostringstream os;
            os << "build_abstract_forest: entry " << e << " bag of " << mc
               << " cannot inject into parent bag of " << mp;
            throw std::invalid_argument(os.str());
        }
        // Uniform injection: draw targets without replacement.
        auto gen = substream(seed, stream::beta, e);
        std::vector<std::uint32_t> targets(mp);
        std::iota(targets.begin(), targets.end(), 0u);
        for (std::uint32_t k = 0; k < mc; ++k) {
            auto pick = k + static_cast<std::uint32_t>(uniform_below(gen, mp - k));
            std::swap(targets[k], targets[pick]);
            f.beta[f.slot(e, k)] =
                static_cast<std::int64_t>(f.slot(parent, targets[k]));
        }
    }
    // Label every slot by the frontier slot its chain reaches.
    f.component.assign(total, 0);
    std::vector<std::int64_t> root_label(total, -1);
    std::uint32_t next_label = 0;
    std::vector<std::uint64_t> path;
    for (std::uint64_t s = 0; s < total; ++s) {
        std::uint64_t cur = s;
        path.clear();
        while (f.beta[cur] >= 0 && root_label[cur] < 0) {
            path.push_back(cur);
            cur = static_cast<std::uint64_t>(f.beta[cur]);
        }
        if (root_label[cur] < 0) root_label[cur] = next_label++;
        for (auto p : path) root_label[p] = root_label[cur];
        f.component[s] = static_cast<std::uint32_t>(root_label[s]);
    }
    f.component_count = next_label;
    return f;
}

std::vector<std::uint32_t> bag_sizes_from_plan(const RectTree& tree,
                                               const std::vector<std::uint32_t>& m_by_j) {
    std::vector<std::uint32_t> sizes(tree.nodes.size(), 0);
    for (std::uint32_t e = 0; e < tree.nodes.size(); ++e) {
        const auto& n = tree.nodes[e];
        if (!n.in_tree) continue;
        if (n.j < 0 || static_cast<std::size_t>(n.j) >= m_by_j.size()) {
            std::ostringstream os;
            os << "bag_sizes_from_plan: no multiplicity for index " << n.j
               << " (entry " << e << ")";
            throw std::invalid_argument(os.str());
        }
        sizes[e] = m_by_j[n.j];
    }
    return sizes;
}

}  // namespace slabperc
