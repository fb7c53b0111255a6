#pragma once
#include <cstdint>
#include <vector>

#include "slabperc/geometry.hpp"
#include "slabperc/gridgen.hpp"

namespace slabperc {

// Node of the rectangle intersection forest, parallel to catalog entries.
// Clipped entries stay out of the forest but keep a node slot so entry ids
// index directly.
struct TreeNode {
    bool in_tree = false;
    int j = 0;
    Orientation orientation = Orientation::Untagged;
    std::int32_t next = -1;  // entry id of the parent, -1 at the frontier
    bool frontier = false;
    std::vector<std::uint32_t> children;
    std::vector<std::uint32_t> neighbors;  // intersecting in-tree entries
};

struct RectTree {
    std::vector<TreeNode> nodes;
    std::vector<std::uint32_t> frontier;  // in-tree entries with no parent
    std::size_t edge_count = 0;
};

// Intersection structure of an audited catalog. Every vertical meets exactly
// the horizontal of its own window plus the horizontals that attach to it
// from below; every horizontal meets its window's verticals plus at most one
// next-level vertical, the one whose strip its extension crosses. A vertical
// with zero or several same-index horizontal partners, a horizontal with
// several next-level partners, or an intersection outside the parent/child
// pattern is a structural defect and throws.
RectTree build_overlap_tree(const RectCatalog& cat);

struct Ray {
    std::vector<std::uint32_t> entries;
    bool truncated = false;  // final entry is frontier, the walk cannot extend
};

// Follow parents from start, collecting at most maxlen entries.
// Orientations alternate and j increases by one per step.
Ray ray(const RectTree& tree, std::uint32_t start, std::size_t maxlen);

// Bags of slots over the forest nodes with one injective upward map per bag.
// Slots are numbered globally; bag k of entry e is [bag_base[e], +bag_size[e]).
struct AbstractForest {
    std::vector<std::uint64_t> bag_base;
    std::vector<std::uint32_t> bag_size;   // zero for entries outside the tree
    std::vector<std::int64_t> beta;        // per slot; -1 on frontier bags
    std::vector<std::uint32_t> component;  // per slot
    std::uint32_t component_count = 0;

    std::uint64_t slot_count() const { return beta.size(); }
    std::uint64_t slot(std::uint32_t entry, std::uint32_t k) const {
        return bag_base[entry] + k;
    }
};

// Sample the upward maps uniformly among injections, slot by slot without
// replacement, one substream per entry. bag_sizes is per entry id; sizes of
// entries outside the tree are ignored. A bag larger than its parent's has
// no injection and throws naming the entry.
AbstractForest build_abstract_forest(const RectTree& tree,
                                     const std::vector<std::uint32_t>& bag_sizes,
                                     std::uint64_t seed);

// Expand a per-j multiplicity plan into per-entry bag sizes.
std::vector<std::uint32_t> bag_sizes_from_plan(const RectTree& tree,
                                               const std::vector<std::uint32_t>& m_by_j);

}  // namespace slabperc
