#pragma once
#include <cstdint>
#include <iosfwd>
#include <unordered_set>
#include <vector>

#include "slabperc/geometry.hpp"
#include "slabperc/slabgraph.hpp"
#include "slabperc/tree.hpp"

namespace slabperc {

struct Slice {
    PlanarRect rect;
    std::uint32_t owner = 0;  // catalog entry id
    std::uint32_t slot = 0;   // position within the owner's bag
};

// Split a block into m runs whose lengths differ by at most one, uniformly
// over the placements of the longer runs. m must not exceed the length.
std::vector<Block> balanced_cut(const Block& b, std::uint32_t m, std::uint64_t seed);

// Cut a tagged rectangle into m slices along its own orientation: vertical
// rectangles into full-height strips, horizontal ones into full-width bands.
// m = 1 returns the rectangle itself. For m >= 2 every slice must keep a
// side of at least 3, so 3*m must fit into the shorter side.
std::vector<Slice> cut_rect(const PlanarRect& r, std::uint32_t m, std::uint64_t seed,
                            std::uint32_t owner = 0);

// A slice pressed into the two-layer slab. Sites keep layer 1 except on the
// overlap with the parent rectangle outside the designated image, which dips
// to layer 0; the boundary columns carry both layers so the graph stays
// connected.
struct FoldedSlice {
    Slice source;
    bool has_overlap = false;
    PlanarRect overlap;  // source meet parent rectangle, valid iff has_overlap
    FiniteGraph graph;
    std::vector<std::pair<std::int64_t, std::int64_t>> top_boundary;
    std::vector<std::pair<std::int64_t, std::int64_t>> bottom_boundary;
    std::unordered_set<std::uint64_t> zero_keys;  // packed planar sites with I=0

    // Indicator over the source rectangle: 0 exactly on overlap minus the
    // designated image.
    bool indicator(std::int64_t x, std::int64_t y) const;
};

// Plain layer-1 lift, used for slices whose chain ends at the frontier.
FoldedSlice lift_slice(const Slice& s);

// Fold s against the rectangle it feeds into. beta_slice is the designated
// image inside next_rect; sites of s over next_rect outside beta_slice dip
// to layer 0, and the dip is fenced with two-layer boundary columns. An
// empty overlap degenerates to the layer-1 lift.
FoldedSlice fold_slice(const Slice& s, const PlanarRect& next_rect,
                       const Slice& beta_slice);

struct SlabAssembly {
    std::vector<Slice> slices;        // indexed by forest slot id
    std::vector<FoldedSlice> folded;  // parallel to slices
    AbstractForest forest;            // beta links between slot ids
    FiniteGraph graph;
    std::vector<std::uint32_t> vertex_component;          // per graph vertex
    std::vector<std::vector<std::uint32_t>> vertex_slices;  // per graph vertex
    std::uint32_t component_count = 0;
};

// Cut every tree rectangle into its bag of slices, fold each slice against
// its parent's designated image, and unite the folded graphs.
SlabAssembly build_assembly(const RectCatalog& cat, const RectTree& tree,
                          const std::vector<std::uint32_t>& m_by_j,
                          std::uint64_t seed);

struct OverlapViolation {
    std::uint32_t slice_a = 0;
    std::uint32_t slice_b = 0;
    std::vector<SlabVertex> offending;  // capped sample of bad vertices
    std::string detail;
};

struct OverlapAudit {
    std::size_t pairs_checked = 0;
    std::vector<OverlapViolation> violations;
    bool passed() const { return violations.empty(); }
};

// Certify the disjointness contract: two folded slices share vertices
// exactly if one is the designated image of the other, and then the shared
// set is the layer-1 lift of the rectangle intersection. Also re-checks that
// no fold left its planar footprint.
OverlapAudit overlap_audit(const SlabAssembly& assembly);

// Line-oriented dump: one record per vertex (coordinates, layer, component,
// owning slices) and one per edge.
void dump_assembly(const SlabAssembly& assembly, std::ostream& os);

}  // namespace slabperc
