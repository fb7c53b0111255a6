#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "slabperc/geometry.hpp"

namespace slabperc {

// Seed data for a nested grid family: base strip width l0, base square side
// d0, and per-level subdivision counts L[0..K-1] (level k+1 uses L[k]).
struct ParamSeed {
    std::int64_t l0 = 2;
    std::int64_t d0 = 3;
    std::vector<std::int64_t> L;
    std::uint64_t seed = 0;
};

// Strip width and square side of one level. Level 0 is the innermost grid.
struct LevelParams {
    std::int64_t l = 0;
    std::int64_t d = 0;
    std::int64_t period() const { return l + d; }
};

// Runs the size recursion l_{k+1} = d_k, d_{k+1} = L*l_k + (L-1)*d_k and
// returns levels 0..K. Throws on invalid input or int64 overflow, naming
// the offending level.
std::vector<LevelParams> derive_params(const ParamSeed& seed);

// One sampled grid: level sizes plus the absolute offset of its strip
// pattern. Columns x with (x-ox) mod (l+d) in [0,l) are vertical strip
// columns, and likewise rows; sites in neither strip band form the squares.
struct GridInstance {
    int level = 0;
    std::int64_t l = 0;
    std::int64_t d = 0;
    std::int64_t ox = 0;
    std::int64_t oy = 0;
    std::int64_t period() const { return l + d; }

    bool in_vstrip(std::int64_t x) const;
    bool in_hstrip(std::int64_t y) const;
    // Offset of x into the square band, or -1 if x lies in a strip.
    std::int64_t square_band_offset_x(std::int64_t x) const;
    std::int64_t square_band_offset_y(std::int64_t y) const;
};

// Samples offsets for levels 0..K. Level 0 is uniform over its period in
// both axes; each later level picks uniformly among the nesting-compatible
// translates (strips must cover whole square-columns of the level below).
std::vector<GridInstance> sample_nested_grids(const std::vector<LevelParams>& params,
                                              std::uint64_t seed);

// A square of grid `level` (level >= 1) together with the level-(level-1)
// strips crossing it, which subdivide it into frames.
struct Window {
    int level = 1;
    PlanarRect square;
    std::vector<PlanarRect> vframes;  // left to right, count = L[level-1]
    std::vector<PlanarRect> hframes;  // bottom to top, count = L[level-1]
};

// Builds the window anchored at square origin (sx, sy).
Window make_window(int level, std::int64_t sx, std::int64_t sy,
                   const std::vector<LevelParams>& params,
                   const std::vector<std::int64_t>& L);

// The fork cut from one window: the non-leftmost vertical frames trimmed to
// the bottom rows, plus the bottom frame extended rightwards across the
// adjacent next-level strip.
struct Fork {
    std::vector<PlanarRect> verticals;
    PlanarRect extended_horizontal;
    bool horizontal_clipped = false;  // extension leaves the viewport
};

Fork fork_rects(const Window& w, const std::vector<LevelParams>& params,
                const PlanarRect& viewport);

// One rectangle of the catalog. index_i = window level - 1; j = 2*index_i
// for verticals and 2*index_i+1 for horizontals.
struct CatalogEntry {
    PlanarRect rect;
    int index_i = 0;
    std::int64_t j = 0;
    std::uint32_t window_id = 0;
    bool clipped = false;
};

struct RectCatalog {
    std::vector<CatalogEntry> entries;
    std::vector<Window> windows;
    PlanarRect viewport;
    std::vector<LevelParams> params;
    std::vector<GridInstance> grids;

    std::size_t count(Orientation o) const;
};

// Enumerates, per level 1..K, the grid squares lying inside the viewport
// and inside a square of every higher-level grid, and emits their fork
// rectangles. A viewport hosting no window yields an empty catalog.
RectCatalog build_catalog(const ParamSeed& seed, const PlanarRect& viewport);
RectCatalog build_catalog(const std::vector<LevelParams>& params,
                          const std::vector<GridInstance>& grids,
                          const std::vector<std::int64_t>& L,
                          const PlanarRect& viewport);

// Planar symmetry recentred on the viewport plus an independent layer swap.
// rot counts quarter turns; mirror flips x before rotating.
struct SymmetryElement {
    int rot = 0;          // 0..3
    bool mirror = false;
    bool swap_layers = false;

    int combined_index() const { return rot + (mirror ? 4 : 0) + (swap_layers ? 8 : 0); }
};

SymmetryElement sample_symmetry(std::uint64_t seed);

// Image of a site under the element, recentred on `viewport`.
void apply_symmetry(const SymmetryElement& e, const PlanarRect& viewport,
                    std::int64_t x, std::int64_t y, std::int64_t& out_x,
                    std::int64_t& out_y);
PlanarRect apply_symmetry(const SymmetryElement& e, const PlanarRect& viewport,
                          const PlanarRect& r);

// Applies a sampled symmetry to every rectangle of the catalog. The result
// keeps entry order; orientation tags swap under odd rotations.
std::pair<RectCatalog, SymmetryElement> randomize_symmetry(const RectCatalog& cat,
                                                           std::uint64_t seed);

// Pairwise relation audit over all entries: verticals pairwise disjoint,
// horizontals pairwise disjoint, every vertical-horizontal overlap
// well-joined. Violations are returned as data.
struct CatalogViolation {
    std::uint32_t entry_a = 0;
    std::uint32_t entry_b = 0;
    PairClass got = PairClass::Other;
    std::string detail;
};

struct CatalogAudit {
    std::uint64_t pairs_checked = 0;
    std::vector<CatalogViolation> violations;
    bool passed() const { return violations.empty(); }
};

CatalogAudit catalog_audit(const RectCatalog& cat);

// Line-oriented record dump, one entry per line.
void dump_catalog(const RectCatalog& cat, std::ostream& os);

}  // namespace slabperc
