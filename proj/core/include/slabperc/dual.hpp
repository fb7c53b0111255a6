#pragma once
#include <optional>
#include <string>
#include <vector>

#include "slabperc/percolation.hpp"

namespace slabperc {

// Planar dual of a bond configuration on a full rectangle graph. Dual site
// (x, y), stored on layer 0, encodes the point (x + 1/2, y + 1/2); the dual
// sites extend one step past the primal box so every primal edge has its
// crossing dual partner. A dual edge is open iff the primal edge it crosses
// is closed; dual edges crossing primal edges outside the box are undefined
// rather than guessed.
struct DualConfig {
    PlanarRect viewport;  // primal box
    std::uint8_t primal_layer = 1;
    FiniteGraph graph;               // dual sites and edges
    std::vector<std::int8_t> state;  // per dual edge: 1 open, 0 closed, -1 undefined
    std::vector<std::uint32_t> primal_edge;  // crossed primal edge id, npos if undefined

    std::size_t defined_count() const;
    std::size_t open_count() const;
};

// Requires a single-layer full rectangle graph; a slab input is refused.
DualConfig dual_of_config(const BondConfig& omega);

// Inverse on a matched viewport: reopens each primal edge iff its crossing
// dual edge is closed. `primal` must be the graph omega lived on.
BondConfig primal_of_dual(const DualConfig& dual, const FiniteGraph& primal);

// The dual open subgraph as a bond configuration over dual.graph; undefined
// edges count as closed so they never join dual clusters.
BondConfig dual_open_config(const DualConfig& dual);

// True iff some dual site and some primal site are diagonal half-step
// neighbours: the primal site is one of the four corners of the dual cell.
bool touches(const std::vector<SlabVertex>& dual_cluster,
             const std::vector<SlabVertex>& primal_cluster);

// A set of open dual edges whose crossed primal edges disconnect one
// cluster from another inside the box. Vertices are listed in traversal
// order when the witness reduces to a simple path or cycle.
struct DualWitness {
    std::vector<std::pair<SlabVertex, SlabVertex>> edges;
    std::vector<SlabVertex> vertices;
    bool is_cycle = false;
    bool is_simple_path = false;
};

// Walks the shortest primal path between the clusters, explores the dual
// interface it first crosses, and returns a verified separator. Every
// returned edge is open in the dual; validity is checked before returning.
std::optional<DualWitness> separation_witness(const BondConfig& omega,
                                              const ClusterLabeling& labels,
                                              std::uint32_t c1, std::uint32_t c2);

// Re-checks a witness: all its dual edges are open duals of closed primal
// edges, and removing the crossed primal edges disconnects the clusters.
bool verify_separation(const BondConfig& omega, const ClusterLabeling& labels,
                       std::uint32_t c1, std::uint32_t c2, const DualWitness& w);

// Number of maximal contiguous rim arcs of the viewport met by the cluster.
// A coarse connectivity diagnostic; approximate by construction.
std::size_t boundary_arm_estimate(const std::vector<SlabVertex>& cluster,
                                  const PlanarRect& viewport);

// Line-oriented dump: one dual edge per line in dual coordinates.
std::string dump_witness(const DualWitness& w);

}  // namespace slabperc
