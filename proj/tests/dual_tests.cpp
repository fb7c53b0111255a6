#include <set>

#include "doctest.h"
#include "slabperc/dual.hpp"

using namespace slabperc;

namespace {

std::size_t dual_edge_state(const DualConfig& d, const SlabVertex& a,
                            const SlabVertex& b) {
    auto ia = d.graph.find_vertex(a);
    auto ib = d.graph.find_vertex(b);
    REQUIRE(ia != FiniteGraph::npos);
    REQUIRE(ib != FiniteGraph::npos);
    const auto& edges = d.graph.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if ((edges[e].first == ia && edges[e].second == ib) ||
            (edges[e].first == ib && edges[e].second == ia))
            return static_cast<std::size_t>(d.state[e] + 1);  // 0 undef, 1 closed, 2 open
    REQUIRE(false);
    return 0;
}

std::size_t primal_edge_index(const FiniteGraph& g, const SlabVertex& a,
                              const SlabVertex& b) {
    auto ia = g.find_vertex(a);
    auto ib = g.find_vertex(b);
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        if ((edges[e].first == ia && edges[e].second == ib) ||
            (edges[e].first == ib && edges[e].second == ia))
            return e;
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("dual configurations complement the primal ones") {
    PlanarRect box(Block(0, 3), Block(0, 2));
    auto g = induced_rect_graph(box);
    REQUIRE(g.edge_count() == 17);

    BondConfig all_open;
    all_open.graph = &g;
    all_open.p = 1.0;
    all_open.open.assign(g.edge_count(), 1);
    auto d_open = dual_of_config(all_open);
    CHECK(d_open.open_count() == 0);
    CHECK(d_open.defined_count() == g.edge_count());
    // Dual ring of a 4x3 box is a 5x4 box; the rest of its edges cross
    // nothing inside the viewport.
    CHECK(d_open.state.size() == 31);
    CHECK(d_open.state.size() - d_open.defined_count() == 14);

    auto all_closed = all_open;
    all_closed.p = 0.0;
    all_closed.open.assign(g.edge_count(), 0);
    CHECK(dual_of_config(all_closed).open_count() == g.edge_count());

    // One primal edge open: exactly its crossing dual pair is closed.
    auto one = all_closed;
    one.open[primal_edge_index(g, {1, 1, 1}, {2, 1, 1})] = 1;
    auto d_one = dual_of_config(one);
    CHECK(d_one.open_count() == g.edge_count() - 1);
    CHECK(dual_edge_state(d_one, {1, 0, 0}, {1, 1, 0}) == 1);

    // Conservation, exactly, on a sampled configuration.
    auto omega = sample_config(g, 0.5, 3);
    auto dual = dual_of_config(omega);
    std::size_t primal_open = 0;
    for (auto b : omega.open) primal_open += b;
    CHECK(primal_open + dual.open_count() == g.edge_count());

    // Matched-viewport inversion returns the original flags.
    auto back = primal_of_dual(dual, g);
    CHECK(back.open == omega.open);
}

TEST_CASE("duality refuses non-planar or partial inputs") {
    PlanarRect box(Block(0, 2), Block(0, 2));
    auto slab = graph_union({induced_rect_graph(box, 0), induced_rect_graph(box, 1)});
    BondConfig c;
    c.graph = &slab;
    c.open.assign(slab.edge_count(), 1);
    CHECK_THROWS_AS(dual_of_config(c), std::invalid_argument);

    FiniteGraph partial;
    partial.add_vertex({0, 0, 1});
    partial.add_vertex({1, 0, 1});
    partial.add_vertex({0, 1, 1});
    partial.add_edge({0, 0, 1}, {1, 0, 1});
    BondConfig pc;
    pc.graph = &partial;
    pc.open.assign(partial.edge_count(), 1);
    CHECK_THROWS_AS(dual_of_config(pc), std::invalid_argument);
}

TEST_CASE("half-step touching between dual and primal sites") {
    // Dual site (0,0) sits at (1/2, 1/2); its cell corners are the four
    // primal sites around it.
    for (std::int64_t dx = 0; dx <= 1; ++dx)
        for (std::int64_t dy = 0; dy <= 1; ++dy)
            CHECK(touches({{0, 0, 0}}, {{dx, dy, 1}}));
    CHECK_FALSE(touches({{5, 5, 0}}, {{0, 0, 1}}));
    CHECK_FALSE(touches({{2, 2, 0}}, {{0, 2, 1}}));
    CHECK_FALSE(touches({}, {{0, 0, 1}}));
    CHECK_FALSE(touches({{0, 0, 0}}, {}));
}

TEST_CASE("witness between two open columns is the dual column between them") {
    PlanarRect box(Block(0, 2), Block(0, 4));
    auto g = induced_rect_graph(box);
    BondConfig omega;
    omega.graph = &g;
    omega.open.assign(g.edge_count(), 0);
    for (std::int64_t y = 0; y < 4; ++y) {
        omega.open[primal_edge_index(g, {0, y, 1}, {0, y + 1, 1})] = 1;
        omega.open[primal_edge_index(g, {2, y, 1}, {2, y + 1, 1})] = 1;
    }
    auto lab = label_clusters(omega);
    auto c1 = lab.label[g.find_vertex({0, 0, 1})];
    auto c2 = lab.label[g.find_vertex({2, 0, 1})];
    REQUIRE(c1 != c2);

    auto w = separation_witness(omega, lab, c1, c2);
    REQUIRE(w.has_value());
    CHECK(w->is_simple_path);
    CHECK_FALSE(w->is_cycle);
    CHECK(w->edges.size() == 5);
    CHECK(w->vertices.size() == 6);
    for (const auto& [a, b] : w->edges) {
        CHECK(a.x == 0);
        CHECK(b.x == 0);
    }
    CHECK(verify_separation(omega, lab, c1, c2, *w));

    CHECK_THROWS_AS(separation_witness(omega, lab, c1, c1), std::invalid_argument);
    CHECK_THROWS_AS(separation_witness(omega, lab, c1, lab.count + 7),
                    std::invalid_argument);

    auto text = dump_witness(*w);
    CHECK(text.rfind("# dual edges", 0) == 0);
    CHECK(text.find("# kind path") != std::string::npos);
}

TEST_CASE("witness around an enclosed site is a dual cycle") {
    PlanarRect box(Block(0, 4), Block(0, 4));
    auto g = induced_rect_graph(box);
    BondConfig omega;
    omega.graph = &g;
    omega.open.assign(g.edge_count(), 1);
    for (const SlabVertex nb :
         {SlabVertex{1, 2, 1}, SlabVertex{3, 2, 1}, SlabVertex{2, 1, 1},
          SlabVertex{2, 3, 1}})
        omega.open[primal_edge_index(g, {2, 2, 1}, nb)] = 0;

    auto lab = label_clusters(omega);
    REQUIRE(lab.count == 2);
    auto big = lab.label[g.find_vertex({0, 0, 1})];
    auto centre = lab.label[g.find_vertex({2, 2, 1})];
    REQUIRE(big != centre);

    auto w = separation_witness(omega, lab, big, centre);
    REQUIRE(w.has_value());
    CHECK(w->is_cycle);
    CHECK(w->edges.size() == 4);
    std::set<std::pair<std::int64_t, std::int64_t>> ring;
    for (const auto& v : w->vertices) ring.insert({v.x, v.y});
    CHECK(ring == std::set<std::pair<std::int64_t, std::int64_t>>{
                      {1, 1}, {1, 2}, {2, 1}, {2, 2}});
    CHECK(verify_separation(omega, lab, big, centre, *w));
    CHECK(dump_witness(*w).find("# kind cycle") != std::string::npos);
}

TEST_CASE("witnesses succeed whenever disjoint spanning clusters appear") {
    // Frozen scan: these seed ranges are known to contain configurations
    // with two disjoint vertically spanning clusters at p = 1/2.
    struct Tier {
        std::int64_t side;
        std::uint64_t seeds;
        std::size_t expected_pairs;
    };
    const Tier tiers[] = {{16, 200, 4}, {64, 200, 4}, {256, 100, 1}};
    for (const auto& tier : tiers) {
        PlanarRect box(Block(0, tier.side - 1), Block(0, tier.side - 1));
        auto g = induced_rect_graph(box);
        const auto& verts = g.vertices();
        std::size_t found = 0;
        for (std::uint64_t s = 0; s < tier.seeds; ++s) {
            auto omega = sample_config(g, 0.5, s);
            auto lab = label_clusters(omega);
            std::vector<char> top(lab.count, 0), bottom(lab.count, 0);
            for (std::uint32_t v = 0; v < verts.size(); ++v) {
                if (verts[v].y == box.v.lo) bottom[lab.label[v]] = 1;
                if (verts[v].y == box.v.hi) top[lab.label[v]] = 1;
            }
            std::vector<std::uint32_t> spanning;
            for (std::uint32_t c = 0; c < lab.count; ++c)
                if (top[c] && bottom[c]) spanning.push_back(c);
            if (spanning.size() < 2) continue;
            ++found;
            auto w = separation_witness(omega, lab, spanning[0], spanning[1]);
            REQUIRE(w.has_value());
            CHECK(verify_separation(omega, lab, spanning[0], spanning[1], *w));
        }
        CHECK(found == tier.expected_pairs);
    }
}

TEST_CASE("boundary arm diagnostic counts rim arcs") {
    PlanarRect box(Block(0, 4), Block(0, 4));

    // A horizontal strip touches the rim twice, a cross four times.
    std::vector<SlabVertex> strip;
    for (std::int64_t x = 0; x <= 4; ++x) strip.push_back({x, 2, 1});
    CHECK(boundary_arm_estimate(strip, box) == 2);

    std::vector<SlabVertex> cross = strip;
    for (std::int64_t y = 0; y <= 4; ++y)
        if (y != 2) cross.push_back({2, y, 1});
    CHECK(boundary_arm_estimate(cross, box) == 4);

    std::vector<SlabVertex> blob = {{2, 2, 1}, {2, 3, 1}};
    CHECK(boundary_arm_estimate(blob, box) == 0);

    std::vector<SlabVertex> everything;
    for (std::int64_t x = 0; x <= 4; ++x)
        for (std::int64_t y = 0; y <= 4; ++y) everything.push_back({x, y, 1});
    CHECK(boundary_arm_estimate(everything, box) == 1);

    CHECK(boundary_arm_estimate({}, box) == 0);
}
