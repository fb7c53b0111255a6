#include "doctest.h"
#include "slabperc/slabgraph.hpp"

using namespace slabperc;

TEST_CASE("vertex packing round-trips") {
    SlabVertex v{-37, 412, 0};
    auto w = unpack_vertex(pack_vertex(v));
    CHECK(w.x == v.x);
    CHECK(w.y == v.y);
    CHECK(w.layer == v.layer);
}

TEST_CASE("slab adjacency") {
    CHECK(slab_adjacent({0, 0, 0}, {1, 0, 0}));
    CHECK(slab_adjacent({0, 0, 0}, {0, 1, 0}));
    CHECK(slab_adjacent({0, 0, 0}, {0, 0, 1}));
    CHECK(!slab_adjacent({0, 0, 0}, {1, 1, 0}));
    CHECK(!slab_adjacent({0, 0, 0}, {1, 0, 1}));
    CHECK(!slab_adjacent({0, 0, 0}, {0, 0, 0}));
}

TEST_CASE("induced rectangle counts") {
    auto square = induced_rect_graph(PlanarRect(Block(0, 1), Block(0, 1)));
    CHECK(square.vertex_count() == 4);
    CHECK(square.edge_count() == 4);

    auto row = induced_rect_graph(PlanarRect(Block(0, 2), Block(5, 5)));
    CHECK(row.vertex_count() == 3);
    CHECK(row.edge_count() == 2);
    CHECK(row.component_count() == 1);
}

TEST_CASE("component labels") {
    FiniteGraph g;
    g.add_vertex({0, 0, 1});
    g.add_vertex({0, 1, 1});
    g.add_vertex({1, 1, 1});
    g.add_vertex({1, 0, 1});
    g.add_edge({0, 0, 1}, {0, 1, 1});
    g.add_edge({0, 1, 1}, {1, 1, 1});
    auto labels = g.component_labels();
    // First-seen order: the triple path is component 0, the isolated site 1.
    CHECK(labels == std::vector<std::uint32_t>{0, 0, 0, 1});
    CHECK(g.component_count() == 2);
}

TEST_CASE("union of induced parts is not the induced union") {
    // Two unit columns and the bottom row joining them; the top edge is
    // absent because no part induces it.
    auto v1 = induced_rect_graph(PlanarRect(Block(0, 0), Block(0, 1)));
    auto v2 = induced_rect_graph(PlanarRect(Block(1, 1), Block(0, 1)));
    auto h1 = induced_rect_graph(PlanarRect(Block(0, 1), Block(0, 0)));
    auto u = graph_union({v1, v2, h1});
    CHECK(u.vertex_count() == 4);
    CHECK(u.edge_count() == 3);
    CHECK(u.has_edge({0, 0, 1}, {0, 1, 1}));
    CHECK(u.has_edge({1, 0, 1}, {1, 1, 1}));
    CHECK(u.has_edge({0, 0, 1}, {1, 0, 1}));
    CHECK(!u.has_edge({0, 1, 1}, {1, 1, 1}));
    CHECK(u.component_count() == 1);

    auto missing = union_pathology({v1, v2, h1});
    REQUIRE(missing.size() == 1);
    CHECK(slab_adjacent(missing[0].first, missing[0].second));

    // Re-inducing on the union's sites restores the fourth edge.
    std::vector<SlabVertex> sites;
    for (const auto& v : u.vertices()) sites.push_back(v);
    auto induced = induced_site_graph(sites);
    CHECK(induced.edge_count() == 4);
}

TEST_CASE("add_edge rejects non-bonds") {
    FiniteGraph g;
    g.add_vertex({0, 0, 1});
    g.add_vertex({2, 0, 1});
    CHECK_THROWS_AS(g.add_edge({0, 0, 1}, {2, 0, 1}), std::invalid_argument);
}
