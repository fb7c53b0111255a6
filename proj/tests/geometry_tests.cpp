#include "doctest.h"
#include "slabperc/geometry.hpp"

using namespace slabperc;

TEST_CASE("block basics") {
    Block b(2, 5);
    CHECK(b.length() == 4);
    CHECK(b.contains(2));
    CHECK(b.contains(5));
    CHECK(!b.contains(6));
    CHECK_THROWS_AS(Block(3, 1), std::invalid_argument);

    Block inner(3, 4);
    CHECK(b.contains(inner));
    CHECK(b.properly_contains(inner));
    CHECK(!b.properly_contains(b));
    CHECK(b.intersects(Block(5, 9)));
    CHECK(!b.intersects(Block(6, 9)));

    CHECK(block_meet(b, Block(4, 9)) == Block(4, 5));
}

TEST_CASE("rect basics") {
    PlanarRect r(Block(0, 3), Block(10, 12), Orientation::Horizontal);
    CHECK(r.width() == 4);
    CHECK(r.height() == 3);
    CHECK(r.area() == 12);
    CHECK(r.shorter_side() == 3);
    CHECK(r.longer_side() == 4);
    CHECK(r.contains(PlanarRect(Block(1, 2), Block(10, 11))));
    CHECK(!r.contains(PlanarRect(Block(1, 5), Block(10, 11))));
    CHECK(r.intersects(PlanarRect(Block(3, 8), Block(12, 20))));
    CHECK(!r.intersects(PlanarRect(Block(4, 8), Block(12, 20))));
}

TEST_CASE("pair classification") {
    // Prototype joined pair: a tall narrow rect crossed by a long low one.
    PlanarRect q(Block(5, 6), Block(0, 4), Orientation::Vertical);
    PlanarRect r(Block(2, 9), Block(0, 1), Orientation::Horizontal);
    CHECK(classify_pair(q, r) == PairClass::V2H);
    CHECK(classify_pair(r, q) == PairClass::H2V);

    // Equal column blocks fail the proper-containment requirement.
    PlanarRect same_cols(Block(5, 6), Block(0, 1), Orientation::Horizontal);
    CHECK(classify_pair(q, same_cols) == PairClass::Other);

    // Row block of q not properly containing r's rows.
    PlanarRect tall(Block(2, 9), Block(0, 4), Orientation::Horizontal);
    CHECK(classify_pair(q, tall) == PairClass::Other);

    PlanarRect far(Block(20, 30), Block(0, 1), Orientation::Horizontal);
    CHECK(classify_pair(q, far) == PairClass::Disjoint);
}

TEST_CASE("string forms") {
    CHECK(to_string(Orientation::Vertical) == "V");
    CHECK(to_string(Orientation::Horizontal) == "H");
    CHECK(to_string(PairClass::V2H) == "V2H");
    CHECK(to_string(Block(1, 3)) == "[1,3]");
}
