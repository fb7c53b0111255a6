#pragma once
#include <algorithm>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace slabperc {

// Finite run of consecutive integers, both endpoints included. lo <= hi.
struct Block {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    Block() = default;
    Block(std::int64_t lo_, std::int64_t hi_) : lo(lo_), hi(hi_) {
        if (lo > hi) throw std::invalid_argument("Block: lo > hi");
    }

    std::int64_t length() const { return hi - lo + 1; }
    bool contains(std::int64_t x) const { return lo <= x && x <= hi; }
    bool contains(const Block& o) const { return lo <= o.lo && o.hi <= hi; }
    // Proper containment as sets: contained and not equal.
    bool properly_contains(const Block& o) const {
        return contains(o) && !(lo == o.lo && hi == o.hi);
    }
    bool intersects(const Block& o) const { return lo <= o.hi && o.lo <= hi; }

    friend bool operator==(const Block&, const Block&) = default;
};

// Intersection; callers must check intersects() first.
inline Block block_meet(const Block& a, const Block& b) {
    return Block(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
}

enum class Orientation : std::uint8_t { Vertical, Horizontal, Untagged };

const char* to_string(Orientation o);

// Axis-aligned rectangle of lattice sites: columns h, rows v, both closed.
// Orientation is a tag carried by construction, not derived from shape;
// Untagged is for ad-hoc rectangles (viewports, probe boxes).
struct PlanarRect {
    Block h;
    Block v;
    Orientation orientation = Orientation::Untagged;

    PlanarRect() = default;
    PlanarRect(Block h_, Block v_, Orientation o = Orientation::Untagged)
        : h(h_), v(v_), orientation(o) {}

    std::int64_t width() const { return h.length(); }
    std::int64_t height() const { return v.length(); }
    std::int64_t area() const { return width() * height(); }
    std::int64_t shorter_side() const { return std::min(width(), height()); }
    std::int64_t longer_side() const { return std::max(width(), height()); }
    bool contains(std::int64_t x, std::int64_t y) const {
        return h.contains(x) && v.contains(y);
    }
    bool contains(const PlanarRect& o) const {
        return h.contains(o.h) && v.contains(o.v);
    }
    bool intersects(const PlanarRect& o) const {
        return h.intersects(o.h) && v.intersects(o.v);
    }

    friend bool operator==(const PlanarRect&, const PlanarRect&) = default;
};

inline PlanarRect rect_meet(const PlanarRect& a, const PlanarRect& b) {
    return PlanarRect(block_meet(a.h, b.h), block_meet(a.v, b.v));
}

// How two rectangles relate for the joining rules.
//   V2H: first is vertical-to-horizontal joined to second
//        (h(Q) proper subset of h(R), v(Q) proper superset of v(R)).
//   H2V: the mirror image.
//   Disjoint: no common site.
//   Other: any remaining overlap pattern.
enum class PairClass : std::uint8_t { V2H, H2V, Disjoint, Other };

const char* to_string(PairClass c);

PairClass classify_pair(const PlanarRect& q, const PlanarRect& r);

std::string to_string(const Block& b);
std::string to_string(const PlanarRect& r);

}  // namespace slabperc
