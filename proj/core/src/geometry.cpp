#include "slabperc/geometry.hpp"

#include <sstream>

namespace slabperc {

const char* to_string(Orientation o) {
    switch (o) {
        case Orientation::Vertical: return "V";
        case Orientation::Horizontal: return "H";
        default: return "U";
    }
}

const char* to_string(PairClass c) {
    switch (c) {
        case PairClass::V2H: return "V2H";
        case PairClass::H2V: return "H2V";
        case PairClass::Disjoint: return "Disjoint";
        default: return "Other";
    }
}

// Joining requires proper containment in both axes, in opposite directions.
// A well-joined pair always intersects, so the checks below are exclusive.
PairClass classify_pair(const PlanarRect& q, const PlanarRect& r) {
    if (r.h.properly_contains(q.h) && q.v.properly_contains(r.v))
        return PairClass::V2H;
    if (q.h.properly_contains(r.h) && r.v.properly_contains(q.v))
        return PairClass::H2V;
    if (!q.intersects(r)) return PairClass::Disjoint;
    return PairClass::Other;
}

std::string to_string(const Block& b) {
    std::ostringstream os;
    os << "[" << b.lo << "," << b.hi << "]";
    return os.str();
}

std::string to_string(const PlanarRect& r) {
    std::ostringstream os;
    os << to_string(r.h) << "x" << to_string(r.v) << "/" << to_string(r.orientation);
    return os.str();
}

}  // namespace slabperc
