#include "slabperc/render.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace slabperc {
namespace {

constexpr const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Maps lattice coordinates to svg space: y grows upward on the lattice,
// downward in svg.
struct Frame {
    double scale, margin;
    std::int64_t x_lo, y_hi;
    double x(std::int64_t v) const {
        return margin + scale * static_cast<double>(v - x_lo);
    }
    double y(std::int64_t v) const {
        return margin + scale * static_cast<double>(y_hi - v);
    }
};

void open_svg(std::ostringstream& os, const PlanarRect& viewport, const Frame& f) {
    double w = 2 * f.margin + f.scale * static_cast<double>(viewport.h.length());
    double h = 2 * f.margin + f.scale * static_cast<double>(viewport.v.length());
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w)
       << "\" height=\"" << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h)
       << "\">\n";
}

void rect_shape(std::ostringstream& os, const Frame& f, const PlanarRect& r,
                const std::string& fill, const std::string& stroke,
                double stroke_width, double opacity = 1.0) {
    os << "<rect x=\"" << fmt(f.x(r.h.lo)) << "\" y=\"" << fmt(f.y(r.v.hi))
       << "\" width=\"" << fmt(f.scale * static_cast<double>(r.h.length()))
       << "\" height=\"" << fmt(f.scale * static_cast<double>(r.v.length()))
       << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
       << fmt(stroke_width) << "\"";
    if (opacity != 1.0) os << " opacity=\"" << fmt(opacity) << "\"";
    os << "/>\n";
}

void viewport_frame(std::ostringstream& os, const Frame& f, const PlanarRect& viewport) {
    rect_shape(os, f, viewport, "none", "#000000", 1.5);
}

void hatch_defs(std::ostringstream& os) {
    os << "<defs><pattern id=\"dip\" width=\"6\" height=\"6\" "
          "patternUnits=\"userSpaceOnUse\"><path d=\"M0,6 l6,-6 M-1,1 l2,-2 M5,7 l2,-2\" "
          "stroke=\"#222222\" stroke-width=\"1\"/></pattern></defs>\n";
}

Frame make_frame(const PlanarRect& viewport, const RenderOptions& opt) {
    return Frame{opt.scale, opt.margin, viewport.h.lo, viewport.v.hi};
}

}  // namespace

std::string render_catalog_svg(const RectCatalog& cat, const RenderOptions& opt) {
    Frame f = make_frame(cat.viewport, opt);
    std::ostringstream os;
    open_svg(os, cat.viewport, f);
    for (const auto& e : cat.entries) {
        const char* fill = kPalette[static_cast<std::size_t>(e.index_i) % kPaletteSize];
        double opacity = e.rect.orientation == Orientation::Vertical ? 0.85 : 0.55;
        rect_shape(os, f, e.rect, fill, "#333333", 0.5, opacity);
    }
    if (opt.outline_windows)
        for (const auto& w : cat.windows)
            rect_shape(os, f, w.square, "none", "#000000", 0.75);
    viewport_frame(os, f, cat.viewport);
    os << "</svg>\n";
    return os.str();
}

std::string render_window_svg(const RectCatalog& cat, std::size_t window_index,
                              const RenderOptions& opt) {
    if (window_index >= cat.windows.size())
        throw std::out_of_range("render_window_svg: window index out of range");
    const Window& w = cat.windows[window_index];
    PlanarRect bounds = w.square;
    for (const auto& r : w.vframes) {
        bounds.h.lo = std::min(bounds.h.lo, r.h.lo);
        bounds.h.hi = std::max(bounds.h.hi, r.h.hi);
        bounds.v.lo = std::min(bounds.v.lo, r.v.lo);
        bounds.v.hi = std::max(bounds.v.hi, r.v.hi);
    }
    for (const auto& r : w.hframes) {
        bounds.h.lo = std::min(bounds.h.lo, r.h.lo);
        bounds.h.hi = std::max(bounds.h.hi, r.h.hi);
        bounds.v.lo = std::min(bounds.v.lo, r.v.lo);
        bounds.v.hi = std::max(bounds.v.hi, r.v.hi);
    }
    Frame f = make_frame(bounds, opt);
    std::ostringstream os;
    open_svg(os, bounds, f);
    for (const auto& r : w.vframes) rect_shape(os, f, r, kPalette[0], "#333333", 0.5, 0.8);
    for (const auto& r : w.hframes) rect_shape(os, f, r, kPalette[1], "#333333", 0.5, 0.8);
    rect_shape(os, f, w.square, "none", "#000000", 1.25);
    os << "</svg>\n";
    return os.str();
}

std::string render_assembly_svg(const SlabAssembly& assembly, const PlanarRect& viewport,
                                const RenderOptions& opt) {
    Frame f = make_frame(viewport, opt);
    std::ostringstream os;
    open_svg(os, viewport, f);
    hatch_defs(os);
    for (std::size_t i = 0; i < assembly.slices.size(); ++i) {
        const auto& slice = assembly.slices[i];
        std::uint32_t comp = assembly.forest.component[i];
        const char* fill = kPalette[comp % kPaletteSize];
        rect_shape(os, f, slice.rect, fill, "#333333", 0.4, 0.75);
    }
    // Bottom-layer sites, merged into per-row runs so one shape covers a run.
    for (const auto& fs : assembly.folded) {
        std::map<std::int64_t, std::vector<std::int64_t>> rows;
        for (const auto& v : fs.graph.vertices())
            if (v.layer == 0) rows[v.y].push_back(v.x);
        for (auto& [y, xs] : rows) {
            std::sort(xs.begin(), xs.end());
            std::size_t a = 0;
            while (a < xs.size()) {
                std::size_t b = a;
                while (b + 1 < xs.size() && xs[b + 1] == xs[b] + 1) ++b;
                PlanarRect run(Block(xs[a], xs[b] + 1), Block(y, y + 1));
                rect_shape(os, f, run, "url(#dip)", "none", 0.0);
                a = b + 1;
            }
        }
    }
    viewport_frame(os, f, viewport);
    os << "</svg>\n";
    return os.str();
}

std::string render_config_svg(const RunConfig& cfg) {
    std::istringstream lines(serialize_config(cfg));
    std::ostringstream os;
    std::vector<std::string> rows;
    std::string line;
    while (std::getline(lines, line)) rows.push_back(line);
    double w = 360.0, h = 24.0 + 18.0 * static_cast<double>(rows.size());
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\""
       << fmt(h) << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h) << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(w) << "\" height=\"" << fmt(h)
       << "\" fill=\"#fdfdf6\" stroke=\"#000000\"/>\n";
    double y = 20.0;
    for (const auto& row : rows) {
        os << "<text x=\"12\" y=\"" << fmt(y)
           << "\" font-family=\"monospace\" font-size=\"13\">" << row << "</text>\n";
        y += 18.0;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace slabperc
