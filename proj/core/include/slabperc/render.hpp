#pragma once
#include <string>

#include "slabperc/config.hpp"
#include "slabperc/gridgen.hpp"
#include "slabperc/slicing.hpp"

namespace slabperc {

struct RenderOptions {
    double scale = 1.0;   // pixels per lattice unit
    double margin = 10.0;
    bool outline_windows = true;
};

// Catalog picture: viewport frame plus one shape per entry, filled by level.
// An empty catalog renders the frame alone.
std::string render_catalog_svg(const RectCatalog& cat, const RenderOptions& opt = {});

// One window: its square and frame strips.
std::string render_window_svg(const RectCatalog& cat, std::size_t window_index,
                              const RenderOptions& opt = {});

// Assembly picture: one shape per slice, filled by component; regions the
// fold sends to the bottom layer carry a hatch pattern on top.
std::string render_assembly_svg(const SlabAssembly& assembly, const PlanarRect& viewport,
                                const RenderOptions& opt = {});

// Text card echoing the configuration.
std::string render_config_svg(const RunConfig& cfg);

}  // namespace slabperc
