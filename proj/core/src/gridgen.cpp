#include "slabperc/gridgen.hpp"

#include <ostream>
#include <sstream>

#include "slabperc/rng.hpp"

namespace slabperc {

namespace {

std::int64_t pos_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    return a / b + (a % b > 0 ? 1 : 0);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b, int level) {
    std::int64_t out;
    if (__builtin_mul_overflow(a, b, &out)) {
        std::ostringstream os;
        os << "derive_params: size overflow at level " << level;
        throw std::overflow_error(os.str());
    }
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, int level) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        std::ostringstream os;
        os << "derive_params: size overflow at level " << level;
        throw std::overflow_error(os.str());
    }
    return out;
}

}  // namespace

std::vector<LevelParams> derive_params(const ParamSeed& seed) {
    if (seed.l0 < 1 || seed.d0 < 1)
        throw std::invalid_argument("derive_params: l0 and d0 must be >= 1");
    if (seed.L.empty())
        throw std::invalid_argument("derive_params: need at least one subdivision count");
    std::vector<LevelParams> out;
    out.push_back({seed.l0, seed.d0});
    for (std::size_t k = 0; k < seed.L.size(); ++k) {
        std::int64_t Lk = seed.L[k];
        int level = static_cast<int>(k) + 1;
        if (Lk < 2) {
            std::ostringstream os;
            os << "derive_params: L at level " << level << " must be >= 2";
            throw std::invalid_argument(os.str());
        }
        const auto& prev = out.back();
        // d_{k+1} = L*l_k + (L-1)*d_k; the next strip width is the old square side.
        std::int64_t d = checked_add(checked_mul(Lk, prev.l, level),
                                     checked_mul(Lk - 1, prev.d, level), level);
        out.push_back({prev.d, d});
    }
    return out;
}

bool GridInstance::in_vstrip(std::int64_t x) const {
    return pos_mod(x - ox, period()) < l;
}

bool GridInstance::in_hstrip(std::int64_t y) const {
    return pos_mod(y - oy, period()) < l;
}

std::int64_t GridInstance::square_band_offset_x(std::int64_t x) const {
    std::int64_t r = pos_mod(x - ox, period());
    return r < l ? -1 : r - l;
}

std::int64_t GridInstance::square_band_offset_y(std::int64_t y) const {
    std::int64_t r = pos_mod(y - oy, period());
    return r < l ? -1 : r - l;
}

std::vector<GridInstance> sample_nested_grids(const std::vector<LevelParams>& params,
                                              std::uint64_t seed) {
    if (params.empty()) throw std::invalid_argument("sample_nested_grids: no levels");
    std::vector<GridInstance> grids;
    auto gen = substream(seed, stream::grid_offset);
    const auto& p0 = params[0];
    GridInstance g0{0, p0.l, p0.d,
                    static_cast<std::int64_t>(uniform_below(gen, p0.period())),
                    static_cast<std::int64_t>(uniform_below(gen, p0.period()))};
    grids.push_back(g0);
    for (std::size_t k = 1; k < params.size(); ++k) {
        const auto& prev = grids.back();
        const auto& pk = params[k];
        // Strips of level k must cover whole square-columns of level k-1;
        // compatible translates differ by one lower-level period.
        std::int64_t choices = pk.period() / prev.period();
        std::int64_t tx = static_cast<std::int64_t>(uniform_below(gen, choices));
        std::int64_t ty = static_cast<std::int64_t>(uniform_below(gen, choices));
        GridInstance g{static_cast<int>(k), pk.l, pk.d,
                       pos_mod(prev.ox + prev.l + tx * prev.period(), pk.period()),
                       pos_mod(prev.oy + prev.l + ty * prev.period(), pk.period())};
        grids.push_back(g);
    }
    return grids;
}

Window make_window(int level, std::int64_t sx, std::int64_t sy,
                   const std::vector<LevelParams>& params,
                   const std::vector<std::int64_t>& L) {
    if (level < 1 || level >= static_cast<int>(params.size()))
        throw std::invalid_argument("make_window: bad level");
    const auto& inner = params[level - 1];
    const auto& self = params[level];
    std::int64_t Lk = L[level - 1];
    Window w;
    w.level = level;
    w.square = PlanarRect(Block(sx, sx + self.d - 1), Block(sy, sy + self.d - 1));
    for (std::int64_t f = 0; f < Lk; ++f) {
        std::int64_t fx = sx + f * inner.period();
        w.vframes.emplace_back(Block(fx, fx + inner.l - 1), w.square.v,
                               Orientation::Vertical);
        std::int64_t fy = sy + f * inner.period();
        w.hframes.emplace_back(w.square.h, Block(fy, fy + inner.l - 1),
                               Orientation::Horizontal);
    }
    return w;
}

Fork fork_rects(const Window& w, const std::vector<LevelParams>& params,
                const PlanarRect& viewport) {
    const auto& inner = params[w.level - 1];
    const auto& self = params[w.level];
    std::int64_t sx = w.square.h.lo, sy = w.square.v.lo;
    Fork fork;
    // Keep the bottom d - l rows so each vertical properly contains the
    // bottom frame's row block and stays clear of the top frame's rows.
    Block kept_rows(sy, sy + self.d - inner.l - 1);
    for (std::size_t f = 1; f < w.vframes.size(); ++f)
        fork.verticals.emplace_back(w.vframes[f].h, kept_rows, Orientation::Vertical);
    // The bottom frame, started at the right edge of the excluded leftmost
    // frame and pushed d_{level-1} columns past the window so it crosses the
    // adjacent next-level strip in full.
    Block hcols(sx + inner.l, sx + self.d + inner.d - 1);
    Block hrows(sy, sy + inner.l - 1);
    fork.extended_horizontal = PlanarRect(hcols, hrows, Orientation::Horizontal);
    fork.horizontal_clipped = !viewport.contains(fork.extended_horizontal);
    return fork;
}

std::size_t RectCatalog::count(Orientation o) const {
    std::size_t n = 0;
    for (const auto& e : entries)
        if (e.rect.orientation == o) ++n;
    return n;
}

RectCatalog build_catalog(const std::vector<LevelParams>& params,
                          const std::vector<GridInstance>& grids,
                          const std::vector<std::int64_t>& L,
                          const PlanarRect& viewport) {
    if (params.size() != grids.size() || params.size() != L.size() + 1)
        throw std::invalid_argument("build_catalog: inconsistent level data");
    RectCatalog cat;
    cat.viewport = viewport;
    cat.params = params;
    cat.grids = grids;
    int K = static_cast<int>(L.size());
    for (int t = 1; t <= K; ++t) {
        const auto& g = grids[t];
        // Square origins of grid t sit one strip width past the offset.
        std::int64_t base_x = g.ox + g.l;
        std::int64_t base_y = g.oy + g.l;
        // Walk squares fully inside the viewport.
        for (std::int64_t kx = ceil_div(viewport.h.lo - base_x, g.period());; ++kx) {
            std::int64_t sx = base_x + kx * g.period();
            if (sx + g.d - 1 > viewport.h.hi) break;
            for (std::int64_t ky = ceil_div(viewport.v.lo - base_y, g.period());; ++ky) {
                std::int64_t sy = base_y + ky * g.period();
                if (sy + g.d - 1 > viewport.v.hi) break;
                // Sites covered by a higher-level strip host no structure:
                // the square must sit inside a square of every higher grid.
                bool hosted = true;
                for (int u = t + 1; u <= K && hosted; ++u) {
                    const auto& gu = grids[u];
                    std::int64_t rx = gu.square_band_offset_x(sx);
                    std::int64_t ry = gu.square_band_offset_y(sy);
                    if (rx < 0 || ry < 0 || rx + g.d > gu.d || ry + g.d > gu.d)
                        hosted = false;
                }
                if (!hosted) continue;
                Window w = make_window(t, sx, sy, params, L);
                Fork fork = fork_rects(w, params, viewport);
                auto wid = static_cast<std::uint32_t>(cat.windows.size());
                cat.windows.push_back(w);
                for (const auto& vr : fork.verticals)
                    cat.entries.push_back({vr, t - 1, 2 * (t - 1), wid, false});
                cat.entries.push_back({fork.extended_horizontal, t - 1, 2 * (t - 1) + 1,
                                       wid, fork.horizontal_clipped});
            }
        }
    }
    return cat;
}

RectCatalog build_catalog(const ParamSeed& seed, const PlanarRect& viewport) {
    auto params = derive_params(seed);
    auto grids = sample_nested_grids(params, seed.seed);
    return build_catalog(params, grids, seed.L, viewport);
}

SymmetryElement sample_symmetry(std::uint64_t seed) {
    auto gen = substream(seed, stream::symmetry);
    SymmetryElement e;
    e.rot = static_cast<int>(uniform_below(gen, 4));
    e.mirror = uniform_below(gen, 2) != 0;
    e.swap_layers = uniform_below(gen, 2) != 0;
    return e;
}

void apply_symmetry(const SymmetryElement& e, const PlanarRect& viewport,
                    std::int64_t x, std::int64_t y, std::int64_t& out_x,
                    std::int64_t& out_y) {
    std::int64_t u = x - viewport.h.lo, v = y - viewport.v.lo;
    std::int64_t w = viewport.width(), h = viewport.height();
    if (e.mirror) u = w - 1 - u;
    for (int i = 0; i < e.rot; ++i) {
        std::int64_t nu = v, nv = w - 1 - u;
        u = nu;
        v = nv;
        std::swap(w, h);
    }
    out_x = viewport.h.lo + u;
    out_y = viewport.v.lo + v;
}

PlanarRect apply_symmetry(const SymmetryElement& e, const PlanarRect& viewport,
                          const PlanarRect& r) {
    std::int64_t x1, y1, x2, y2;
    apply_symmetry(e, viewport, r.h.lo, r.v.lo, x1, y1);
    apply_symmetry(e, viewport, r.h.hi, r.v.hi, x2, y2);
    Orientation o = r.orientation;
    if ((e.rot % 2) == 1 && o != Orientation::Untagged)
        o = o == Orientation::Vertical ? Orientation::Horizontal : Orientation::Vertical;
    return PlanarRect(Block(std::min(x1, x2), std::max(x1, x2)),
                      Block(std::min(y1, y2), std::max(y1, y2)), o);
}

std::pair<RectCatalog, SymmetryElement> randomize_symmetry(const RectCatalog& cat,
                                                           std::uint64_t seed) {
    SymmetryElement e = sample_symmetry(seed);
    RectCatalog out = cat;
    for (auto& entry : out.entries)
        entry.rect = apply_symmetry(e, cat.viewport, entry.rect);
    for (auto& w : out.windows) {
        w.square = apply_symmetry(e, cat.viewport, w.square);
        for (auto& f : w.vframes) f = apply_symmetry(e, cat.viewport, f);
        for (auto& f : w.hframes) f = apply_symmetry(e, cat.viewport, f);
        if (e.rot % 2 == 1) std::swap(w.vframes, w.hframes);
    }
    if (e.rot % 2 == 1) {
        out.viewport = PlanarRect(
            Block(cat.viewport.h.lo, cat.viewport.h.lo + cat.viewport.height() - 1),
            Block(cat.viewport.v.lo, cat.viewport.v.lo + cat.viewport.width() - 1));
    }
    return {out, e};
}

CatalogAudit catalog_audit(const RectCatalog& cat) {
    CatalogAudit audit;
    const auto& es = cat.entries;
    for (std::uint32_t a = 0; a < es.size(); ++a) {
        for (std::uint32_t b = a + 1; b < es.size(); ++b) {
            const auto& ra = es[a].rect;
            const auto& rb = es[b].rect;
            if (!ra.intersects(rb)) continue;
            ++audit.pairs_checked;
            bool va = ra.orientation == Orientation::Vertical;
            bool vb = rb.orientation == Orientation::Vertical;
            if (va == vb) {
                // Same orientation must never share a site.
                audit.violations.push_back(
                    {a, b, classify_pair(ra, rb), "same-orientation overlap"});
                continue;
            }
            const auto& q = va ? ra : rb;
            const auto& r = va ? rb : ra;
            if (classify_pair(q, r) != PairClass::V2H)
                audit.violations.push_back(
                    {a, b, classify_pair(q, r), "overlap is not well-joined"});
        }
    }
    return audit;
}

void dump_catalog(const RectCatalog& cat, std::ostream& os) {
    os << "# level orient i j h_lo h_hi v_lo v_hi window flags\n";
    for (const auto& e : cat.entries) {
        os << (e.index_i + 1) << ' ' << to_string(e.rect.orientation) << ' '
           << e.index_i << ' ' << e.j << ' ' << e.rect.h.lo << ' ' << e.rect.h.hi
           << ' ' << e.rect.v.lo << ' ' << e.rect.v.hi << ' ' << e.window_id << ' '
           << (e.clipped ? "clipped" : "-") << '\n';
    }
}

}  // namespace slabperc
