#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "slabperc/config.hpp"
#include "slabperc/dual.hpp"
#include "slabperc/render.hpp"
#include "slabperc/report.hpp"
#include "slabperc/tree.hpp"

namespace {

using namespace slabperc;

// Every subcommand reads one optional config file; the shared flags
// override whatever the file says.
struct Invocation {
    CLI::App* cmd = nullptr;
    std::string config_path;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    std::int64_t viewport = 0;
    std::string out;

    void attach(CLI::App* c) {
        cmd = c;
        c->add_option("config", config_path, "run configuration file")
            ->check(CLI::ExistingFile);
        c->add_option("--seed", seed, "master seed override");
        c->add_option("--trials", trials, "trial count override")
            ->check(CLI::PositiveNumber);
        c->add_option("--viewport", viewport, "square viewport side override")
            ->check(CLI::PositiveNumber);
        c->add_option("--out", out, "artifact directory override");
        c->add_flag("--strict", "strict feasibility checks");
    }

    RunConfig load() const {
        RunConfig cfg;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw std::runtime_error("cannot read config file " + config_path);
            std::stringstream ss;
            ss << in.rdbuf();
            cfg = parse_config(ss.str());
        }
        if (cmd->count("--seed")) cfg.params.seed = seed;
        if (cmd->count("--trials")) cfg.trials = trials;
        if (cmd->count("--viewport")) cfg.viewport_w = cfg.viewport_h = viewport;
        if (cmd->count("--out")) cfg.out = out;
        if (cmd->count("--strict")) cfg.strict = true;
        return cfg;
    }
};

std::string stem_for(const char* sub, const RunConfig& cfg) {
    return std::string(sub) + "-seed" + std::to_string(cfg.params.seed);
}

void finish(const char* sub, const RunConfig& cfg, const ReportBundle& bundle) {
    auto path = write_report(cfg.out, stem_for(sub, cfg), emit_report(bundle));
    std::cout << "report: " << path << "\n";
}

int run_plan(const RunConfig& cfg) {
    ConfiguredPlan cp = plan_from_config(cfg);
    const auto& plan = cp.plan;
    for (std::size_t j = 0; j < plan.n.size(); ++j)
        std::cout << "j=" << j << " n=" << plan.n[j] << " lambda=" << plan.lambda[j]
                  << " a=" << plan.a[j] << " k=" << plan.k[j] << " m=" << plan.m[j]
                  << "\n";
    std::cout << "sum 1/L = " << cp.report.sum_inverse_L
              << "  target sum = " << cp.report.sum_target
              << "  weighted k sum = " << cp.report.weighted_k_sum << "\n";
    for (const auto& e : cp.report.errors) std::cout << "error: " << e << "\n";
    for (const auto& w : cp.report.warnings) std::cout << "warning: " << w << "\n";
    std::cout << (cp.report.pass ? "plan: feasible" : "plan: rejected") << "\n";

    ReportBundle bundle;
    bundle.subcommand = "plan";
    bundle.config = &cfg;
    bundle.plan = &plan;
    bundle.plan_report = &cp.report;
    finish("plan", cfg, bundle);
    return cp.report.pass ? 0 : 2;
}

int run_build(const RunConfig& cfg) {
    ConfiguredPlan cp = plan_from_config(cfg);
    ReportBundle bundle;
    bundle.subcommand = "build";
    bundle.config = &cfg;
    bundle.plan = &cp.plan;
    bundle.plan_report = &cp.report;
    if (!cp.report.pass) {
        for (const auto& e : cp.report.errors) std::cout << "error: " << e << "\n";
        finish("build", cfg, bundle);
        return 2;
    }

    auto cat = build_catalog(cfg.params, config_viewport(cfg));
    auto audit = catalog_audit(cat);
    auto tree = build_overlap_tree(cat);
    auto assembly = build_assembly(cat, tree, cp.plan.m, cfg.params.seed);

    std::ostringstream dump;
    dump_catalog(cat, dump);
    auto cat_path = write_artifact(cfg.out, "catalog-seed" + std::to_string(cfg.params.seed),
                                   ".txt", dump.str());

    std::cout << "windows=" << cat.windows.size() << " rects=" << cat.entries.size()
              << " pairs_checked=" << audit.pairs_checked
              << " violations=" << audit.violations.size() << "\n";
    std::cout << "slices=" << assembly.slices.size()
              << " components=" << assembly.component_count
              << " vertices=" << assembly.graph.vertex_count()
              << " edges=" << assembly.graph.edge_count() << "\n";
    std::cout << "catalog: " << cat_path << "\n";

    bundle.catalog = &cat;
    bundle.catalog_audit = &audit;
    bundle.assembly = &assembly;
    finish("build", cfg, bundle);
    return audit.passed() ? 0 : 2;
}

// First in-tree entry at the innermost index; the catalog orders entries
// deterministically, so this pick is stable.
std::uint32_t innermost_entry(const RectCatalog& cat, const RectTree& tree) {
    for (std::uint32_t e = 0; e < tree.nodes.size(); ++e)
        if (tree.nodes[e].in_tree && tree.nodes[e].j == 0) return e;
    throw std::runtime_error("viewport hosts no complete innermost rectangle");
}

int run_simulate(const RunConfig& cfg) {
    ConfiguredPlan cp = plan_from_config(cfg);
    auto cat = build_catalog(cfg.params, config_viewport(cfg));
    auto tree = build_overlap_tree(cat);

    ReportBundle bundle;
    bundle.subcommand = "simulate";
    bundle.config = &cfg;
    bundle.plan = &cp.plan;
    bundle.plan_report = &cp.report;

    int rc = 0;
    for (const auto& name : cfg.experiments) {
        if (name == "crossing") {
            auto e = innermost_entry(cat, tree);
            const auto& rect = cat.entries[e].rect;
            auto dir = rect.orientation == Orientation::Vertical ? CrossDir::Vertical
                                                                 : CrossDir::Horizontal;
            auto g = induced_rect_graph(rect);
            auto spec = rect_crossing(g, rect, dir);
            auto curve = estimate_crossing_curve(
                g, spec, cfg.p, cfg.trials, derive_seed(cfg.params.seed, stream::trial, 1));
            for (std::size_t i = 0; i < cfg.p.size(); ++i) {
                bundle.experiments.push_back({"crossing", cfg.p[i], curve[i]});
                std::cout << "crossing p=" << cfg.p[i] << " p_hat=" << curve[i].p_hat
                          << " sigma=" << curve[i].sigma << "\n";
            }
        } else if (name == "road") {
            Ray best;
            for (std::uint32_t e = 0; e < tree.nodes.size(); ++e) {
                if (!tree.nodes[e].in_tree || tree.nodes[e].j != 0) continue;
                auto r = ray(tree, e, 2 * cfg.params.L.size() + 2);
                if (r.entries.size() > best.entries.size()) best = r;
            }
            if (best.entries.empty())
                throw std::runtime_error("viewport hosts no chain to drive");
            std::vector<PlanarRect> members;
            for (auto e : best.entries) members.push_back(cat.entries[e].rect);
            auto road = make_road(members);
            bundle.notes.push_back("road chain length " + std::to_string(road.specs.size()));
            for (double p : cfg.p) {
                auto rs = road_survival(road, p, cfg.trials,
                                        derive_seed(cfg.params.seed, stream::trial, 2));
                bundle.experiments.push_back({"road", p, rs.joint});
                double product = 1.0;
                for (const auto& m : rs.marginals) product *= m.p_hat;
                std::cout << "road p=" << p << " joint=" << rs.joint.p_hat
                          << " product=" << product
                          << " span_failures=" << rs.span_failures << "\n";
                if (rs.span_failures > 0) {
                    bundle.notes.push_back("road span check failed");
                    rc = 2;
                }
            }
        } else if (name == "fkg") {
            PlanarRect sq(Block(0, 1), Block(0, 1));
            auto g = induced_rect_graph(sq);
            auto h = rect_crossing(g, sq, CrossDir::Horizontal);
            auto v = rect_crossing(g, sq, CrossDir::Vertical);
            EventFn eh = [&](const BondConfig& c) { return crossing_event(h, c); };
            EventFn ev = [&](const BondConfig& c) { return crossing_event(v, c); };
            for (double p : cfg.p) {
                auto r = fkg_check(g, eh, ev, p);
                bundle.experiments.push_back({"fkg", p, Estimate{r.p_joint, 0.0, 0}});
                std::cout << "fkg p=" << p << " joint=" << r.p_joint
                          << " product=" << r.p_a * r.p_b
                          << (r.pass ? " pass" : " FAIL") << "\n";
                if (!r.pass) {
                    bundle.notes.push_back("fkg correlation check failed");
                    rc = 2;
                }
            }
        }
    }
    finish("simulate", cfg, bundle);
    return rc;
}

SpanSpec resolve_span(const RunConfig& cfg, const RectCatalog& cat,
                      const SlabAssembly& assembly) {
    SpanMode mode = cfg.span_mode == "h"   ? SpanMode::Horizontal
                    : cfg.span_mode == "v" ? SpanMode::Vertical
                                           : SpanMode::Either;
    if (cfg.arena == "top_band") {
        std::int64_t top_j = static_cast<std::int64_t>(2 * cfg.params.L.size()) - 1;
        for (const auto& e : cat.entries)
            if (e.j == top_j && !e.clipped) return SpanSpec{e.rect, mode};
        throw std::runtime_error("no complete top band inside this viewport");
    }
    SpanSpec span = default_span(assembly);
    span.mode = mode;
    return span;
}

int run_census(const RunConfig& cfg) {
    ConfiguredPlan cp = plan_from_config(cfg);
    ReportBundle bundle;
    bundle.subcommand = "census";
    bundle.config = &cfg;
    bundle.plan = &cp.plan;
    bundle.plan_report = &cp.report;
    if (!cp.report.pass) {
        for (const auto& e : cp.report.errors) std::cout << "error: " << e << "\n";
        finish("census", cfg, bundle);
        return 2;
    }

    auto cat = build_catalog(cfg.params, config_viewport(cfg));
    auto tree = build_overlap_tree(cat);
    auto assembly = build_assembly(cat, tree, cp.plan.m, cfg.params.seed);
    auto span = resolve_span(cfg, cat, assembly);

    auto curve = spanning_census_curve(assembly, cfg.p, cfg.trials,
                                       derive_seed(cfg.params.seed, stream::trial, 3), span);
    for (std::size_t i = 0; i < cfg.p.size(); ++i) {
        bundle.census.push_back({cfg.p[i], curve[i]});
        std::cout << "census p=" << cfg.p[i] << " min=" << curve[i].min
                  << " median=" << curve[i].median << " max=" << curve[i].max
                  << " mean=" << curve[i].mean << "\n";
    }
    bundle.assembly = &assembly;
    finish("census", cfg, bundle);
    return 0;
}

int run_dual(const RunConfig& cfg) {
    PlanarRect box = config_viewport(cfg);
    auto g = induced_rect_graph(box);
    double p = cfg.p.front();
    auto omega = sample_config(g, p, derive_seed(cfg.params.seed, stream::witness));

    ReportBundle bundle;
    bundle.subcommand = "dual";
    bundle.config = &cfg;
    int rc = 0;

    auto dual = dual_of_config(omega);
    std::size_t open_primal = 0;
    for (auto b : omega.open) open_primal += b;
    bool conserved = open_primal + dual.open_count() == g.edge_count();
    std::cout << "primal edges=" << g.edge_count() << " open=" << open_primal
              << " dual open=" << dual.open_count()
              << (conserved ? " conserved" : " CONSERVATION FAILED") << "\n";
    if (!conserved) {
        bundle.notes.push_back("open-closed conservation failed");
        rc = 2;
    }

    auto back = primal_of_dual(dual, g);
    if (back.open != omega.open) {
        std::cout << "involution FAILED\n";
        bundle.notes.push_back("dual involution failed");
        rc = 2;
    }

    auto labels = label_clusters(omega);
    std::vector<std::uint32_t> order(labels.sizes.size());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return labels.sizes[a] > labels.sizes[b];
    });
    if (order.size() < 2) {
        std::cout << "fewer than two clusters, nothing to separate\n";
        bundle.notes.push_back("single cluster, no witness sought");
        finish("dual", cfg, bundle);
        return rc;
    }

    std::uint32_t c1 = order[0], c2 = order[1];
    auto witness = separation_witness(omega, labels, c1, c2);
    if (!witness) {
        std::cout << "no separating interface found\n";
        bundle.notes.push_back("witness search returned nothing");
        finish("dual", cfg, bundle);
        return 2;
    }
    bool ok = verify_separation(omega, labels, c1, c2, *witness);
    auto path = write_artifact(cfg.out, "witness-seed" + std::to_string(cfg.params.seed),
                               ".txt", dump_witness(*witness));
    std::cout << "witness edges=" << witness->edges.size()
              << (witness->is_cycle ? " cycle" : witness->is_simple_path ? " path" : " set")
              << (ok ? " verified" : " VERIFY FAILED") << "\n";
    std::cout << "witness: " << path << "\n";
    bundle.notes.push_back("witness edges " + std::to_string(witness->edges.size()) +
                           (ok ? ", verified" : ", verify failed"));
    if (!ok) rc = 2;
    finish("dual", cfg, bundle);
    return rc;
}

int run_render(const RunConfig& cfg) {
    std::string svg;
    if (cfg.view == "config") {
        svg = render_config_svg(cfg);
    } else {
        auto cat = build_catalog(cfg.params, config_viewport(cfg));
        if (cfg.view == "catalog") {
            svg = render_catalog_svg(cat);
        } else if (cfg.view == "window") {
            if (cat.windows.empty())
                throw std::runtime_error("viewport hosts no window to render");
            svg = render_window_svg(cat, 0);
        } else {
            ConfiguredPlan cp = plan_from_config(cfg);
            if (!cp.report.pass)
                throw std::runtime_error("plan rejected; nothing to render");
            auto tree = build_overlap_tree(cat);
            auto assembly = build_assembly(cat, tree, cp.plan.m, cfg.params.seed);
            svg = render_assembly_svg(assembly, config_viewport(cfg));
        }
    }
    auto path = write_artifact(cfg.out, cfg.view + "-seed" + std::to_string(cfg.params.seed),
                               ".svg", svg);
    std::cout << "render: " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slab percolation construction toolkit"};
    app.require_subcommand(1);

    Invocation plan_inv, build_inv, simulate_inv, census_inv, dual_inv, render_inv;
    plan_inv.attach(app.add_subcommand("plan", "derive and validate a parameter plan"));
    build_inv.attach(app.add_subcommand("build", "generate, audit, and assemble a catalog"));
    simulate_inv.attach(
        app.add_subcommand("simulate", "crossing, road, and correlation experiments"));
    census_inv.attach(app.add_subcommand("census", "count spanning components per trial"));
    dual_inv.attach(app.add_subcommand("dual", "dual configurations and separation witnesses"));
    render_inv.attach(app.add_subcommand("render", "draw a catalog, window, or assembly"));

    CLI11_PARSE(app, argc, argv);

    try {
        if (plan_inv.cmd->parsed()) return run_plan(plan_inv.load());
        if (build_inv.cmd->parsed()) return run_build(build_inv.load());
        if (simulate_inv.cmd->parsed()) return run_simulate(simulate_inv.load());
        if (census_inv.cmd->parsed()) return run_census(census_inv.load());
        if (dual_inv.cmd->parsed()) return run_dual(dual_inv.load());
        if (render_inv.cmd->parsed()) return run_render(render_inv.load());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
