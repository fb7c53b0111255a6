#include "slabperc/planner.hpp"

#include <cmath>
#include <sstream>

namespace slabperc {

namespace {

constexpr std::uint32_t kSaturation = 64;

std::int64_t ceil_ratio(std::int64_t longer, std::int64_t shorter) {
    return (longer + shorter - 1) / shorter;
}

}  // namespace

RectDims rect_dimensions(const std::vector<LevelParams>& levels, int i) {
    if (i < 0 || i + 1 >= static_cast<int>(levels.size()))
        throw std::invalid_argument("rect_dimensions: index out of range");
    const auto& inner = levels[i];
    const auto& outer = levels[i + 1];
    RectDims d;
    d.vertical_w = inner.l;
    d.vertical_h = outer.d - inner.l;
    d.horizontal_w = outer.d + inner.d - inner.l;
    d.horizontal_h = inner.l;
    d.n_vertical = std::min(d.vertical_w, d.vertical_h);
    d.n_horizontal = std::min(d.horizontal_w, d.horizontal_h);
    d.lambda_vertical = ceil_ratio(std::max(d.vertical_w, d.vertical_h), d.n_vertical);
    d.lambda_horizontal =
        ceil_ratio(std::max(d.horizontal_w, d.horizontal_h), d.n_horizontal);
    return d;
}

KResult construct_k(const std::vector<double>& a) {
    KResult r;
    auto n = a.size();
    r.k.assign(n, 0);
    r.tail.assign(n, 0.0);
    if (n == 0) return r;
    for (auto w : a)
        if (w < 0.0 || !std::isfinite(w))
            throw std::invalid_argument("construct_k: weights must be finite and >= 0");
    double remainder = a[n - 1];
    double run = remainder;
    for (std::size_t j = n; j-- > 0;) {
        run += a[j];
        r.tail[j] = run;
    }
    // Walk thresholds until even the remainder alone is too big, or the
    // counter saturates on vanished tails.
    for (std::uint32_t s = 0; s <= kSaturation; ++s) {
        double bound = std::ldexp(1.0, -static_cast<int>(s));
        std::size_t js = n;
        for (std::size_t j = 0; j < n; ++j)
            if (r.tail[j] < bound) {
                js = j;
                break;
            }
        if (js == n && !(remainder < bound)) break;
        r.thresholds.push_back(js);
    }
    // k_j is the largest s whose threshold has been reached by j; zero
    // before the first threshold.
    for (std::size_t j = 0; j < n; ++j) {
        std::uint32_t best = 0;
        for (std::size_t s = 0; s < r.thresholds.size(); ++s)
            if (r.thresholds[s] <= j) best = static_cast<std::uint32_t>(s);
        r.k[j] = std::min(best, kSaturation);
    }
    for (std::size_t j = 0; j < n; ++j) r.weighted_sum += a[j] * r.k[j];
    return r;
}

ParamPlan make_plan(const ParamSeed& seed, double gamma, std::int64_t nu0) {
    if (!(gamma > 0.0)) throw std::invalid_argument("make_plan: gamma must be positive");
    if (nu0 < 1) throw std::invalid_argument("make_plan: nu0 must be >= 1");
    ParamPlan p;
    p.seed = seed;
    p.gamma = gamma;
    p.nu0 = nu0;
    p.levels = derive_params(seed);
    auto K = seed.L.size();
    for (std::size_t i = 0; i < K; ++i) {
        auto d = rect_dimensions(p.levels, static_cast<int>(i));
        p.n.push_back(d.n_vertical);
        p.n.push_back(d.n_horizontal);
        p.lambda.push_back(d.lambda_vertical);
        p.lambda.push_back(d.lambda_horizontal);
    }
    for (std::size_t j = 0; j < p.n.size(); ++j)
        p.a.push_back(static_cast<double>(p.lambda[j]) /
                      std::pow(static_cast<double>(p.n[j]), gamma));
    p.k = construct_k(p.a).k;
    p.m.assign(p.n.size(), 1);
    return p;
}

ChooseResult choose_m(const ParamPlan& plan) {
    ChooseResult r;
    std::uint32_t prev = 1;
    for (std::size_t j = 0; j < plan.n.size(); ++j) {
        double n = static_cast<double>(plan.n[j]);
        // Caps: tail counter k^{1/gamma}, shorter side, margin over nu0,
        // slice side of at least 3.
        std::int64_t tail_cap = static_cast<std::int64_t>(std::floor(
            std::pow(static_cast<double>(plan.k[j]), 1.0 / plan.gamma) + 1e-9));
        std::int64_t margin_cap =
            static_cast<std::int64_t>(std::ceil(n / (2.0 * plan.nu0))) - 1;
        while (margin_cap > 0 &&
               !(n / (2.0 * margin_cap) > static_cast<double>(plan.nu0)))
            --margin_cap;
        std::int64_t geom_cap = std::min<std::int64_t>(
            plan.n[j], std::min<std::int64_t>(margin_cap, plan.n[j] / 3));
        std::int64_t cap = std::min(tail_cap, geom_cap);
        if (cap < static_cast<std::int64_t>(prev)) {
            std::ostringstream os;
            os << "choose_m: no feasible multiplicity at index " << j << " (caps allow "
               << cap << ", need at least " << prev << ")";
            throw std::invalid_argument(os.str());
        }
        auto mj = static_cast<std::uint32_t>(cap);
        if (mj > prev) r.increases.push_back(j);
        // At the truncation edge, note whether geometry rather than the tail
        // counter limited the last step; if the counter binds, a longer plan
        // would keep raising m.
        if (j + 1 == plan.n.size()) r.growth_capped = geom_cap <= tail_cap;
        r.m.push_back(mj);
        prev = mj;
    }
    return r;
}

PlanReport validate_plan(const ParamPlan& plan, bool strict) {
    PlanReport rep;
    auto fail = [&](std::size_t j, const std::string& what) {
        std::ostringstream os;
        os << "index " << j << ": " << what;
        rep.errors.push_back(os.str());
        rep.pass = false;
    };
    auto warn = [&](std::size_t j, const std::string& what) {
        std::ostringstream os;
        os << "index " << j << ": " << what;
        rep.warnings.push_back(os.str());
    };
    auto J = plan.n.size();
    if (plan.m.size() != J || plan.lambda.size() != J || plan.k.size() != J ||
        plan.a.size() != J) {
        rep.errors.push_back("plan arrays disagree in length");
        rep.pass = false;
        return rep;
    }
    for (std::size_t i = 0; i < plan.seed.L.size(); ++i)
        rep.sum_inverse_L += 1.0 / static_cast<double>(plan.seed.L[i]);
    for (std::size_t i = 0; i + 1 < plan.seed.L.size(); ++i)
        if (plan.seed.L[i + 1] < plan.seed.L[i]) {
            warn(i + 1, "subdivision counts decrease; the inverse sum grows");
            break;
        }

    rep.n_strictly_increasing = true;
    rep.scaling_identity_ok = true;
    for (std::size_t j = 0; j < J; ++j) {
        double n = static_cast<double>(plan.n[j]);
        double m = static_cast<double>(plan.m[j]);
        double lam = static_cast<double>(plan.lambda[j]);
        if (plan.m[j] < 1) fail(j, "multiplicity below 1");
        if (j > 0 && plan.m[j] < plan.m[j - 1]) fail(j, "multiplicities decrease");
        if (j > 0 && plan.n[j] < plan.n[j - 1]) fail(j, "shorter sides decrease");
        if (j > 0 && plan.n[j] == plan.n[j - 1]) rep.n_strictly_increasing = false;
        if (plan.m[j] >= static_cast<std::uint32_t>(plan.n[j]))
            fail(j, "multiplicity reaches the shorter side");
        if (plan.m[j] >= 2) {
            if (!(n / (2.0 * m) > static_cast<double>(plan.nu0)))
                fail(j, "margin n/(2m) does not clear nu0");
            if (plan.n[j] / static_cast<std::int64_t>(plan.m[j]) < 3)
                fail(j, "slices would drop below side 3");
            if (j > 0 && plan.m[j - 1] >= 2) {
                rep.seam_risk = true;
                fail(j, "adjacent multiplicities above 1 collide at fold seams");
            }
        } else {
            if (!(n / 2.0 > static_cast<double>(plan.nu0)))
                warn(j, "identity bag below the nu0 margin");
            if (plan.n[j] < 3) warn(j, "identity bag narrower than 3");
        }
        double cap = std::pow(static_cast<double>(plan.k[j]), 1.0 / plan.gamma);
        if (m > cap + 1e-9)
            warn(j, plan.k[j] == 0 ? "tail counter unresolved at this truncation"
                                   : "multiplicity exceeds the tail cap");
        rep.sum_target += std::pow(m, plan.gamma) * lam / std::pow(n, plan.gamma);
        double direct = lam / std::pow(n / m, plan.gamma);
        double scaled = std::pow(m, plan.gamma) * lam / std::pow(n, plan.gamma);
        if (std::abs(direct - scaled) > 1e-9 * std::max(1.0, std::abs(direct)))
            rep.scaling_identity_ok = false;
        rep.weighted_k_sum += plan.a[j] * plan.k[j];
    }
    if (strict && !rep.n_strictly_increasing) {
        rep.errors.push_back("strict mode: shorter sides must strictly increase");
        rep.pass = false;
    }
    return rep;
}

}  // namespace slabperc
