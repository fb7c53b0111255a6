#include "slabperc/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace slabperc {
namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : v) {
        if (ch == ',') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

std::int64_t parse_int(std::size_t line, const std::string& key, const std::string& v) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        fail(line, key + " expects an integer, got '" + v + "'");
    return out;
}

double parse_double(std::size_t line, const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        fail(line, key + " expects a number, got '" + v + "'");
    }
}

bool parse_bool(std::size_t line, const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    fail(line, key + " expects true or false, got '" + v + "'");
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += ",";
        out += parts[i];
    }
    return out;
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

bool one_of(const std::string& v, std::initializer_list<const char*> allowed) {
    return std::any_of(allowed.begin(), allowed.end(),
                       [&](const char* a) { return v == a; });
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "missing key before '='");
        if (value.empty()) fail(lineno, key + " has no value");

        if (key == "l0") {
            cfg.params.l0 = parse_int(lineno, key, value);
            if (cfg.params.l0 < 1) fail(lineno, "l0 must be at least 1");
        } else if (key == "d0") {
            cfg.params.d0 = parse_int(lineno, key, value);
            if (cfg.params.d0 < 1) fail(lineno, "d0 must be at least 1");
        } else if (key == "L") {
            cfg.params.L.clear();
            for (const auto& part : split_list(value)) {
                auto Li = parse_int(lineno, key, part);
                if (Li < 2) fail(lineno, "L entries must be at least 2");
                cfg.params.L.push_back(Li);
            }
        } else if (key == "seed") {
            auto s = parse_int(lineno, key, value);
            if (s < 0) fail(lineno, "seed must be nonnegative");
            cfg.params.seed = static_cast<std::uint64_t>(s);
        } else if (key == "viewport") {
            auto x = value.find('x');
            if (x == std::string::npos) {
                cfg.viewport_w = cfg.viewport_h = parse_int(lineno, key, value);
            } else {
                cfg.viewport_w = parse_int(lineno, key, trim(value.substr(0, x)));
                cfg.viewport_h = parse_int(lineno, key, trim(value.substr(x + 1)));
            }
            if (cfg.viewport_w < 1 || cfg.viewport_h < 1)
                fail(lineno, "viewport sides must be positive");
        } else if (key == "gamma") {
            cfg.gamma = parse_double(lineno, key, value);
            if (!(cfg.gamma > 0.0)) fail(lineno, "gamma must be positive");
        } else if (key == "nu0") {
            cfg.nu0 = parse_int(lineno, key, value);
            if (cfg.nu0 < 1) fail(lineno, "nu0 must be at least 1");
        } else if (key == "c") {
            cfg.c = parse_double(lineno, key, value);
            if (!(cfg.c > 0.0)) fail(lineno, "c must be positive");
        } else if (key == "p") {
            cfg.p.clear();
            for (const auto& part : split_list(value)) {
                double pi = parse_double(lineno, key, part);
                if (pi < 0.0 || pi > 1.0) fail(lineno, "p entries must lie in [0, 1]");
                cfg.p.push_back(pi);
            }
        } else if (key == "trials") {
            auto t = parse_int(lineno, key, value);
            if (t < 1) fail(lineno, "trials must be at least 1");
            cfg.trials = static_cast<std::size_t>(t);
        } else if (key == "m") {
            cfg.m.clear();
            for (const auto& part : split_list(value)) {
                auto mi = parse_int(lineno, key, part);
                if (mi < 1) fail(lineno, "m entries must be at least 1");
                cfg.m.push_back(static_cast<std::uint32_t>(mi));
            }
        } else if (key == "experiments") {
            cfg.experiments.clear();
            for (const auto& part : split_list(value)) {
                if (!one_of(part, {"crossing", "road", "fkg"}))
                    fail(lineno, "unknown experiment '" + part + "'");
                cfg.experiments.push_back(part);
            }
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "strict") {
            cfg.strict = parse_bool(lineno, key, value);
        } else if (key == "span_mode") {
            if (!one_of(value, {"either", "h", "v"}))
                fail(lineno, "span_mode must be either, h, or v");
            cfg.span_mode = value;
        } else if (key == "arena") {
            if (!one_of(value, {"auto", "top_band"}))
                fail(lineno, "arena must be auto or top_band");
            cfg.arena = value;
        } else if (key == "view") {
            if (!one_of(value, {"catalog", "window", "assembly", "config"}))
                fail(lineno, "view must be catalog, window, assembly, or config");
            cfg.view = value;
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "l0 = " << cfg.params.l0 << "\n";
    os << "d0 = " << cfg.params.d0 << "\n";
    {
        std::vector<std::string> parts;
        for (auto Li : cfg.params.L) parts.push_back(std::to_string(Li));
        os << "L = " << join(parts) << "\n";
    }
    os << "seed = " << cfg.params.seed << "\n";
    os << "viewport = " << cfg.viewport_w << "x" << cfg.viewport_h << "\n";
    os << "gamma = " << fmt_double(cfg.gamma) << "\n";
    os << "nu0 = " << cfg.nu0 << "\n";
    os << "c = " << fmt_double(cfg.c) << "\n";
    {
        std::vector<std::string> parts;
        for (double pi : cfg.p) parts.push_back(fmt_double(pi));
        os << "p = " << join(parts) << "\n";
    }
    os << "trials = " << cfg.trials << "\n";
    if (!cfg.m.empty()) {
        std::vector<std::string> parts;
        for (auto mi : cfg.m) parts.push_back(std::to_string(mi));
        os << "m = " << join(parts) << "\n";
    }
    os << "experiments = " << join(cfg.experiments) << "\n";
    os << "out = " << cfg.out << "\n";
    os << "strict = " << (cfg.strict ? "true" : "false") << "\n";
    os << "span_mode = " << cfg.span_mode << "\n";
    os << "arena = " << cfg.arena << "\n";
    os << "view = " << cfg.view << "\n";
    return os.str();
}

PlanarRect config_viewport(const RunConfig& cfg) {
    return PlanarRect(Block(0, cfg.viewport_w), Block(0, cfg.viewport_h));
}

ConfiguredPlan plan_from_config(const RunConfig& cfg) {
    ConfiguredPlan out;
    out.plan = make_plan(cfg.params, cfg.gamma, cfg.nu0);
    if (!cfg.m.empty()) {
        if (cfg.m.size() != out.plan.m.size())
            throw std::invalid_argument(
                "config: m has " + std::to_string(cfg.m.size()) + " entries but the plan has " +
                std::to_string(out.plan.m.size()) + " indices");
        out.plan.m = cfg.m;
    }
    out.report = validate_plan(out.plan, cfg.strict);
    return out;
}

}  // namespace slabperc
