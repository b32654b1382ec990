#include "wrinklevar/config.hpp"

#include <charconv>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>

#include "wrinklevar/numfmt.hpp"

namespace wrinklevar {

void SweepConfig::validate() const {
    if (steps < 1) throw std::invalid_argument("sweep.steps must be >= 1");
    if (!(lambda_from > 0.0) || !(lambda_to > 0.0))
        throw std::invalid_argument("sweep stretches must be positive");
}

void VerifyConfig::validate() const {
    if (h1_samples < 1 || h2_samples < 1)
        throw std::invalid_argument("verify sample counts must be >= 1");
    if (demo_grid < 4) throw std::invalid_argument("verify.demo_grid must be >= 4");
    if (residual_tests < 1) throw std::invalid_argument("verify.residual_tests must be >= 1");
}

void RunConfig::validate() const {
    grid.validate();
    material.validate();
    if (!(bc_lambda > 0.0)) throw std::invalid_argument("bc.lambda must be > 0");
    if (!(bc_clamped[0] || bc_clamped[1] || bc_clamped[2] || bc_clamped[3]))
        throw std::invalid_argument("bc.clamped_sides must name at least one side");
    minimizer.validate();
    sweep.validate();
    verify.validate();
}

BoundarySpec RunConfig::boundary() const {
    BoundarySpec bc = BoundarySpec::uniaxial_stretch(bc_lambda);
    for (int s = 0; s < 4; ++s) bc.clamped[s] = bc_clamped[s];
    return bc;
}

LoadSpec RunConfig::loads() const { return LoadSpec::uniform(grid, load_m, load_b); }

namespace {

const char* side_names[4] = {"left", "right", "bottom", "top"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Parser {
    RunConfig& cfg;
    int line = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("config line " + std::to_string(line) + ": " + what);
    }

    double num(const std::string& key, const std::string& v) const {
        char* end = nullptr;
        const double d = std::strtod(v.c_str(), &end);
        if (end != v.c_str() + v.size() || v.empty())
            fail("malformed value '" + v + "' for key '" + key + "'");
        return d;
    }

    long long integer(const std::string& key, const std::string& v) const {
        long long out = 0;
        const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || p != v.data() + v.size())
            fail("malformed integer '" + v + "' for key '" + key + "'");
        return out;
    }

    std::uint64_t uinteger(const std::string& key, const std::string& v) const {
        std::uint64_t out = 0;
        const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || p != v.data() + v.size())
            fail("malformed unsigned integer '" + v + "' for key '" + key + "'");
        return out;
    }

    bool boolean(const std::string& key, const std::string& v) const {
        if (v == "true") return true;
        if (v == "false") return false;
        fail("malformed boolean '" + v + "' for key '" + key + "' (use true/false)");
    }

    void sides(const std::string& key, const std::string& v, bool out[4]) const {
        for (int s = 0; s < 4; ++s) out[s] = false;
        std::stringstream ss(v);
        std::string item;
        bool any = false;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            bool known = false;
            for (int s = 0; s < 4; ++s) {
                if (item == side_names[s]) {
                    out[s] = true;
                    known = true;
                    any = true;
                }
            }
            if (!known) fail("unknown side '" + item + "' for key '" + key + "'");
        }
        if (!any) fail("key '" + key + "' needs at least one side");
    }

    void assign(const std::string& key, const std::string& v) {
        if (key == "grid.nx") cfg.grid.nx = static_cast<int>(integer(key, v));
        else if (key == "grid.ny") cfg.grid.ny = static_cast<int>(integer(key, v));
        else if (key == "grid.lx") cfg.grid.Lx = num(key, v);
        else if (key == "grid.ly") cfg.grid.Ly = num(key, v);
        else if (key == "material.c1") cfg.material.c1 = num(key, v);
        else if (key == "material.c2") cfg.material.c2 = num(key, v);
        else if (key == "material.d") cfg.material.bending_stiffness = num(key, v);
        else if (key == "material.nu") cfg.material.nu = num(key, v);
        else if (key == "bc.lambda") cfg.bc_lambda = num(key, v);
        else if (key == "bc.clamped_sides") sides(key, v, cfg.bc_clamped);
        else if (key == "load.m1") cfg.load_m.x = num(key, v);
        else if (key == "load.m2") cfg.load_m.y = num(key, v);
        else if (key == "load.b1") cfg.load_b.x = num(key, v);
        else if (key == "load.b2") cfg.load_b.y = num(key, v);
        else if (key == "load.b3") cfg.load_b.z = num(key, v);
        else if (key == "minimizer.gtol_rel") cfg.minimizer.gtol_rel = num(key, v);
        else if (key == "minimizer.gtol_floor") cfg.minimizer.gtol_floor = num(key, v);
        else if (key == "minimizer.max_iterations")
            cfg.minimizer.max_iterations = static_cast<int>(integer(key, v));
        else if (key == "minimizer.memory") cfg.minimizer.memory = static_cast<int>(integer(key, v));
        else if (key == "minimizer.backtrack_factor") cfg.minimizer.backtrack_factor = num(key, v);
        else if (key == "minimizer.armijo_c") cfg.minimizer.armijo_c = num(key, v);
        else if (key == "minimizer.j_min") cfg.minimizer.j_min = num(key, v);
        else if (key == "minimizer.perturb_delta_rel") cfg.minimizer.perturb_delta_rel = num(key, v);
        else if (key == "minimizer.perturb_mode")
            cfg.minimizer.perturb_mode = static_cast<int>(integer(key, v));
        else if (key == "minimizer.freeze_w") cfg.minimizer.freeze_w = boolean(key, v);
        else if (key == "sweep.lambda_from") cfg.sweep.lambda_from = num(key, v);
        else if (key == "sweep.lambda_to") cfg.sweep.lambda_to = num(key, v);
        else if (key == "sweep.steps") cfg.sweep.steps = static_cast<int>(integer(key, v));
        else if (key == "verify.h1_samples") cfg.verify.h1_samples = integer(key, v);
        else if (key == "verify.h2_samples") cfg.verify.h2_samples = integer(key, v);
        else if (key == "verify.demo_grid") cfg.verify.demo_grid = static_cast<int>(integer(key, v));
        else if (key == "verify.residual_tests")
            cfg.verify.residual_tests = static_cast<int>(integer(key, v));
        else if (key == "seed") cfg.seed = uinteger(key, v);
        else if (key == "output.dir") cfg.output_dir = v;
        else fail("unknown key '" + key + "'");
    }
};

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    Parser parser{cfg};
    std::stringstream ss(text);
    std::string raw;
    std::string pending_key;
    while (std::getline(ss, raw)) {
        ++parser.line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string lineText = trim(raw);
        if (lineText.empty()) continue;
        const auto eq = lineText.find('=');
        if (eq == std::string::npos) parser.fail("expected key = value");
        const std::string key = trim(lineText.substr(0, eq));
        const std::string value = trim(lineText.substr(eq + 1));
        if (key.empty()) parser.fail("empty key");
        try {
            parser.assign(key, value);
        } catch (const std::invalid_argument& err) {
            parser.fail(err.what());
        }
    }
    try {
        cfg.validate();
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("config: ") + err.what());
    }
    return cfg;
}

std::string serialize_config(const RunConfig& c) {
    std::ostringstream out;
    out << "grid.nx = " << c.grid.nx << "\n";
    out << "grid.ny = " << c.grid.ny << "\n";
    out << "grid.lx = " << fmt17(c.grid.Lx) << "\n";
    out << "grid.ly = " << fmt17(c.grid.Ly) << "\n";
    out << "material.c1 = " << fmt17(c.material.c1) << "\n";
    out << "material.c2 = " << fmt17(c.material.c2) << "\n";
    out << "material.d = " << fmt17(c.material.bending_stiffness) << "\n";
    out << "material.nu = " << fmt17(c.material.nu) << "\n";
    out << "bc.lambda = " << fmt17(c.bc_lambda) << "\n";
    out << "bc.clamped_sides = ";
    bool first = true;
    for (int s = 0; s < 4; ++s) {
        if (!c.bc_clamped[s]) continue;
        if (!first) out << ",";
        out << side_names[s];
        first = false;
    }
    out << "\n";
    out << "load.m1 = " << fmt17(c.load_m.x) << "\n";
    out << "load.m2 = " << fmt17(c.load_m.y) << "\n";
    out << "load.b1 = " << fmt17(c.load_b.x) << "\n";
    out << "load.b2 = " << fmt17(c.load_b.y) << "\n";
    out << "load.b3 = " << fmt17(c.load_b.z) << "\n";
    out << "minimizer.gtol_rel = " << fmt17(c.minimizer.gtol_rel) << "\n";
    out << "minimizer.gtol_floor = " << fmt17(c.minimizer.gtol_floor) << "\n";
    out << "minimizer.max_iterations = " << c.minimizer.max_iterations << "\n";
    out << "minimizer.memory = " << c.minimizer.memory << "\n";
    out << "minimizer.backtrack_factor = " << fmt17(c.minimizer.backtrack_factor) << "\n";
    out << "minimizer.armijo_c = " << fmt17(c.minimizer.armijo_c) << "\n";
    out << "minimizer.j_min = " << fmt17(c.minimizer.j_min) << "\n";
    out << "minimizer.perturb_delta_rel = " << fmt17(c.minimizer.perturb_delta_rel) << "\n";
    out << "minimizer.perturb_mode = " << c.minimizer.perturb_mode << "\n";
    out << "minimizer.freeze_w = " << (c.minimizer.freeze_w ? "true" : "false") << "\n";
    out << "sweep.lambda_from = " << fmt17(c.sweep.lambda_from) << "\n";
    out << "sweep.lambda_to = " << fmt17(c.sweep.lambda_to) << "\n";
    out << "sweep.steps = " << c.sweep.steps << "\n";
    out << "verify.h1_samples = " << c.verify.h1_samples << "\n";
    out << "verify.h2_samples = " << c.verify.h2_samples << "\n";
    out << "verify.demo_grid = " << c.verify.demo_grid << "\n";
    out << "verify.residual_tests = " << c.verify.residual_tests << "\n";
    out << "seed = " << c.seed << "\n";
    out << "output.dir = " << c.output_dir << "\n";
    return out.str();
}

}  // namespace wrinklevar
