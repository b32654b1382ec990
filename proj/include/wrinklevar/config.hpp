#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "wrinklevar/hypotheses.hpp"
#include "wrinklevar/minimize.hpp"

// Strict key=value run configuration. Every key has a default; unknown keys
// and invariant violations are parse errors naming the key and line.

namespace wrinklevar {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    double lambda_from = 1.0;
    double lambda_to = 1.3;
    int steps = 6;

    void validate() const;
};

struct VerifyConfig {
    long long h1_samples = 100000;
    long long h2_samples = 1000000;
    int demo_grid = 257;  // nodes per side for the oscillatory-determinant demo
    int residual_tests = 20;

    void validate() const;
};

struct RunConfig {
    GridSpec grid{64, 32, 2.0, 1.0};
    MaterialParams material;
    double bc_lambda = 1.1;
    bool bc_clamped[4] = {true, true, false, false};  // left, right, bottom, top
    Vec2 load_m{0.0, 0.0};
    Vec3 load_b{0.0, 0.0, 0.0};
    MinimizerConfig minimizer;
    SweepConfig sweep;
    VerifyConfig verify;
    std::uint64_t seed = 1;
    std::string output_dir = "out";

    void validate() const;
    BoundarySpec boundary() const;
    LoadSpec loads() const;
};

// Parses key=value text ('#' starts a comment). Throws ConfigError with the
// offending key and line number.
RunConfig parse_config(const std::string& text);

// Canonical full listing; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

}  // namespace wrinklevar
