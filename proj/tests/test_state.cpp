#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wrinklevar/rng.hpp"
#include "wrinklevar/state.hpp"

using namespace wrinklevar;

TEST_SUITE("state") {

TEST_CASE("apply_boundary writes the trace and is idempotent") {
    const GridSpec g{9, 5, 2.0, 1.0};
    BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.1);
    DeformationState s = DeformationState::reference(g);
    for (int n = 0; n < g.num_nodes(); ++n) s.w[n] = 0.3;  // junk to be overwritten on Gamma

    const auto [clamped, mask] = apply_boundary(s, bc);
    for (int j = 0; j < g.ny; ++j) {
        for (int i : {0, g.nx - 1}) {
            const int n = g.node(i, j);
            CHECK(clamped.h[n].x == doctest::Approx(1.1 * g.x1(i)));
            CHECK(clamped.h[n].y == doctest::Approx(g.x2(j)));
            CHECK(clamped.w[n] == 0.0);
            CHECK(mask.is_fixed(dof_index(g, i, j, 0)));
            CHECK(mask.is_fixed(dof_index(g, i, j, 1)));
            CHECK(mask.is_fixed(dof_index(g, i, j, 2)));
        }
    }
    // Interior untouched.
    CHECK(clamped.w[g.node(3, 2)] == 0.3);

    const auto [twice, mask2] = apply_boundary(clamped, bc);
    for (int n = 0; n < g.num_nodes(); ++n) {
        CHECK(twice.h[n].x == clamped.h[n].x);
        CHECK(twice.h[n].y == clamped.h[n].y);
        CHECK(twice.w[n] == clamped.w[n]);
    }
    CHECK(mask2.size() == mask.size());
}

TEST_CASE("mask counting on a 5x5 grid") {
    const GridSpec g{5, 5, 1.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.0);
    const DofMask mask = apply_boundary(DeformationState::reference(g), bc).second;
    // Two short sides: 10 Gamma nodes. 2 per node for h, 1 for w, 1 ghost row.
    CHECK(mask.fixed_count() == 30);
    CHECK(mask.ghost_rows == 10);
    CHECK(mask.size() == 40);
}

TEST_CASE("boundary spec validation") {
    BoundarySpec none = BoundarySpec::none();
    CHECK_THROWS_AS(none.validate(), std::invalid_argument);
    BoundarySpec ok = BoundarySpec::uniaxial_stretch(1.2);
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.clamped_ends().x_lo);
    CHECK(ok.clamped_ends().x_hi);
    CHECK_FALSE(ok.clamped_ends().y_lo);
}

TEST_CASE("load potential values") {
    const GridSpec g{9, 9, 1.0, 1.0};
    DeformationState s = DeformationState::reference(g);
    CHECK(load_potential(s, LoadSpec::zero(g)) == 0.0);

    // b = (0,0,1), w == c integrates to c on the unit square.
    for (int n = 0; n < g.num_nodes(); ++n) s.w[n] = 0.37;
    CHECK(load_potential(s, LoadSpec::uniform(g, {0, 0}, {0, 0, 1})) ==
          doctest::Approx(0.37).epsilon(1e-14));

    // m = (1,0), w = x1: grad w = (1,0).
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) s.w[g.node(i, j)] = g.x1(i);
    CHECK(load_potential(s, LoadSpec::uniform(g, {1, 0}, {0, 0, 0})) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("load potential is linear in state and loads") {
    const GridSpec g{8, 7, 1.4, 0.9};
    SplitMix64 rng(41);
    DeformationState sa = DeformationState::reference(g);
    DeformationState sb = sa;
    for (int n = 0; n < g.num_nodes(); ++n) {
        sa.h[n].x += rng.uniform(-0.1, 0.1);
        sa.h[n].y += rng.uniform(-0.1, 0.1);
        sa.w[n] = rng.uniform(-0.1, 0.1);
        sb.h[n].x += rng.uniform(-0.1, 0.1);
        sb.h[n].y += rng.uniform(-0.1, 0.1);
        sb.w[n] = rng.uniform(-0.1, 0.1);
    }
    const LoadSpec la = LoadSpec::uniform(g, {0.7, -0.2}, {0.1, 0.4, -0.3});
    const LoadSpec lb = LoadSpec::uniform(g, {-0.3, 0.9}, {0.6, -0.1, 0.8});

    // Superposition in the state argument.
    DeformationState mix = sa;
    for (int n = 0; n < g.num_nodes(); ++n) {
        mix.h[n] = mix.h[n] + sb.h[n];
        mix.w[n] += sb.w[n];
    }
    CHECK(load_potential(mix, la) ==
          doctest::Approx(load_potential(sa, la) + load_potential(sb, la)).epsilon(1e-12));

    // Superposition in the load argument.
    LoadSpec lsum = la;
    for (int n = 0; n < g.num_nodes(); ++n) {
        lsum.m[n] = lsum.m[n] + lb.m[n];
        lsum.b[n] = lsum.b[n] + lb.b[n];
    }
    CHECK(load_potential(sa, lsum) ==
          doctest::Approx(load_potential(sa, la) + load_potential(sa, lb)).epsilon(1e-12));
}

TEST_CASE("area ratio field and feasibility") {
    const GridSpec g{8, 8, 1.0, 1.0};
    const BoundarySpec bc = BoundarySpec::uniaxial_stretch(1.3);
    const DeformationState s = state_from_boundary_maps(g, bc);
    const ScalarField j = area_ratio_field(s);
    for (double v : j) CHECK(v == doctest::Approx(1.3).epsilon(1e-12));
    CHECK(min_area_ratio(s) == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("dimension mismatches are rejected") {
    const GridSpec g{8, 8, 1.0, 1.0};
    DeformationState s = DeformationState::reference(g);
    s.w.resize(10);
    CHECK_THROWS_AS(s.check_consistent(), std::invalid_argument);
    CHECK_THROWS_AS(load_potential(s, LoadSpec::zero(g)), std::invalid_argument);
}

}  // TEST_SUITE
