#include "wrinklevar/hypotheses.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wrinklevar/numfmt.hpp"
#include "wrinklevar/pairing.hpp"
#include "wrinklevar/rng.hpp"

namespace wrinklevar {

namespace {

struct GammaPoint {
    SymMat2 k;
    Mat32 f;
    double j;
};

SymMat2 draw_sym2_in_ball(SplitMix64& rng, double rmax) {
    SymMat2 k{rng.uniform(-rmax, rmax), rng.uniform(-rmax, rmax), rng.uniform(-rmax, rmax)};
    const double r = frob(k);
    if (r > rmax) k = (rmax / r) * k;
    return k;
}

Mat32 draw_mat32_in_ball(SplitMix64& rng, double rmax) {
    Mat32 f{rng.uniform(-rmax, rmax), rng.uniform(-rmax, rmax), rng.uniform(-rmax, rmax),
            rng.uniform(-rmax, rmax), rng.uniform(-rmax, rmax), rng.uniform(-rmax, rmax)};
    const double r = frob(f);
    if (r > rmax) f = (rmax / r) * f;
    return f;
}

GammaPoint draw_point(SplitMix64& rng, const SampleBox& box) {
    GammaPoint z;
    z.k = draw_sym2_in_ball(rng, box.k_max);
    z.f = draw_mat32_in_ball(rng, box.f_max);
    z.j = rng.uniform(box.j_min, box.j_max);
    return z;
}

GammaPoint midpoint(const GammaPoint& a, const GammaPoint& b) {
    return {0.5 * (a.k + b.k), 0.5 * (a.f + b.f), 0.5 * (a.j + b.j)};
}

std::string describe(const GammaPoint& z) {
    return "K=(" + fmt17(z.k.k11) + "," + fmt17(z.k.k12) + "," + fmt17(z.k.k22) + ") F=(" +
           fmt17(z.f.m11) + "," + fmt17(z.f.m12) + "," + fmt17(z.f.m21) + "," + fmt17(z.f.m22) +
           "," + fmt17(z.f.m31) + "," + fmt17(z.f.m32) + ") J=" + fmt17(z.j);
}

// Deterministic parallel min-reduction over sample margins. The margin
// functional is evaluated per index from its own substream, so the winning
// (margin, index) pair is independent of scheduling and worker count.
template <class MarginFn>
void scan_samples(long long n, double tol_floor, const MarginFn& margin_of,
                  long long& violations, double& worst_margin, long long& worst_index) {
    violations = 0;
    worst_margin = std::numeric_limits<double>::infinity();
    worst_index = -1;
#pragma omp parallel
    {
        long long local_viol = 0;
        double local_worst = std::numeric_limits<double>::infinity();
        long long local_idx = -1;
#pragma omp for nowait schedule(static)
        for (long long i = 0; i < n; ++i) {
            double tol = tol_floor;
            const double m = margin_of(i, tol);
            if (m < -tol) ++local_viol;
            if (m < local_worst || (m == local_worst && i < local_idx)) {
                local_worst = m;
                local_idx = i;
            }
        }
#pragma omp critical
        {
            violations += local_viol;
            if (local_worst < worst_margin ||
                (local_worst == worst_margin &&
                 (worst_index < 0 || (local_idx >= 0 && local_idx < worst_index)))) {
                worst_margin = local_worst;
                worst_index = local_idx;
            }
        }
    }
}

}  // namespace

void SampleBox::validate() const {
    if (!(j_min > 0.0)) throw std::invalid_argument("sample box needs j_min > 0");
    if (!(j_max >= j_min)) throw std::invalid_argument("sample box needs j_max >= j_min");
    if (!(k_max > 0.0) || !(f_max > 0.0))
        throw std::invalid_argument("sample box needs positive radii");
    if (samples < 1) throw std::invalid_argument("sample box needs samples >= 1");
}

HypothesisReport check_convexity_H1(const MaterialParams& p, const SampleBox& box) {
    box.validate();
    const auto margin_of = [&](long long i, double& tol) {
        SplitMix64 rng = substream(box.seed, static_cast<std::uint64_t>(i));
        const GammaPoint a = draw_point(rng, box);
        const GammaPoint b = draw_point(rng, box);
        const GammaPoint mid = midpoint(a, b);
        const double ga = gamma_density(a.k, a.f, a.j, p);
        const double gb = gamma_density(b.k, b.f, b.j, p);
        const double gm = gamma_density(mid.k, mid.f, mid.j, p);
        tol = 1e-12 * std::max(1.0, std::fabs(ga) + std::fabs(gb));
        return 0.5 * (ga + gb) - gm;
    };

    long long violations, worst_index;
    double worst;
    scan_samples(box.samples, 0.0, margin_of, violations, worst, worst_index);

    HypothesisReport r;
    r.name = "H1_midpoint_convexity";
    r.samples = box.samples;
    r.seed = box.seed;
    r.violations = violations;
    r.worst_margin = worst;
    r.pass = violations == 0;
    if (!r.pass && worst_index >= 0) {
        SplitMix64 rng = substream(box.seed, static_cast<std::uint64_t>(worst_index));
        const GammaPoint a = draw_point(rng, box);
        const GammaPoint b = draw_point(rng, box);
        r.witness = "sample=" + std::to_string(worst_index) + " za[" + describe(a) + "] zb[" +
                    describe(b) + "]";
    }
    return r;
}

HypothesisReport check_growth_H2(const MaterialParams& p, const SampleBox& box) {
    box.validate();
    const GrowthConstants gc = derive_growth_constants(p);
    const auto margin_of = [&](long long i, double&) {
        SplitMix64 rng = substream(box.seed, static_cast<std::uint64_t>(i));
        const GammaPoint z = draw_point(rng, box);
        const double w = gamma_density(z.k, z.f, z.j, p);
        const double bound = gc.C1 * (std::pow(frob(z.k), gc.p) + std::pow(frob(z.f), gc.q) +
                                      std::pow(z.j, gc.r)) +
                             gc.C2;
        return w - bound;
    };

    long long violations, worst_index;
    double worst;
    scan_samples(box.samples, 1e-12, margin_of, violations, worst, worst_index);

    HypothesisReport r;
    r.name = "H2_growth";
    r.samples = box.samples;
    r.seed = box.seed;
    r.violations = violations;
    r.worst_margin = worst;
    r.pass = violations == 0;
    if (!r.pass && worst_index >= 0) {
        SplitMix64 rng = substream(box.seed, static_cast<std::uint64_t>(worst_index));
        const GammaPoint z = draw_point(rng, box);
        r.witness = "sample=" + std::to_string(worst_index) + " [" + describe(z) + "]";
    }
    return r;
}

HypothesisReport check_blowup_H3(const MaterialParams& p, const std::vector<double>& j_seq) {
    if (j_seq.empty()) throw std::invalid_argument("H3 needs a nonempty J sequence");
    for (std::size_t t = 0; t < j_seq.size(); ++t) {
        if (!(j_seq[t] > 0.0)) throw std::invalid_argument("H3 sequence must stay positive");
        if (t > 0 && !(j_seq[t] < j_seq[t - 1]))
            throw std::invalid_argument("H3 sequence must be strictly decreasing");
    }
    const Mat32 f_ref = planar_embedding(Mat2::identity());
    const double floor_coeff = 3.0 * (p.c1 + p.c2);

    HypothesisReport r;
    r.name = "H3_blowup";
    r.samples = static_cast<long long>(j_seq.size());
    r.pass = true;
    r.worst_margin = std::numeric_limits<double>::infinity();
    double prev = -std::numeric_limits<double>::infinity();
    double prev_j = std::numeric_limits<double>::infinity();
    for (double j : j_seq) {
        const double val = gamma_density(SymMat2{}, f_ref, j, p);
        const double barrier_margin = val - (p.c1 / (j * j) - floor_coeff);
        r.worst_margin = std::min(r.worst_margin, barrier_margin);
        if (barrier_margin < 0.0) {
            r.pass = false;
            if (r.witness.empty())
                r.witness = "J=" + fmt17(j) + " value=" + fmt17(val) + " below barrier floor";
        }
        if (prev_j < 1.0 && !(val > prev)) {
            r.pass = false;
            if (r.witness.empty())
                r.witness = "J=" + fmt17(j) + " breaks monotone increase (" + fmt17(val) +
                            " <= " + fmt17(prev) + ")";
        }
        prev = val;
        prev_j = j;
    }
    if (!r.pass) ++r.violations;
    return r;
}

double rank_one_second_derivative(const Mat32& f0, Vec2 b, const MaterialParams& p) {
    // S = dPhi/dC for Phi = c1(tr C + det C^-1 - 3) + c2(det C + tr C det C^-1 - 3):
    // S = c1 (I - det C^-1 C^-1) + c2 (det C C^-1 + det C^-1 I - tr C det C^-1 C^-1).
    const SymMat2 c = right_cauchy_green(f0);
    const double dc = det(c);
    if (!(dc > 0.0)) throw std::domain_error("rank_one_second_derivative: det C must be > 0");
    const SymMat2 cinv = inverse(c);
    const double tr = trace(c);
    const SymMat2 s = p.c1 * (SymMat2::identity() + (-1.0 / dc) * cinv) +
                      p.c2 * (dc * cinv + (1.0 / dc) * SymMat2::identity() +
                              (-tr / dc) * cinv);
    const SymMat2 bb{b.x * b.x, b.x * b.y, b.y * b.y};
    return 2.0 * ddot(s, bb);
}

double rank_one_second_difference(const Mat32& f0, Vec2 b, const MaterialParams& p) {
    const double dt = 1e-4;
    const auto probe = [&](double t) {
        Mat32 f = f0;
        f.m31 += t * b.x;
        f.m32 += t * b.y;
        return spatial_membrane_energy(f, p);
    };
    return (probe(dt) - 2.0 * probe(0.0) + probe(-dt)) / (dt * dt);
}

RankOneWitness find_rank_one_nonconvexity(const MaterialParams& p) {
    // Lateral probe of stretched states first; descending l1, ascending l2.
    const Vec2 dirs[2] = {{0.0, 1.0}, {1.0, 0.0}};
    for (int i1 = 12; i1 >= 1; --i1) {
        const double l1 = 0.25 * i1;
        for (int i2 = 1; i2 <= 12; ++i2) {
            const double l2 = 0.25 * i2;
            const Mat32 f0 = planar_embedding(Mat2::diag(l1, l2));
            for (const Vec2& b : dirs) {
                const double fd = rank_one_second_difference(f0, b, p);
                if (fd < 0.0) {
                    RankOneWitness w;
                    w.f0 = f0;
                    w.a = {0.0, 0.0, 1.0};
                    w.b = b;
                    w.g2_fd = fd;
                    w.g2_closed_form = rank_one_second_derivative(f0, b, p);
                    return w;
                }
            }
        }
    }
    throw std::runtime_error("find_rank_one_nonconvexity: no witness found on the scan grid");
}

HypothesisReport check_planar_polyconvexity(const MaterialParams& p, const SampleBox& box) {
    box.validate();
    const auto rep = [&p](const Mat2& f, double delta) {
        const double f2 = frob2(f);
        const double inv_d2 = 1.0 / (delta * delta);
        return p.c1 * (f2 + inv_d2 - 3.0) + p.c2 * (delta * delta + f2 * inv_d2 - 3.0);
    };
    const auto draw_planar = [&box](SplitMix64& rng, Mat2& f, double& delta) {
        f = {rng.uniform(-box.f_max, box.f_max), rng.uniform(-box.f_max, box.f_max),
             rng.uniform(-box.f_max, box.f_max), rng.uniform(-box.f_max, box.f_max)};
        const double r = std::sqrt(frob2(f));
        if (r > box.f_max) f = (box.f_max / r) * f;
        delta = rng.uniform(box.j_min, box.j_max);
    };
    const auto margin_of = [&](long long i, double& tol) {
        SplitMix64 rng = substream(box.seed, static_cast<std::uint64_t>(i));
        Mat2 fa, fb;
        double da, db;
        draw_planar(rng, fa, da);
        draw_planar(rng, fb, db);
        const double va = rep(fa, da);
        const double vb = rep(fb, db);
        const double vm = rep(0.5 * (fa + fb), 0.5 * (da + db));
        tol = 1e-12 * std::max(1.0, std::fabs(va) + std::fabs(vb));
        return 0.5 * (va + vb) - vm;
    };

    long long violations, worst_index;
    double worst;
    scan_samples(box.samples, 0.0, margin_of, violations, worst, worst_index);

    HypothesisReport r;
    r.name = "planar_polyconvexity";
    r.samples = box.samples;
    r.seed = box.seed;
    r.violations = violations;
    r.worst_margin = worst;
    r.pass = violations == 0;
    if (!r.pass && worst_index >= 0)
        r.witness = "sample=" + std::to_string(worst_index);
    return r;
}

Vec2Field oscillatory_map(int k, const GridSpec& g) {
    Vec2Field h(g.num_nodes());
    const double amp = k == 0 ? 0.0 : 0.9 / k;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x1 = g.x1(i);
            const double x2 = g.x2(j);
            h[g.node(i, j)] = {x1 + amp * std::sin(k * x1), x2 + amp * std::sin(k * x2)};
        }
    }
    return h;
}

double oscillatory_det(int k, double x1, double x2) {
    if (k == 0) return 1.0;
    return (1.0 + 0.9 * std::cos(k * x1)) * (1.0 + 0.9 * std::cos(k * x2));
}

std::vector<double> weak_convergence_demo(const std::vector<int>& k_list,
                                          const ScalarField& testfn, const GridSpec& g) {
    for (std::size_t t = 1; t < k_list.size(); ++t)
        if (!(k_list[t] > k_list[t - 1]))
            throw std::invalid_argument("weak_convergence_demo: k_list must be increasing");
    std::vector<double> out;
    out.reserve(k_list.size());
    for (int k : k_list)
        out.push_back(distributional_det_pairing(oscillatory_map(k, g), testfn, g));
    return out;
}

ScalarField clamped_bump_testfn(const GridSpec& g) {
    ScalarField f(g.num_nodes(), 0.0);
    const double pi = 3.14159265358979323846;
    for (int j = 2; j < g.ny - 2; ++j) {
        for (int i = 2; i < g.nx - 2; ++i) {
            const double s1 = std::sin(pi * g.x1(i) / g.Lx);
            const double s2 = std::sin(pi * g.x2(j) / g.Ly);
            f[g.node(i, j)] = s1 * s1 * s1 * s2 * s2 * s2;
        }
    }
    return f;
}

}  // namespace wrinklevar
