#include "wrinklevar/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wrinklevar/numfmt.hpp"

namespace wrinklevar {

void write_text_file(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_fields_csv(const std::string& path, const DeformationState& s,
                      const BoundarySpec& bc) {
    s.check_consistent();
    const GridSpec& g = s.grid;
    const ScalarField j = area_ratio_field(s);
    const SymMat2Field hess = hessian_scalar(s.w, g, bc.clamped_ends());
    std::ostringstream out;
    out << "x1,x2,h1,h2,w,J,w11,w12,w22\n";
    for (int jj = 0; jj < g.ny; ++jj) {
        for (int ii = 0; ii < g.nx; ++ii) {
            const int n = g.node(ii, jj);
            out << fmt17(g.x1(ii)) << ',' << fmt17(g.x2(jj)) << ',' << fmt17(s.h[n].x) << ','
                << fmt17(s.h[n].y) << ',' << fmt17(s.w[n]) << ',' << fmt17(j[n]) << ','
                << fmt17(hess[n].k11) << ',' << fmt17(hess[n].k12) << ','
                << fmt17(hess[n].k22) << '\n';
        }
    }
    write_text_file(path, out.str());
}

DeformationState read_fields_csv(const std::string& path, const GridSpec& g) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
    if (line != "x1,x2,h1,h2,w,J,w11,w12,w22")
        throw IoError("'" + path + "' has an unexpected header");

    DeformationState s;
    s.grid = g;
    s.h.resize(g.num_nodes());
    s.w.resize(g.num_nodes());
    const double tol = 1e-9 * std::max(g.Lx, g.Ly);
    for (int n = 0; n < g.num_nodes(); ++n) {
        if (!std::getline(in, line))
            throw IoError("'" + path + "' ended early: expected " +
                          std::to_string(g.num_nodes()) + " rows");
        std::stringstream ss(line);
        double col[9];
        std::string item;
        for (int c = 0; c < 9; ++c) {
            if (!std::getline(ss, item, ','))
                throw IoError("'" + path + "' row " + std::to_string(n + 2) + " is short");
            col[c] = std::strtod(item.c_str(), nullptr);
        }
        const int i = n % g.nx;
        const int j = n / g.nx;
        if (std::fabs(col[0] - g.x1(i)) > tol || std::fabs(col[1] - g.x2(j)) > tol)
            throw IoError("'" + path + "' coordinates do not match the configured grid");
        s.h[n] = {col[2], col[3]};
        s.w[n] = col[4];
    }
    return s;
}

std::string trace_csv_text(const RunTrace& trace) {
    std::ostringstream out;
    out << "iter,energy,gradnorm,step,minJ\n";
    for (const TraceRow& r : trace.rows)
        out << r.iter << ',' << fmt17(r.energy) << ',' << fmt17(r.gradnorm) << ','
            << fmt17(r.step) << ',' << fmt17(r.min_j) << '\n';
    return out.str();
}

void write_trace_csv(const std::string& path, const RunTrace& trace) {
    write_text_file(path, trace_csv_text(trace));
}

std::string sweep_csv_text(const std::vector<SweepEntry>& entries) {
    std::ostringstream out;
    out << "lambda,membrane,bending,load,total,amplitude,wavelength,sign_changes,converged\n";
    for (const SweepEntry& e : entries) {
        out << fmt17(e.lambda) << ',' << fmt17(e.result.energy.membrane) << ','
            << fmt17(e.result.energy.bending) << ',' << fmt17(e.result.energy.load) << ','
            << fmt17(e.result.energy.total) << ',' << fmt17(e.metrics.amplitude) << ','
            << (e.metrics.wavelength ? fmt17(*e.metrics.wavelength) : std::string("nan")) << ','
            << e.metrics.sign_changes << ',' << (e.result.trace.converged ? 1 : 0) << '\n';
    }
    return out.str();
}

void write_sweep_csv(const std::string& path, const std::vector<SweepEntry>& entries) {
    write_text_file(path, sweep_csv_text(entries));
}

}  // namespace wrinklevar
