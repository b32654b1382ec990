#pragma once

#include <string>
#include <vector>

#include "wrinklevar/minimize.hpp"

// CSV and text output with 17 significant digits so reruns are
// byte-comparable. fields.csv carries x1,x2,h1,h2,w,J,w11,w12,w22 row-major
// over nodes.

namespace wrinklevar {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

void write_fields_csv(const std::string& path, const DeformationState& s, const BoundarySpec& bc);

// Reads a fields.csv written by write_fields_csv back into a state; the grid
// must match the coordinates stored in the file.
DeformationState read_fields_csv(const std::string& path, const GridSpec& g);

std::string trace_csv_text(const RunTrace& trace);
void write_trace_csv(const std::string& path, const RunTrace& trace);

std::string sweep_csv_text(const std::vector<SweepEntry>& entries);
void write_sweep_csv(const std::string& path, const std::vector<SweepEntry>& entries);

}  // namespace wrinklevar
