#pragma once

#include "svlab/simulate.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace svlab {

// Columnar CSV: path_id,step,t,x,y,sigma -- one row per path and recorded step.
void write_paths_csv(std::ostream& out, const PathSet& paths);

// Contents of a path CSV, column by column.
struct PathTable {
    std::vector<std::uint64_t> path_id;
    std::vector<std::uint64_t> step;
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> sigma;
};

PathTable read_paths_csv(std::istream& in);
PathTable to_table(const PathSet& paths);

// Binary dump, little-endian:
//   magic "SVLABPTH" (8 bytes), u32 format version (1),
//   u32 model kind, f64 alpha m k rho mu y0 s0,
//   f64 dt, u64 n_steps n_paths seed record_stride, u32 unit length + bytes,
//   u64 rows, u64 cols, then x, y, integrated_var as rows*cols f64 each.
inline constexpr char kPathMagic[8] = {'S', 'V', 'L', 'A', 'B', 'P', 'T', 'H'};
inline constexpr std::uint32_t kPathFormatVersion = 1;

void write_paths_binary(std::ostream& out, const PathSet& paths);
PathSet read_paths_binary(std::istream& in);

} // namespace svlab
