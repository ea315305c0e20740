#pragma once

#include "vcfp/density.hpp"
#include "vcfp/diagnostics.hpp"
#include "vcfp/model.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace vcfp {

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a64(std::string_view bytes);

/// Shortest decimal text with 17 significant digits.
std::string format_double(double x);

struct Snapshot {
    ModelParams params;
    DensityField density;
};

/// Snapshot text format:
///
///   # vcfp-snapshot 1
///   # grid n_v <n> n_g <n> v_max <x> g_max <x>
///   # params g_L <x> V_E <x> V_F <x> sigma_E <x> g_in <x> a <x>
///   # checksum fnv1a64 <16 hex digits over the body bytes>
///   <n_g body lines, line j holding p(0, j) ... p(n_v - 1, j)>
///
/// Numbers are written with 17 significant digits and separated by one space.
void write_snapshot(std::ostream& out, const DensityField& density, const ModelParams& params);
Snapshot read_snapshot(std::istream& in);

/// Diagnostics CSV columns, in order.
const std::vector<std::string>& diagnostics_csv_columns();
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsReport>& series);

void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace vcfp
