#include "vcfp/io.hpp"

#include "vcfp/errors.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace vcfp {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_snapshot(std::ostream& out, const DensityField& density, const ModelParams& params) {
    const Grid& grid = density.grid();
    std::string body;
    body.reserve(grid.size() * 25);
    for (std::size_t j = 0; j < grid.n_g(); ++j) {
        for (std::size_t i = 0; i < grid.n_v(); ++i) {
            if (i) body += ' ';
            body += format_double(density(i, j));
        }
        body += '\n';
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));

    out << "# vcfp-snapshot 1\n";
    out << "# grid n_v " << grid.n_v() << " n_g " << grid.n_g() << " v_max " << format_double(grid.v_max())
        << " g_max " << format_double(grid.g_max()) << '\n';
    out << "# params g_L " << format_double(params.g_L) << " V_E " << format_double(params.V_E) << " V_F "
        << format_double(params.V_F) << " sigma_E " << format_double(params.sigma_E) << " g_in "
        << format_double(params.g_in) << " a " << format_double(params.a) << '\n';
    out << "# checksum fnv1a64 " << hex << '\n';
    out << body;
}

namespace {

std::istringstream header_line(std::istream& in, const std::string& tag) {
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("snapshot truncated before '" + tag + "' header");
    std::istringstream s(line);
    std::string hash, word;
    s >> hash >> word;
    if (hash != "#" || word != tag) throw ConfigError("snapshot header line '" + line + "' is not '" + tag + "'");
    return s;
}

template <typename T>
T keyed(std::istringstream& s, const std::string& key) {
    std::string word;
    T value{};
    if (!(s >> word >> value) || word != key) throw ConfigError("snapshot header lacks '" + key + "'");
    return value;
}

} // namespace

Snapshot read_snapshot(std::istream& in) {
    {
        auto s = header_line(in, "vcfp-snapshot");
        int version = 0;
        if (!(s >> version) || version != 1) throw ConfigError("unsupported snapshot version");
    }
    auto gs = header_line(in, "grid");
    const auto n_v = keyed<std::size_t>(gs, "n_v");
    const auto n_g = keyed<std::size_t>(gs, "n_g");
    const auto v_max = keyed<double>(gs, "v_max");
    const auto g_max = keyed<double>(gs, "g_max");

    auto ps = header_line(in, "params");
    ModelParams params;
    params.g_L = keyed<double>(ps, "g_L");
    params.V_E = keyed<double>(ps, "V_E");
    params.V_F = keyed<double>(ps, "V_F");
    params.sigma_E = keyed<double>(ps, "sigma_E");
    params.g_in = keyed<double>(ps, "g_in");
    params.a = keyed<double>(ps, "a");

    auto cs = header_line(in, "checksum");
    std::string algo, hex;
    cs >> algo >> hex;
    if (algo != "fnv1a64") throw ConfigError("unknown snapshot checksum '" + algo + "'");

    std::ostringstream rest;
    rest << in.rdbuf();
    const std::string body = rest.str();
    char expected[17];
    std::snprintf(expected, sizeof expected, "%016llx", static_cast<unsigned long long>(fnv1a64(body)));
    if (hex != expected) throw ConfigError("snapshot checksum mismatch");

    const Grid grid(n_v, n_g, v_max, g_max);
    std::vector<double> values(grid.size());
    std::istringstream bs(body);
    for (std::size_t j = 0; j < n_g; ++j)
        for (std::size_t i = 0; i < n_v; ++i)
            if (!(bs >> values[grid.flat_index(i, j)])) throw ConfigError("snapshot body truncated");
    return Snapshot{params, DensityField(grid, std::move(values))};
}

const std::vector<std::string>& diagnostics_csv_columns() {
    static const std::vector<std::string> columns{
        "step",        "time",    "mass",    "entropy_sq_dev", "entropy_sq",   "entropy_hlogh",
        "dissipation", "c_minus", "c_plus",  "flatness_g",     "g_marginal_deviation", "firing_flux"};
    return columns;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsReport>& series) {
    const auto& columns = diagnostics_csv_columns();
    for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
    out << '\n';
    for (const DiagnosticsReport& r : series) {
        out << r.step << ',' << format_double(r.time) << ',' << format_double(r.mass);
        for (double e : r.entropy) out << ',' << format_double(e);
        out << ',' << format_double(r.dissipation) << ',' << format_double(r.envelope.lower) << ','
            << format_double(r.envelope.upper) << ',' << format_double(r.flatness) << ','
            << format_double(r.g_marginal_deviation) << ',' << format_double(r.firing_flux) << '\n';
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << content;
}

} // namespace vcfp
