#include "svlab/path_io.hpp"

#include "svlab/csv.hpp"
#include "svlab/error.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

static_assert(std::endian::native == std::endian::little, "binary path format assumes little-endian hosts");

namespace svlab {

void write_paths_csv(std::ostream& out, const PathSet& paths) {
    const SdeCoefficients coeffs(paths.params);
    out << "path_id,step,t,x,y,sigma\n";
    for (std::size_t p = 0; p < paths.n_paths(); ++p) {
        for (std::size_t c = 0; c < paths.n_recorded(); ++c) {
            const double y = paths.y(p, c);
            out << p << ',' << paths.step_of(c) << ',' << csv::format(paths.time_of(c)) << ','
                << csv::format(paths.x(p, c)) << ',' << csv::format(y) << ',' << csv::format(coeffs.vol_map(y))
                << '\n';
        }
    }
}

PathTable to_table(const PathSet& paths) {
    const SdeCoefficients coeffs(paths.params);
    PathTable table;
    for (std::size_t p = 0; p < paths.n_paths(); ++p) {
        for (std::size_t c = 0; c < paths.n_recorded(); ++c) {
            table.path_id.push_back(p);
            table.step.push_back(paths.step_of(c));
            table.t.push_back(paths.time_of(c));
            table.x.push_back(paths.x(p, c));
            table.y.push_back(paths.y(p, c));
            table.sigma.push_back(coeffs.vol_map(paths.y(p, c)));
        }
    }
    return table;
}

PathTable read_paths_csv(std::istream& in) {
    const auto table = csv::read(in);
    const std::vector<std::string> expected{"path_id", "step", "t", "x", "y", "sigma"};
    if (table.header != expected) {
        throw Error(ErrorCode::ParseError, "path csv header must be path_id,step,t,x,y,sigma");
    }
    PathTable out;
    const auto as_index = [](const std::vector<double>& v) {
        std::vector<std::uint64_t> r;
        r.reserve(v.size());
        for (double d : v) r.push_back(static_cast<std::uint64_t>(d));
        return r;
    };
    out.path_id = as_index(table.numeric_column("path_id"));
    out.step = as_index(table.numeric_column("step"));
    out.t = table.numeric_column("t");
    out.x = table.numeric_column("x");
    out.y = table.numeric_column("y");
    out.sigma = table.numeric_column("sigma");
    return out;
}

namespace {

template <class T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw Error(ErrorCode::ParseError, "truncated binary path file");
    return value;
}

void put_matrix(std::ostream& out, const Matrix& m) {
    const auto data = m.data();
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size_bytes()));
}

Matrix get_matrix(std::istream& in, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    auto data = m.data();
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size_bytes()));
    if (!in) throw Error(ErrorCode::ParseError, "truncated binary path file");
    return m;
}

} // namespace

void write_paths_binary(std::ostream& out, const PathSet& paths) {
    out.write(kPathMagic, sizeof(kPathMagic));
    put<std::uint32_t>(out, kPathFormatVersion);
    const auto& p = paths.params;
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.kind));
    for (double v : {p.alpha, p.m, p.k, p.rho, p.mu, p.y0, p.s0}) put(out, v);
    const auto& c = paths.config;
    put(out, c.dt);
    for (std::uint64_t v : {std::uint64_t{c.n_steps}, std::uint64_t{c.n_paths}, c.seed, std::uint64_t{c.record_stride}}) {
        put(out, v);
    }
    put<std::uint32_t>(out, static_cast<std::uint32_t>(c.time_unit.size()));
    out.write(c.time_unit.data(), static_cast<std::streamsize>(c.time_unit.size()));
    put<std::uint64_t>(out, paths.x.rows());
    put<std::uint64_t>(out, paths.x.cols());
    put_matrix(out, paths.x);
    put_matrix(out, paths.y);
    put_matrix(out, paths.integrated_var);
}

PathSet read_paths_binary(std::istream& in) {
    char magic[sizeof(kPathMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kPathMagic, sizeof(magic)) != 0) {
        throw Error(ErrorCode::ParseError, "not a binary path file (bad magic)");
    }
    const auto version = get<std::uint32_t>(in);
    if (version != kPathFormatVersion) {
        throw Error(ErrorCode::ParseError, "unsupported binary path format version " + std::to_string(version));
    }
    PathSet out;
    const auto kind = get<std::uint32_t>(in);
    if (kind > static_cast<std::uint32_t>(ModelKind::ExpOU)) throw Error(ErrorCode::ParseError, "bad model kind");
    auto& p = out.params;
    p.kind = static_cast<ModelKind>(kind);
    for (double* v : {&p.alpha, &p.m, &p.k, &p.rho, &p.mu, &p.y0, &p.s0}) *v = get<double>(in);
    auto& c = out.config;
    c.dt = get<double>(in);
    c.n_steps = get<std::uint64_t>(in);
    c.n_paths = get<std::uint64_t>(in);
    c.seed = get<std::uint64_t>(in);
    c.record_stride = get<std::uint64_t>(in);
    const auto unit_len = get<std::uint32_t>(in);
    if (unit_len > 256) throw Error(ErrorCode::ParseError, "bad time unit length");
    c.time_unit.resize(unit_len);
    in.read(c.time_unit.data(), unit_len);
    const auto rows = get<std::uint64_t>(in);
    const auto cols = get<std::uint64_t>(in);
    if (rows != c.n_paths || cols != c.n_recorded()) {
        throw Error(ErrorCode::ParseError, "binary path dimensions disagree with the stored config");
    }
    out.x = get_matrix(in, rows, cols);
    out.y = get_matrix(in, rows, cols);
    out.integrated_var = get_matrix(in, rows, cols);
    return out;
}

} // namespace svlab
