#include <blproj/io.hpp>

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace blproj {

namespace {

constexpr char kMagic[4] = {'B', 'L', 'P', 'M'};

void put_u32le(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> b = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                   static_cast<char>((v >> 16) & 0xff),
                                   static_cast<char>((v >> 24) & 0xff)};
    out.write(b.data(), 4);
}

std::uint32_t get_u32le(std::istream& in, const std::string& name) {
    std::array<unsigned char, 4> b;
    if (!in.read(reinterpret_cast<char*>(b.data()), 4))
        throw io_error(name + ": truncated blpm header");
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64le(std::ostream& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    std::array<char, 8> b;
    for (int k = 0; k < 8; ++k)
        b[static_cast<std::size_t>(k)] = static_cast<char>((bits >> (8 * k)) & 0xff);
    out.write(b.data(), 8);
}

double get_f64le(std::istream& in, const std::string& name) {
    std::array<unsigned char, 8> b;
    if (!in.read(reinterpret_cast<char*>(b.data()), 8))
        throw io_error(name + ": truncated blpm payload");
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k)
        bits |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(k)]) << (8 * k);
    return std::bit_cast<double>(bits);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view field, const std::string& name, std::size_t line) {
    field = trim(field);
    double v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw io_error(name + ": line " + std::to_string(line) + ": bad numeric field '" +
                       std::string(field) + "'");
    return v;
}

void require_finite_data(const MatrixX<double>& y, const std::string& name) {
    if (!y.allFinite())
        throw io_error(name + ": matrix contains non-finite entries");
}

} // namespace

std::string format_double(double value) {
    std::array<char, 32> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

MatrixX<double> load_csv(std::istream& in, const std::string& name) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) {
            if (in.peek() == EOF)
                break; // tolerate a trailing newline
            throw io_error(name + ": line " + std::to_string(lineno) + ": empty row");
        }
        std::vector<double> row;
        std::string_view rest = line;
        while (true) {
            const auto comma = rest.find(',');
            row.push_back(parse_double(rest.substr(0, comma), name, lineno));
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw io_error(name + ": line " + std::to_string(lineno) + ": expected " +
                           std::to_string(rows.front().size()) + " columns, got " +
                           std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw io_error(name + ": empty matrix file");
    MatrixX<double> y(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index i = 0; i < y.rows(); ++i)
        for (Index j = 0; j < y.cols(); ++j)
            y(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    require_finite_data(y, name);
    return y;
}

void save_csv(std::ostream& out, const MatrixX<double>& y) {
    for (Index i = 0; i < y.rows(); ++i) {
        for (Index j = 0; j < y.cols(); ++j) {
            if (j > 0)
                out.put(',');
            out << format_double(y(i, j));
        }
        out.put('\n');
    }
}

MatrixX<double> load_blpm(std::istream& in, const std::string& name) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
        throw io_error(name + ": missing blpm magic");
    const std::uint32_t n = get_u32le(in, name);
    const std::uint32_t m = get_u32le(in, name);
    if (n == 0 || m == 0)
        throw io_error(name + ": zero-sized matrix");
    MatrixX<double> y(static_cast<Index>(n), static_cast<Index>(m));
    for (Index j = 0; j < y.cols(); ++j)
        for (Index i = 0; i < y.rows(); ++i)
            y(i, j) = get_f64le(in, name);
    if (in.peek() != EOF)
        throw io_error(name + ": trailing bytes after blpm payload");
    require_finite_data(y, name);
    return y;
}

void save_blpm(std::ostream& out, const MatrixX<double>& y) {
    out.write(kMagic, 4);
    put_u32le(out, static_cast<std::uint32_t>(y.rows()));
    put_u32le(out, static_cast<std::uint32_t>(y.cols()));
    for (Index j = 0; j < y.cols(); ++j)
        for (Index i = 0; i < y.rows(); ++i)
            put_f64le(out, y(i, j));
}

MatrixX<double> load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error(path + ": cannot open for reading");
    char magic[4];
    const bool is_blpm = in.read(magic, 4) && std::memcmp(magic, kMagic, 4) == 0;
    in.clear();
    in.seekg(0);
    return is_blpm ? load_blpm(in, path) : load_csv(in, path);
}

void save_matrix(const std::string& path, const MatrixX<double>& y) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error(path + ": cannot open for writing");
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".blpm") == 0)
        save_blpm(out, y);
    else
        save_csv(out, y);
    if (!out)
        throw io_error(path + ": write failed");
}

} // namespace blproj
