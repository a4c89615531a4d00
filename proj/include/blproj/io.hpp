#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <blproj/core.hpp>

namespace blproj {

/// Unreadable, malformed, or non-finite input data. Maps to CLI exit
/// code 2, as opposed to std::invalid_argument (bad parameters, exit 3).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class MatrixFormat { csv, blpm };

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// csv: one matrix row per line, comma-separated decimal literals,
/// uniform column count, LF terminators.
MatrixX<double> load_csv(std::istream& in, const std::string& name = "<stream>");
void save_csv(std::ostream& out, const MatrixX<double>& y);

/// blpm: "BLPM" magic, u32-LE rows, u32-LE cols, then rows*cols doubles
/// IEEE-754 little-endian in column-major order.
MatrixX<double> load_blpm(std::istream& in, const std::string& name = "<stream>");
void save_blpm(std::ostream& out, const MatrixX<double>& y);

/// Reads a matrix file, sniffing blpm by its magic bytes and falling back
/// to csv. Entries must be finite.
MatrixX<double> load_matrix(const std::string& path);

/// Writes csv unless the path ends in ".blpm".
void save_matrix(const std::string& path, const MatrixX<double>& y);

} // namespace blproj
