#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexinv/forward.hpp"
#include "convexinv/inversion.hpp"

namespace convexinv {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shortest decimal text that parses back to the same double, independent
// of the global locale.
std::string format_double(double x);
double parse_double(const std::string& token, const std::string& what);

// Header `# R Nx kmin kmax Nk delta seed`, then one row
// `j k_index Re(g0) Im(g0) Re(g1) Im(g1)` per boundary node and wavenumber.
void write_cauchy(std::ostream& os, const CauchyData& cd);
CauchyData read_cauchy(std::istream& is);

// Header `# R Nx`, then rows `i j a` over all nodes.
void write_coefficient(std::ostream& os, const Coefficient& a);
Coefficient read_coefficient(std::istream& is);

// Rows `n J grad_norm a_max`.
void write_history(std::ostream& os, const std::vector<IterationRecord>& records);

void write_file(const std::filesystem::path& path, const std::string& contents);
std::string read_file(const std::filesystem::path& path);

CauchyData load_cauchy(const std::filesystem::path& path);
Coefficient load_coefficient(const std::filesystem::path& path);

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace convexinv
