#include "convexinv/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

namespace convexinv {

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const std::string& what)
{
    double x = 0.0;
    const char* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end) throw FormatError("cannot parse " + what + " from '" + token + "'");
    return x;
}

namespace {

long parse_int(const std::string& token, const std::string& what)
{
    long x = 0;
    const char* end = token.data() + token.size();
    const auto res = std::from_chars(token.data(), end, x);
    if (res.ec != std::errc() || res.ptr != end) throw FormatError("cannot parse " + what + " from '" + token + "'");
    return x;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string tok;
    std::istringstream ss(line);
    while (ss >> tok) out.push_back(tok);
    return out;
}

// First line must be a `#` header with exactly `names.size()` fields.
std::vector<std::string> read_header(std::istream& is, const std::vector<std::string>& names, const std::string& kind)
{
    std::string line;
    if (!std::getline(is, line)) throw FormatError(kind + ": empty input");
    auto tok = split(line);
    if (tok.empty() || tok[0] != "#") throw FormatError(kind + ": missing '#' header line");
    tok.erase(tok.begin());
    if (tok.size() != names.size()) {
        std::string expect;
        for (const auto& n : names) expect += " " + n;
        throw FormatError(kind + ": header must list" + expect);
    }
    return tok;
}

}  // namespace

void write_cauchy(std::ostream& os, const CauchyData& cd)
{
    os << "# " << format_double(cd.R) << ' ' << cd.n_cells << ' ' << format_double(cd.k_min) << ' '
       << format_double(cd.k_max) << ' ' << cd.n_k << ' ' << format_double(cd.noise_level) << ' ' << cd.seed << '\n';
    for (int j = 0; j < cd.n(); ++j)
        for (int r = 0; r < cd.n_k; ++r) {
            const cplx g0 = cd.g0[cd.index(j, r)];
            const cplx g1 = cd.g1[cd.index(j, r)];
            os << j << ' ' << r << ' ' << format_double(g0.real()) << ' ' << format_double(g0.imag()) << ' '
               << format_double(g1.real()) << ' ' << format_double(g1.imag()) << '\n';
        }
}

CauchyData read_cauchy(std::istream& is)
{
    const auto h = read_header(is, {"R", "Nx", "kmin", "kmax", "Nk", "delta", "seed"}, "Cauchy data");
    CauchyData cd;
    cd.R = parse_double(h[0], "R");
    cd.n_cells = static_cast<int>(parse_int(h[1], "Nx"));
    cd.k_min = parse_double(h[2], "kmin");
    cd.k_max = parse_double(h[3], "kmax");
    cd.n_k = static_cast<int>(parse_int(h[4], "Nk"));
    cd.noise_level = parse_double(h[5], "delta");
    cd.seed = static_cast<std::uint64_t>(std::stoull(h[6]));
    if (cd.n_cells < 1 || cd.n_k < 1) throw FormatError("Cauchy data: Nx and Nk must be positive");

    const size_t count = static_cast<size_t>(cd.n()) * cd.n_k;
    cd.g0.assign(count, cplx{});
    cd.g1.assign(count, cplx{});
    std::vector<char> seen(count, 0);
    static const char* columns[] = {"j", "k_index", "Re(g0)", "Im(g0)", "Re(g1)", "Im(g1)"};

    std::string line;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        const auto tok = split(line);
        if (tok.empty()) continue;
        if (tok.size() < 6)
            throw FormatError("Cauchy data line " + std::to_string(line_no) + ": missing column " +
                              columns[tok.size()]);
        if (tok.size() > 6) throw FormatError("Cauchy data line " + std::to_string(line_no) + ": extra columns");
        const long j = parse_int(tok[0], "j");
        const long r = parse_int(tok[1], "k_index");
        if (j < 0 || j >= cd.n() || r < 0 || r >= cd.n_k)
            throw FormatError("Cauchy data line " + std::to_string(line_no) + ": index out of range");
        const size_t at = cd.index(static_cast<int>(j), static_cast<int>(r));
        if (seen[at]) throw FormatError("Cauchy data line " + std::to_string(line_no) + ": duplicate row");
        seen[at] = 1;
        cd.g0[at] = {parse_double(tok[2], columns[2]), parse_double(tok[3], columns[3])};
        cd.g1[at] = {parse_double(tok[4], columns[4]), parse_double(tok[5], columns[5])};
    }
    for (size_t m = 0; m < count; ++m)
        if (!seen[m]) throw FormatError("Cauchy data: missing row for boundary node and wavenumber pair");
    return cd;
}

void write_coefficient(std::ostream& os, const Coefficient& a)
{
    const Grid2D& g = a.grid;
    os << "# " << format_double(g.R) << ' ' << g.n_cells << '\n';
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) os << i << ' ' << j << ' ' << format_double(a.at(i, j)) << '\n';
}

Coefficient read_coefficient(std::istream& is)
{
    const auto h = read_header(is, {"R", "Nx"}, "coefficient");
    const Grid2D grid = Grid2D::make(parse_double(h[0], "R"), static_cast<int>(parse_int(h[1], "Nx")));
    Coefficient a = zero_coefficient(grid);
    std::vector<char> seen(grid.node_count(), 0);
    std::string line;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        const auto tok = split(line);
        if (tok.empty()) continue;
        if (tok.size() != 3) throw FormatError("coefficient line " + std::to_string(line_no) + ": expected `i j a`");
        const long i = parse_int(tok[0], "i");
        const long j = parse_int(tok[1], "j");
        if (i < 0 || i >= grid.n() || j < 0 || j >= grid.n())
            throw FormatError("coefficient line " + std::to_string(line_no) + ": index out of range");
        const size_t node = grid.node(static_cast<int>(i), static_cast<int>(j));
        seen[node] = 1;
        a.values[node] = parse_double(tok[2], "a");
    }
    for (char s : seen)
        if (!s) throw FormatError("coefficient: missing node rows");
    return a;
}

void write_history(std::ostream& os, const std::vector<IterationRecord>& records)
{
    os << "# n J grad_norm a_max\n";
    for (const auto& r : records)
        os << r.n << ' ' << format_double(r.J) << ' ' << format_double(r.gradient_norm) << ' '
           << format_double(r.a_max) << '\n';
}

void write_file(const std::filesystem::path& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CauchyData load_cauchy(const std::filesystem::path& path)
{
    std::istringstream ss(read_file(path));
    return read_cauchy(ss);
}

Coefficient load_coefficient(const std::filesystem::path& path)
{
    std::istringstream ss(read_file(path));
    return read_coefficient(ss);
}

std::string sha256_file(const std::filesystem::path& path)
{
    const std::string bytes = read_file(path);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr))
        throw std::runtime_error("sha256 failed for " + path.string());
    std::ostringstream hex;
    for (unsigned int m = 0; m < len; ++m) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[m]);
    return hex.str();
}

}  // namespace convexinv
