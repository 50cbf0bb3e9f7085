#include "aniso/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "aniso/errors.hpp"

namespace aniso {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) {
        cell.erase(0, cell.find_first_not_of(" \t"));
        cell.erase(cell.find_last_not_of(" \t\r") + 1);
        out.push_back(cell);
    }
    return out;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(line);
    }
    return out;
}

double parse_double(const std::string& s, std::size_t row) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("row " + std::to_string(row) + ": bad number '" + s + "'");
    }
}

Int parse_int(const std::string& s, std::size_t row) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("row " + std::to_string(row) + ": bad integer '" + s + "'");
    }
}

// Number of index columns, checked against the "<prefix>1,...,<prefix>d,re,im" header.
int header_dim(const std::string& header, char prefix) {
    const auto cols = split(header, ',');
    const int d = static_cast<int>(cols.size()) - 2;
    if (d < 1 || cols[cols.size() - 2] != "re" || cols.back() != "im")
        throw ParseError("CSV header must end with re,im");
    for (int i = 0; i < d; ++i)
        if (cols[i] != std::string(1, prefix) + std::to_string(i + 1))
            throw ParseError("CSV header column " + std::to_string(i + 1) + " should be " + prefix +
                             std::to_string(i + 1));
    return d;
}

std::string header(char prefix, int d) {
    std::string h;
    for (int i = 1; i <= d; ++i) h += std::string(1, prefix) + std::to_string(i) + ",";
    return h + "re,im\n";
}

} // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string series_to_csv(const FourierSeries& f) {
    std::string out = header('k', f.dim());
    for (std::size_t i = 0; i < f.size(); ++i) {
        for (Int k : f.index(i)) out += std::to_string(k) + ",";
        out += format_double(f.coeff(i).real()) + "," + format_double(f.coeff(i).imag()) + "\n";
    }
    return out;
}

FourierSeries series_from_csv(const std::string& text) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw ParseError("empty coefficient file");
    const int d = header_dim(lines[0], 'k');
    FourierSeries::Builder b(d);
    IntVec k(d);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split(lines[r], ',');
        if (static_cast<int>(cells.size()) != d + 2)
            throw ParseError("row " + std::to_string(r) + ": expected " + std::to_string(d + 2) + " columns");
        for (int i = 0; i < d; ++i) k[i] = parse_int(cells[i], r);
        b.add(k, {parse_double(cells[d], r), parse_double(cells[d + 1], r)});
    }
    return std::move(b).build();
}

std::string samples_to_csv(const SampleVector& s) {
    const Pattern& p = *s.pattern;
    std::string out = header('y', p.dim());
    for (std::size_t i = 0; i < p.points().size(); ++i) {
        for (const Fraction& y : p.matrix().coordinates(p.points()[i].g)) out += y.to_string() + ",";
        out += format_double(s.values[i].real()) + "," + format_double(s.values[i].imag()) + "\n";
    }
    return out;
}

SampleVector samples_from_csv(const std::string& text, const PatternPtr& p) {
    const auto lines = lines_of(text);
    if (lines.empty()) throw ParseError("empty sample file");
    const int d = header_dim(lines[0], 'y');
    if (d != p->dim()) throw ParseError("sample file dimension does not match the matrix");
    const std::size_t m = static_cast<std::size_t>(p->m());
    SampleVector s{p, std::vector<cplx>(m)};
    std::vector<char> seen(m, 0);
    const IntMatrix& M = p->matrix().matrix();
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto cells = split(lines[r], ',');
        if (static_cast<int>(cells.size()) != d + 2)
            throw ParseError("row " + std::to_string(r) + ": expected " + std::to_string(d + 2) + " columns");
        std::vector<Fraction> y(d);
        for (int i = 0; i < d; ++i) y[i] = parse_fraction(cells[i]);
        // g = M y must be an integer vector.
        IntVec g(d);
        for (int i = 0; i < d; ++i) {
            Wide num = 0;
            Wide den = 1;
            for (int j = 0; j < d; ++j) {
                // num/den += M_ij * y_j
                num = num * y[j].den + static_cast<Wide>(M(i, j)) * y[j].num * den;
                den *= y[j].den;
                const Fraction red = make_fraction(num, den);
                num = red.num;
                den = red.den;
            }
            if (den != 1) throw NotAMember("row " + std::to_string(r) + ": point is not on the lattice M^{-1} Z^d");
            g[i] = static_cast<Int>(num);
        }
        const auto pos = p->point_position(g);
        if (!pos) throw NotAMember("row " + std::to_string(r) + ": point is not in [-1/2, 1/2)^d");
        if (seen[*pos]) throw ParseError("row " + std::to_string(r) + ": duplicate pattern point");
        seen[*pos] = 1;
        s.values[*pos] = {parse_double(cells[d], r), parse_double(cells[d + 1], r)};
    }
    for (std::size_t i = 0; i < m; ++i)
        if (!seen[i]) throw ParseError("sample file misses " + std::to_string(m - std::count(seen.begin(), seen.end(), 1)) + " pattern point(s)");
    return s;
}

std::string coeffs_to_csv(const CoeffVector& c) {
    const Pattern& p = *c.pattern;
    std::string out = header('k', p.dim());
    for (std::size_t i = 0; i < p.freqs().size(); ++i) {
        for (Int k : p.freqs()[i]) out += std::to_string(k) + ",";
        out += format_double(c.values[i].real()) + "," + format_double(c.values[i].imag()) + "\n";
    }
    return out;
}

} // namespace aniso
