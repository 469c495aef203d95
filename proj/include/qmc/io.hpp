#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qmc/codes.hpp"
#include "qmc/errors.hpp"
#include "qmc/matrix.hpp"
#include "qmc/network.hpp"
#include "qmc/ring.hpp"

namespace qmc {

/// Ring descriptors:
///   z<m>                residue ring Z_m
///   f<p>                prime field
///   f:<p>:<e>:<c0,...,ce>   extension field with explicit modulus
///   m2:<p>[:<e>:<coeffs>]   2x2 matrices over the given field
inline Ring parse_ring_spec(const std::string& spec) {
    auto parse_int = [&](const std::string& s) -> std::int64_t {
        try {
            std::size_t used = 0;
            std::int64_t v = std::stoll(s, &used);
            if (used != s.size()) throw FormatError("bad ring spec: '" + spec + "'");
            return v;
        } catch (const std::exception&) {
            throw FormatError("bad ring spec: '" + spec + "'");
        }
    };
    auto split = [](const std::string& s, char sep) {
        std::vector<std::string> parts;
        std::string cur;
        for (char c : s) {
            if (c == sep) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        parts.push_back(cur);
        return parts;
    };
    auto parse_field_parts = [&](const std::vector<std::string>& parts) -> Ring {
        // parts: p, e, coeff list
        std::int64_t p = parse_int(parts[0]);
        std::int64_t e = parse_int(parts[1]);
        std::vector<std::int64_t> coeffs;
        for (const auto& c : split(parts[2], ',')) coeffs.push_back(parse_int(c));
        return Ring::field(p, static_cast<int>(e), coeffs);
    };

    if (spec.size() >= 2 && spec[0] == 'z') return Ring::residue(parse_int(spec.substr(1)));
    if (spec.rfind("m2:", 0) == 0) {
        auto parts = split(spec.substr(3), ':');
        if (parts.size() == 1) return Ring::matrix_ring2(Ring::prime_field(parse_int(parts[0])));
        if (parts.size() == 3) return Ring::matrix_ring2(parse_field_parts(parts));
        throw FormatError("bad ring spec: '" + spec + "'");
    }
    if (spec.size() >= 2 && spec[0] == 'f') {
        if (spec[1] != ':') return Ring::prime_field(parse_int(spec.substr(1)));
        auto parts = split(spec.substr(2), ':');
        if (parts.size() != 3) throw FormatError("bad ring spec: '" + spec + "'");
        return parse_field_parts(parts);
    }
    throw FormatError("bad ring spec: '" + spec + "'");
}

/// Matrix text format: "rows cols ring-spec" then row-major entries as
/// integers (field elements by their little-endian base-p encodings).
inline RingMatrix read_matrix(std::istream& in) {
    int rows = 0, cols = 0;
    std::string spec;
    if (!(in >> rows >> cols >> spec)) throw FormatError("matrix header: expected 'rows cols ring-spec'");
    Ring ring = parse_ring_spec(spec);
    RingMatrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            std::int64_t v;
            if (!(in >> v)) throw FormatError("matrix entries: expected " +
                                              std::to_string(rows * cols) + " integers");
            if (v < 0 || v >= ring.cardinality()) throw FormatError("matrix entry out of range");
            m.at(i, j) = v;
        }
    return m;
}

inline RingMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open matrix file: " + path);
    return read_matrix(in);
}

inline void write_matrix(std::ostream& out, const RingMatrix& m) {
    out << m.rows() << " " << m.cols() << " " << m.ring().spec_string() << "\n";
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m.at(i, j);
        out << "\n";
    }
}

namespace detail {

inline std::vector<std::string> content_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream probe(line);
        std::string token;
        if (probe >> token) lines.push_back(line);
    }
    return lines;
}

}  // namespace detail

/// Code files: "n ring-spec", a "K" section of generator rows, an "M"
/// section of representative rows.
struct CodeFile {
    Ring ring = Ring::prime_field(2);
    int n = 0;
    std::vector<Vec> kernel_generators;
    std::vector<Vec> representatives;
};

inline CodeFile read_code(std::istream& in) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw FormatError("empty code file");
    CodeFile out;
    {
        std::istringstream head(lines[0]);
        std::string spec;
        if (!(head >> out.n >> spec)) throw FormatError("code header: expected 'n ring-spec'");
        out.ring = parse_ring_spec(spec);
    }
    enum class Section { none, kernel, reps } section = Section::none;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::istringstream ls(lines[li]);
        std::string first;
        ls >> first;
        if (first == "K") {
            section = Section::kernel;
            continue;
        }
        if (first == "M") {
            section = Section::reps;
            continue;
        }
        if (section == Section::none) throw FormatError("code rows before K/M section marker");
        Vec row;
        std::istringstream rs(lines[li]);
        std::int64_t v;
        while (rs >> v) {
            if (v < 0 || v >= out.ring.cardinality()) throw FormatError("code entry out of range");
            row.push_back(v);
        }
        if (static_cast<int>(row.size()) != out.n)
            throw FormatError("code row has " + std::to_string(row.size()) + " entries, expected " +
                              std::to_string(out.n));
        (section == Section::kernel ? out.kernel_generators : out.representatives)
            .push_back(std::move(row));
    }
    return out;
}

inline CodeFile read_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open code file: " + path);
    return read_code(in);
}

inline void write_code(std::ostream& out, const CodeFile& code) {
    out << code.n << " " << code.ring.spec_string() << "\nK\n";
    for (const auto& g : code.kernel_generators) {
        for (std::size_t j = 0; j < g.size(); ++j) out << (j ? " " : "") << g[j];
        out << "\n";
    }
    out << "M\n";
    for (const auto& r : code.representatives) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << r[j];
        out << "\n";
    }
}

/// Network files: "ring-spec m", then "edge <tail> <head>" lines in intended
/// transmission order, "source <id>", "sink <id>" lines and optional
/// "coeff <i> <j> <value>" lines with 1-based edge indices.
inline NetworkSpec read_network(std::istream& in, bool keep_order = false) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw FormatError("empty network file");
    NetworkSpec net;
    {
        std::istringstream head(lines[0]);
        std::string spec;
        if (!(head >> spec >> net.m)) throw FormatError("network header: expected 'ring-spec m'");
        net.ring = parse_ring_spec(spec);
        if (!net.ring.is_commutative())
            throw FormatError("network alphabets must have vector arithmetic");
    }
    auto node_index = [&](const std::string& name) {
        for (std::size_t i = 0; i < net.node_names.size(); ++i)
            if (net.node_names[i] == name) return static_cast<int>(i);
        net.node_names.push_back(name);
        return static_cast<int>(net.node_names.size() - 1);
    };
    std::string src_name;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::istringstream ls(lines[li]);
        std::string kind;
        ls >> kind;
        if (kind == "edge") {
            std::string tail, head;
            if (!(ls >> tail >> head)) throw FormatError("edge line needs tail and head");
            net.edges.emplace_back(node_index(tail), node_index(head));
        } else if (kind == "source") {
            if (!(ls >> src_name)) throw FormatError("source line needs a node id");
            net.source = node_index(src_name);
        } else if (kind == "sink") {
            std::string name;
            if (!(ls >> name)) throw FormatError("sink line needs a node id");
            net.sinks.push_back(node_index(name));
        } else if (kind == "coeff") {
            std::int64_t i = 0, j = 0, v = 0;
            if (!(ls >> i >> j >> v)) throw FormatError("coeff line needs 'i j value'");
            net.coefficients[{static_cast<int>(i - 1), static_cast<int>(j - 1)}] = v;
        } else {
            throw FormatError("unknown network line: '" + lines[li] + "'");
        }
    }
    for (const auto& [key, val] : net.coefficients) {
        (void)val;
        if (key.first < 0 || key.second < 0 || key.first >= net.edge_count() ||
            key.second >= net.edge_count())
            throw FormatError("coeff line: edge index out of range");
    }
    finalize_network(net, keep_order);
    return net;
}

inline NetworkSpec read_network_file(const std::string& path, bool keep_order = false) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open network file: " + path);
    return read_network(in, keep_order);
}

}  // namespace qmc
