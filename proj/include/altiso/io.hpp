#pragma once

// Text formats. Everything after '#' on a line is ignored.
//
//   ams p n m          alternating space: m blocks of n rows of n residues in [0, p)
//   graph n            graph: one "u v" line per edge, vertices 1..n
//   mat p r c k        matrix tuple: k blocks of r rows of c residues
//
// emit_* writes the canonical form: header, then rows separated by single
// spaces, blocks separated by one blank line.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "altiso/altspace.hpp"
#include "altiso/errors.hpp"
#include "altiso/graph.hpp"

namespace altiso::io {

namespace detail {

struct Token {
    std::string text;
    std::size_t line, column;
};

/// Non-empty lines after comment stripping, each as its tokens.
inline std::vector<std::vector<Token>> tokenize(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
            toks.push_back({raw.substr(i, j - i), line_no, i + 1});
            i = j;
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

inline unsigned long long to_uint(const Token& t, const char* what) {
    if (t.text.empty() || t.text.size() > 18 ||
        !std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError(std::string("expected a nonnegative integer for ") + what + ", got '" + t.text + "'", t.line,
                         t.column);
    return std::stoull(t.text);
}

inline Elem to_residue(const Token& t, unsigned p) {
    unsigned long long v = to_uint(t, "a matrix entry");
    if (v >= p)
        throw ParseError("entry " + t.text + " is out of range for F_" + std::to_string(p), t.line, t.column);
    return static_cast<Elem>(v);
}

inline PrimeField to_field(const Token& t) {
    unsigned long long p = to_uint(t, "the field size");
    try {
        return PrimeField(static_cast<unsigned>(std::min<unsigned long long>(p, 1000)));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), t.line, t.column);
    }
}

inline void expect_header(const std::vector<std::vector<Token>>& lines, const char* magic, std::size_t fields) {
    if (lines.empty()) throw ParseError(std::string("empty input, expected '") + magic + "' header");
    const auto& h = lines.front();
    if (h.front().text != magic)
        throw ParseError(std::string("expected '") + magic + "' header, got '" + h.front().text + "'", h.front().line,
                         h.front().column);
    if (h.size() != fields + 1)
        throw ParseError(std::string("'") + magic + "' header takes " + std::to_string(fields) + " fields",
                         h.front().line, h.front().column);
}

/// count blocks of `rows` lines with `cols` residues each, after the header.
inline std::vector<Matrix> read_blocks(const std::vector<std::vector<Token>>& lines, PrimeField f, std::size_t rows,
                                       std::size_t cols, std::size_t count) {
    const std::size_t need = rows * count;
    if (lines.size() - 1 != need) {
        std::size_t line = lines.size() - 1 > need ? lines[need + 1].front().line : lines.back().front().line;
        throw ParseError("expected " + std::to_string(need) + " matrix rows, found " + std::to_string(lines.size() - 1),
                         line);
    }
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < count; ++k) {
        Matrix m(f, rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            const auto& toks = lines[1 + k * rows + r];
            if (toks.size() != cols)
                throw ParseError("expected " + std::to_string(cols) + " entries in this row, found " +
                                     std::to_string(toks.size()),
                                 toks.front().line, toks.front().column);
            for (std::size_t c = 0; c < cols; ++c) m.set(r, c, to_residue(toks[c], f.p()));
        }
        out.push_back(std::move(m));
    }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void emit_matrix(std::ostringstream& out, const Matrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << unsigned(m(r, c));
        out << '\n';
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Alternating spaces

inline AltSpace parse_space_text(const std::string& text) {
    auto lines = detail::tokenize(text);
    detail::expect_header(lines, "ams", 3);
    const auto& h = lines.front();
    PrimeField f = detail::to_field(h[1]);
    std::size_t n = detail::to_uint(h[2], "n"), m = detail::to_uint(h[3], "m");
    if (n > 64) throw ParseError("n is limited to 64", h[2].line, h[2].column);
    if (m > n * n) throw ParseError("more basis matrices than the space of alternating matrices allows", h[3].line, h[3].column);
    std::vector<Matrix> mats = detail::read_blocks(lines, f, n, n, m);
    for (std::size_t k = 0; k < m; ++k)
        if (auto bad = alternating_violation(mats[k])) {
            const auto& tok = lines[1 + k * n + bad->first][bad->second];
            throw ParseError("matrix " + std::to_string(k + 1) + " is not alternating at entry (" +
                                 std::to_string(bad->first + 1) + "," + std::to_string(bad->second + 1) + ")",
                             tok.line, tok.column);
        }
    try {
        return AltSpace(f, n, std::move(mats));
    } catch (const InvalidSpace& e) {
        throw ParseError(e.what(), h.front().line, h.front().column);
    }
}

inline AltSpace parse_space(const std::string& path) { return parse_space_text(detail::read_file(path)); }

inline std::string emit_space(const AltSpace& a) {
    std::ostringstream out;
    out << "ams " << a.field().p() << ' ' << a.n() << ' ' << a.dim() << '\n';
    for (std::size_t k = 0; k < a.dim(); ++k) {
        out << '\n';
        detail::emit_matrix(out, a[k]);
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Graphs

inline Graph parse_graph_text(const std::string& text) {
    auto lines = detail::tokenize(text);
    detail::expect_header(lines, "graph", 1);
    const auto& h = lines.front();
    std::size_t n = detail::to_uint(h[1], "n");
    if (n > 64) throw ParseError("graphs are limited to 64 vertices", h[1].line, h[1].column);
    std::vector<Edge> edges;
    std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& t = lines[i];
        if (t.size() != 2) throw ParseError("an edge line holds exactly two vertices", t.front().line, t.front().column);
        std::size_t u = detail::to_uint(t[0], "a vertex"), v = detail::to_uint(t[1], "a vertex");
        for (std::size_t k = 0; k < 2; ++k) {
            std::size_t x = k ? v : u;
            if (x < 1 || x > n)
                throw ParseError("vertex " + t[k].text + " is out of range 1.." + std::to_string(n), t[k].line, t[k].column);
        }
        if (u == v) throw ParseError("loop at vertex " + t[0].text, t[0].line, t[0].column);
        if (seen[u - 1][v - 1]) throw ParseError("duplicate edge", t[0].line, t[0].column);
        seen[u - 1][v - 1] = seen[v - 1][u - 1] = true;
        edges.emplace_back(u - 1, v - 1);
    }
    return Graph(n, std::move(edges));
}

inline Graph parse_graph(const std::string& path) { return parse_graph_text(detail::read_file(path)); }

inline std::string emit_graph(const Graph& g) {
    std::ostringstream out;
    out << "graph " << g.n() << '\n';
    for (auto [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

// ---------------------------------------------------------------------------
// Matrix tuples

struct MatrixTuple {
    PrimeField field{2};
    std::size_t rows = 0, cols = 0;
    std::vector<Matrix> matrices;
};

inline MatrixTuple parse_matrices_text(const std::string& text) {
    auto lines = detail::tokenize(text);
    detail::expect_header(lines, "mat", 4);
    const auto& h = lines.front();
    MatrixTuple t;
    t.field = detail::to_field(h[1]);
    t.rows = detail::to_uint(h[2], "rows");
    t.cols = detail::to_uint(h[3], "cols");
    std::size_t k = detail::to_uint(h[4], "the matrix count");
    if (t.rows == 0 || t.cols == 0 || t.rows > 64 || t.cols > 64)
        throw ParseError("matrix shape must lie in 1..64", h[2].line, h[2].column);
    if (k > t.rows * t.cols * 64) throw ParseError("too many matrices", h[4].line, h[4].column);
    t.matrices = detail::read_blocks(lines, t.field, t.rows, t.cols, k);
    return t;
}

inline MatrixTuple parse_matrices(const std::string& path) { return parse_matrices_text(detail::read_file(path)); }

inline std::string emit_matrices(const MatrixTuple& t) {
    std::ostringstream out;
    out << "mat " << t.field.p() << ' ' << t.rows << ' ' << t.cols << ' ' << t.matrices.size() << '\n';
    for (const auto& m : t.matrices) {
        out << '\n';
        detail::emit_matrix(out, m);
    }
    return out.str();
}

}  // namespace altiso::io
