#include "echoloc/graph.hpp"

#include <cmath>
#include <sstream>

#include "echoloc/errors.hpp"

namespace echoloc {

Graph::Graph(int n) : n_(n), rows_(static_cast<std::size_t>(n), 0) {
    if (n < 1 || n > 62)
        throw SizeError("graph must have between 1 and 62 vertices, got " +
                        std::to_string(n));
}

void Graph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw ArgumentError("vertex " + std::to_string(v) + " out of range");
}

void Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw ArgumentError("self-loops are not allowed");
    rows_[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    rows_[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
}

bool Graph::edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return (rows_[static_cast<std::size_t>(u)] >> v) & 1u;
}

int Graph::degree(int v) const {
    check_vertex(v);
    return __builtin_popcountll(rows_[static_cast<std::size_t>(v)]);
}

std::vector<int> Graph::degrees() const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) d[static_cast<std::size_t>(v)] = degree(v);
    return d;
}

std::vector<int> Graph::neighbors(int v) const {
    check_vertex(v);
    std::vector<int> out;
    std::uint64_t m = rows_[static_cast<std::size_t>(v)];
    while (m) {
        int b = __builtin_ctzll(m);
        out.push_back(b);
        m &= m - 1;
    }
    return out;
}

std::size_t Graph::edge_count() const {
    std::size_t twice = 0;
    for (int v = 0; v < n_; ++v) twice += static_cast<std::size_t>(degree(v));
    return twice / 2;
}

bool Graph::connected() const {
    if (n_ == 0) return false;
    std::uint64_t seen = 1, frontier = 1;
    while (frontier) {
        std::uint64_t next = 0;
        std::uint64_t m = frontier;
        while (m) {
            int v = __builtin_ctzll(m);
            m &= m - 1;
            next |= rows_[static_cast<std::size_t>(v)];
        }
        frontier = next & ~seen;
        seen |= next;
    }
    return __builtin_popcountll(seen) == n_;
}

Graph parse_graph6(const std::string& text) {
    if (text.empty()) throw ParseError("graph6: empty input (byte 0)");
    unsigned char c0 = static_cast<unsigned char>(text[0]);
    if (c0 == 126)
        throw ParseError("graph6: long form (n > 62) unsupported (byte 0)");
    if (c0 < 63 || c0 > 125)
        throw ParseError("graph6: bad header byte (byte 0)");
    int n = c0 - 63;
    if (n == 0) throw ParseError("graph6: empty graph (byte 0)");

    std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::size_t need = (bits + 5) / 6;
    if (text.size() != 1 + need)
        throw ParseError("graph6: expected " + std::to_string(1 + need) +
                         " bytes for n = " + std::to_string(n) + ", got " +
                         std::to_string(text.size()) + " (byte " +
                         std::to_string(std::min(text.size(), 1 + need)) + ")");

    Graph g(n);
    std::size_t bit = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++bit) {
            std::size_t byte = 1 + bit / 6;
            unsigned char c = static_cast<unsigned char>(text[byte]);
            if (c < 63 || c > 126)
                throw ParseError("graph6: byte out of range (byte " +
                                 std::to_string(byte) + ")");
            int val = c - 63;
            if ((val >> (5 - bit % 6)) & 1) g.add_edge(i, j);
        }
    }
    // padding bits must be zero
    if (bits % 6 != 0) {
        unsigned char last = static_cast<unsigned char>(text.back()) - 63;
        unsigned mask = (1u << (6 - bits % 6)) - 1u;
        if (last & mask)
            throw ParseError("graph6: nonzero padding bits (byte " +
                             std::to_string(text.size() - 1) + ")");
    }
    return g;
}

std::string to_graph6(const Graph& g) {
    int n = g.size();
    std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::string out(1 + (bits + 5) / 6, static_cast<char>(63));
    out[0] = static_cast<char>(63 + n);
    std::size_t bit = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i, ++bit)
            if (g.edge(i, j))
                out[1 + bit / 6] =
                    static_cast<char>(out[1 + bit / 6] + (1 << (5 - bit % 6)));
    return out;
}

Graph parse_edge_list(const std::string& text) {
    std::vector<std::pair<int, int>> edges;
    int maxv = -1;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u)) continue;  // blank or comment-only line
        if (!(ls >> v))
            throw ParseError("edge list line " + std::to_string(lineno) +
                             ": expected `u v`");
        std::string rest;
        if (ls >> rest)
            throw ParseError("edge list line " + std::to_string(lineno) +
                             ": trailing tokens");
        if (u < 0 || v < 0 || u > 61 || v > 61)
            throw ParseError("edge list line " + std::to_string(lineno) +
                             ": vertex index out of range");
        edges.emplace_back(u, v);
        maxv = std::max({maxv, u, v});
    }
    if (maxv < 0) throw ParseError("edge list: no edges found");
    Graph g(maxv + 1);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

DenseMatrix adjacency_matrix(const Graph& g) {
    DenseMatrix m(g.size());
    for (int i = 0; i < g.size(); ++i)
        for (int j = 0; j < g.size(); ++j)
            if (i != j && g.edge(i, j)) m.at(i, j) = 1.0;
    return m;
}

DenseMatrix normalized_laplacian(const Graph& g) {
    for (int v = 0; v < g.size(); ++v)
        if (g.degree(v) == 0)
            throw ArgumentError("vertex " + std::to_string(v) +
                                " is isolated: normalized Laplacian undefined");
    if (!g.connected())
        throw ArgumentError("graph must be connected for spectral operations");
    DenseMatrix m(g.size());
    std::vector<double> dinv(static_cast<std::size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v)
        dinv[static_cast<std::size_t>(v)] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    for (int i = 0; i < g.size(); ++i) {
        m.at(i, i) = 1.0;
        for (int j = 0; j < g.size(); ++j)
            if (i != j && g.edge(i, j))
                m.at(i, j) = -dinv[static_cast<std::size_t>(i)] *
                             dinv[static_cast<std::size_t>(j)];
    }
    return m;
}

} // namespace echoloc
