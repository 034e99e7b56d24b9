#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace echoloc {

// Simple undirected graph, no self-loops, n <= 62 (graph6 short form).
// Adjacency is kept as one 64-bit row mask per vertex.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int size() const { return n_; }
    void add_edge(int u, int v);
    bool edge(int u, int v) const;
    int degree(int v) const;
    std::vector<int> degrees() const;
    std::vector<int> neighbors(int v) const;
    std::uint64_t neighbor_mask(int v) const { return rows_[static_cast<std::size_t>(v)]; }
    std::size_t edge_count() const;
    bool connected() const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && rows_ == other.rows_;
    }

private:
    void check_vertex(int v) const;
    int n_ = 0;
    std::vector<std::uint64_t> rows_;
};

// graph6 short form: header byte n+63, then the upper triangle of the
// adjacency matrix in column-major order, 6 bits per byte (MSB first),
// each byte offset by 63.  Strict: exact length, zero padding bits,
// printable range; errors carry the byte offset.
Graph parse_graph6(const std::string& text);
std::string to_graph6(const Graph& g);

// Edge list: one `u v` pair per line, 0-indexed, `#` starts a comment.
// Vertex count is 1 + the largest index mentioned.
Graph parse_edge_list(const std::string& text);

// Tiny dense symmetric matrix used by the spectral routines.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    explicit DenseMatrix(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}
    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

// L = I - D^{-1/2} A D^{-1/2}.  Requires a connected graph (so in particular
// no isolated vertices).
DenseMatrix normalized_laplacian(const Graph& g);

DenseMatrix adjacency_matrix(const Graph& g);

} // namespace echoloc
