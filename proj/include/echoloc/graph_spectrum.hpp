#pragma once

#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "echoloc/counting.hpp"
#include "echoloc/graph.hpp"

namespace echoloc {

using Rational = boost::multiprecision::cpp_rational;

enum class GraphOperator { normalized_laplacian, adjacency };

std::string to_string(GraphOperator op);

// Full symmetric eigendecomposition by cyclic Jacobi rotations: deterministic
// row-major sweep order, off-diagonal Frobenius threshold 1e-13, at most 100
// sweeps.  Eigenpairs come back sorted ascending.
void jacobi_eigensolver(const DenseMatrix& m, std::vector<double>& eigenvalues,
                        DenseMatrix& eigenvectors);

struct SpectralCluster {
    double eigenvalue = 0.0;             // cluster mean
    int multiplicity = 0;
    std::vector<double> vertex_weights;  // projector diagonal per vertex
};

// Eigenvalues clustered at gaps below cluster_tol (default relative 1e-9);
// per-cluster vertex weights are basis-independent projector diagonals.
// Cluster decisions are advisory: cospectrality verdicts always come from
// the exact walk-moment oracle.
struct GraphSpectrum {
    std::vector<double> eigenvalues;  // all n, ascending
    std::vector<SpectralCluster> clusters;
};

GraphSpectrum spectrum(const Graph& g, GraphOperator op, double cluster_tol = -1.0);

// N_v(lambda) = sum over clusters with eigenvalue <= lambda of the vertex
// weight; cutoff sits just above the top of the spectrum.
CountingFunction vertex_counting_function(const GraphSpectrum& spec, int v,
                                          const std::string& graph_id = "");

// Exact diagonal moments mu_k = (A^k)_{vv} or ((I - D^{-1} A)^k)_{vv};
// the normalized Laplacian case uses the diagonal similarity
// (L^k)_{vv} = ((I - D^{-1}A)^k)_{vv} to stay in rational arithmetic.
// Returned for k = 0..k_max.
std::vector<Rational> walk_moments(const Graph& g, int v, int k_max,
                                   GraphOperator op);

// Moments agree for all k <= n-1 iff the two vertex spectral measures
// coincide (both are supported on the <= n eigenvalues; Vandermonde).
bool vertices_cospectral_exact(const Graph& g, int u, int v, GraphOperator op);

// Float counterpart used as a pre-filter and in the oracle-equivalence test.
bool vertices_cospectral_float(const GraphSpectrum& spec, int u, int v,
                               double tol = 1e-9);

// All unordered pairs with identical vertex counting functions, decided by
// the exact oracle (float spectrum only prunes).
std::vector<std::pair<int, int>> cospectral_vertex_pairs(const Graph& g,
                                                         GraphOperator op);

struct CospectralityReport {
    std::vector<std::pair<int, int>> cospectral_pairs;
    std::vector<std::pair<int, int>> non_similar_pairs;  // cospectral, not automorphic
    std::vector<std::vector<int>> orbits;
};

// Cospectral pairs + automorphism orbits for one graph (n <= 16 for the
// orbit computation).
CospectralityReport analyze_vertex_cospectrality(const Graph& g, GraphOperator op);

struct FailureScan {
    // (stream index, report) for every graph with a non-similar cospectral pair
    std::vector<std::pair<std::size_t, CospectralityReport>> failures;
    // (stream index, error message) for graphs that could not be analyzed
    std::vector<std::pair<std::size_t, std::string>> errors;
};

// Streaming echolocation-failure search; per-graph errors are logged and the
// scan continues.  Order-preserving.
FailureScan find_echolocation_failures(const std::vector<Graph>& graphs,
                                       GraphOperator op);

} // namespace echoloc
