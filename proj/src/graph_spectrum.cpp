#include "echoloc/graph_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "echoloc/automorphism.hpp"
#include "echoloc/errors.hpp"

namespace echoloc {

std::string to_string(GraphOperator op) {
    return op == GraphOperator::adjacency ? "adjacency" : "normalized";
}

void jacobi_eigensolver(const DenseMatrix& m, std::vector<double>& eigenvalues,
                        DenseMatrix& eigenvectors) {
    int n = m.n;
    DenseMatrix a = m;
    DenseMatrix v(n);
    for (int i = 0; i < n; ++i) v.at(i, i) = 1.0;

    auto off_frobenius = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * a.at(i, j) * a.at(i, j);
        return std::sqrt(s);
    };

    int sweep = 0;
    for (; sweep < 100 && off_frobenius() > 1e-13; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a.at(p, q);
                if (apq == 0.0) continue;
                double theta = 0.5 * (a.at(q, q) - a.at(p, p)) / apq;
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a.at(k, p), akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a.at(p, k), aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = v.at(k, p), vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }
    if (sweep >= 100 && off_frobenius() > 1e-13)
        throw NumericError("Jacobi eigensolver did not converge in 100 sweeps");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return a.at(x, x) < a.at(y, y); });
    eigenvalues.assign(static_cast<std::size_t>(n), 0.0);
    eigenvectors = DenseMatrix(n);
    for (int j = 0; j < n; ++j) {
        eigenvalues[static_cast<std::size_t>(j)] = a.at(order[static_cast<std::size_t>(j)],
                                                        order[static_cast<std::size_t>(j)]);
        for (int i = 0; i < n; ++i)
            eigenvectors.at(i, j) = v.at(i, order[static_cast<std::size_t>(j)]);
    }
}

GraphSpectrum spectrum(const Graph& g, GraphOperator op, double cluster_tol) {
    if (!g.connected())
        throw ArgumentError("graph must be connected for spectral operations");
    DenseMatrix m = op == GraphOperator::adjacency ? adjacency_matrix(g)
                                                   : normalized_laplacian(g);
    GraphSpectrum spec;
    DenseMatrix vecs;
    jacobi_eigensolver(m, spec.eigenvalues, vecs);

    int n = g.size();
    std::size_t i = 0;
    while (i < spec.eigenvalues.size()) {
        std::size_t j = i + 1;
        while (j < spec.eigenvalues.size()) {
            double tol = cluster_tol >= 0.0
                             ? cluster_tol
                             : 1e-9 * std::max(1.0, std::abs(spec.eigenvalues[j]));
            if (spec.eigenvalues[j] - spec.eigenvalues[j - 1] >= tol) break;
            ++j;
        }
        SpectralCluster cl;
        cl.multiplicity = static_cast<int>(j - i);
        double mean = 0.0;
        for (std::size_t k = i; k < j; ++k) mean += spec.eigenvalues[k];
        cl.eigenvalue = mean / static_cast<double>(j - i);
        cl.vertex_weights.assign(static_cast<std::size_t>(n), 0.0);
        for (int vtx = 0; vtx < n; ++vtx) {
            double w = 0.0;
            for (std::size_t k = i; k < j; ++k)
                w += vecs.at(vtx, static_cast<int>(k)) * vecs.at(vtx, static_cast<int>(k));
            cl.vertex_weights[static_cast<std::size_t>(vtx)] = w;
        }
        spec.clusters.push_back(std::move(cl));
        i = j;
    }
    return spec;
}

CountingFunction vertex_counting_function(const GraphSpectrum& spec, int v,
                                          const std::string& graph_id) {
    if (spec.clusters.empty()) throw ArgumentError("empty spectrum");
    if (v < 0 || v >= static_cast<int>(spec.clusters.front().vertex_weights.size()))
        throw ArgumentError("vertex out of range");
    std::vector<Jump> jumps;
    std::vector<double> suppressed;
    for (const auto& cl : spec.clusters) {
        double w = cl.vertex_weights[static_cast<std::size_t>(v)];
        if (w >= 1e-14)
            jumps.push_back({cl.eigenvalue, w});
        else
            suppressed.push_back(cl.eigenvalue);
    }
    double cutoff = spec.eigenvalues.back() + 1.0;
    return CountingFunction(std::move(jumps), std::move(suppressed), cutoff,
                            "graph:" + graph_id,
                            {static_cast<double>(v)});
}

std::vector<Rational> walk_moments(const Graph& g, int v, int k_max,
                                   GraphOperator op) {
    if (v < 0 || v >= g.size()) throw ArgumentError("vertex out of range");
    if (k_max < 0) throw ArgumentError("k_max must be nonnegative");
    if (op == GraphOperator::normalized_laplacian)
        for (int u = 0; u < g.size(); ++u)
            if (g.degree(u) == 0)
                throw ArgumentError("isolated vertex: normalized Laplacian undefined");

    int n = g.size();
    std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
    row[static_cast<std::size_t>(v)] = 1;
    std::vector<Rational> moments;
    moments.reserve(static_cast<std::size_t>(k_max) + 1);
    moments.push_back(row[static_cast<std::size_t>(v)]);
    for (int k = 1; k <= k_max; ++k) {
        std::vector<Rational> next(static_cast<std::size_t>(n), Rational(0));
        if (op == GraphOperator::adjacency) {
            for (int i = 0; i < n; ++i) {
                if (row[static_cast<std::size_t>(i)] == 0) continue;
                for (int j : g.neighbors(i))
                    next[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(i)];
            }
        } else {
            // row <- row (I - D^{-1} A): column j gets row_j - sum_i row_i / d_i
            for (int j = 0; j < n; ++j) next[static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)];
            for (int i = 0; i < n; ++i) {
                if (row[static_cast<std::size_t>(i)] == 0) continue;
                Rational share = row[static_cast<std::size_t>(i)] / g.degree(i);
                for (int j : g.neighbors(i)) next[static_cast<std::size_t>(j)] -= share;
            }
        }
        row = std::move(next);
        moments.push_back(row[static_cast<std::size_t>(v)]);
    }
    return moments;
}

bool vertices_cospectral_exact(const Graph& g, int u, int v, GraphOperator op) {
    if (u == v) return true;
    auto mu = walk_moments(g, u, g.size() - 1, op);
    auto mv = walk_moments(g, v, g.size() - 1, op);
    return mu == mv;
}

bool vertices_cospectral_float(const GraphSpectrum& spec, int u, int v,
                               double tol) {
    for (const auto& cl : spec.clusters)
        if (std::abs(cl.vertex_weights[static_cast<std::size_t>(u)] -
                     cl.vertex_weights[static_cast<std::size_t>(v)]) > tol)
            return false;
    return true;
}

std::vector<std::pair<int, int>> cospectral_vertex_pairs(const Graph& g,
                                                         GraphOperator op) {
    GraphSpectrum spec = spectrum(g, op);
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v) {
            if (!vertices_cospectral_float(spec, u, v)) continue;  // prune only
            if (vertices_cospectral_exact(g, u, v, op)) pairs.emplace_back(u, v);
        }
    return pairs;
}

CospectralityReport analyze_vertex_cospectrality(const Graph& g,
                                                 GraphOperator op) {
    CospectralityReport rep;
    rep.cospectral_pairs = cospectral_vertex_pairs(g, op);
    rep.orbits = automorphism_orbits(g);
    std::vector<int> orbit_of(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t i = 0; i < rep.orbits.size(); ++i)
        for (int v : rep.orbits[i]) orbit_of[static_cast<std::size_t>(v)] = static_cast<int>(i);
    for (auto [u, v] : rep.cospectral_pairs)
        if (orbit_of[static_cast<std::size_t>(u)] != orbit_of[static_cast<std::size_t>(v)])
            rep.non_similar_pairs.emplace_back(u, v);
    return rep;
}

FailureScan find_echolocation_failures(const std::vector<Graph>& graphs,
                                       GraphOperator op) {
    FailureScan scan;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
        try {
            CospectralityReport rep = analyze_vertex_cospectrality(graphs[i], op);
            if (!rep.non_similar_pairs.empty())
                scan.failures.emplace_back(i, std::move(rep));
        } catch (const Error& e) {
            scan.errors.emplace_back(i, e.name() + std::string(": ") + e.what());
        }
    }
    return scan;
}

} // namespace echoloc
