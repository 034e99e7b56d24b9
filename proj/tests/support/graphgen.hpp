#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "echoloc/automorphism.hpp"
#include "echoloc/graph.hpp"

namespace testsupport {

// Prufer decode (labels 0..n-1, sequence length n-2).
inline echoloc::Graph prufer_decode(const std::vector<int>& seq) {
    int n = static_cast<int>(seq.size()) + 2;
    echoloc::Graph g(n);
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int a : seq) ++deg[static_cast<std::size_t>(a)];
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int a : seq) {
        int leaf = -1;
        for (int v = 0; v < n; ++v)
            if (deg[static_cast<std::size_t>(v)] == 1 &&
                !used[static_cast<std::size_t>(v)]) {
                leaf = v;
                break;
            }
        g.add_edge(leaf, a);
        used[static_cast<std::size_t>(leaf)] = true;
        --deg[static_cast<std::size_t>(a)];
    }
    int u = -1;
    for (int v = 0; v < n; ++v)
        if (!used[static_cast<std::size_t>(v)]) {
            if (u < 0)
                u = v;
            else
                g.add_edge(u, v);
        }
    return g;
}

// Canonical string of a rooted tree: children strings sorted.
inline std::string canon_rooted(const echoloc::Graph& g, int v, int parent) {
    std::vector<std::string> kids;
    for (int w : g.neighbors(v))
        if (w != parent) kids.push_back(canon_rooted(g, w, v));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    return s + ")";
}

// Canonical string of a free tree via its centroid(s).
inline std::string canon_free_tree(const echoloc::Graph& g) {
    int n = g.size();
    if (n == 1) return "()";
    std::vector<int> size(static_cast<std::size_t>(n), 0);
    std::vector<int> order, parent(static_cast<std::size_t>(n), -1);
    order.push_back(0);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int w : g.neighbors(order[i]))
            if (w != parent[static_cast<std::size_t>(order[i])]) {
                parent[static_cast<std::size_t>(w)] = order[i];
                order.push_back(w);
            }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        size[static_cast<std::size_t>(*it)] += 1;
        if (parent[static_cast<std::size_t>(*it)] >= 0)
            size[static_cast<std::size_t>(parent[static_cast<std::size_t>(*it)])] +=
                size[static_cast<std::size_t>(*it)];
    }
    int best = n + 1;
    std::vector<int> centroids;
    for (int v = 0; v < n; ++v) {
        int worst = n - size[static_cast<std::size_t>(v)];
        for (int w : g.neighbors(v))
            if (parent[static_cast<std::size_t>(w)] == v)
                worst = std::max(worst, size[static_cast<std::size_t>(w)]);
        if (worst < best) {
            best = worst;
            centroids = {v};
        } else if (worst == best) {
            centroids.push_back(v);
        }
    }
    if (centroids.size() == 1) return canon_rooted(g, centroids[0], -1);
    std::string a = canon_rooted(g, centroids[0], centroids[1]);
    std::string b = canon_rooted(g, centroids[1], centroids[0]);
    if (b < a) std::swap(a, b);
    return "[" + a + b + "]";
}

// All connected cubic graphs on n vertices, one per isomorphism class.
// Every cubic graph has a labeling with N(0) = {1,2,3} and the neighbors of
// each vertex u chosen among larger indices once vertices are completed in
// increasing order, so backtracking over that shape reaches every class;
// duplicates are removed by walk-count bucketing plus exact isomorphism.
inline std::vector<echoloc::Graph> connected_cubic_graphs(int n) {
    std::vector<echoloc::Graph> classes;
    if (n < 4 || n % 2 != 0) return classes;
    std::map<std::vector<long long>, std::vector<std::size_t>> buckets;

    auto invariant = [](const echoloc::Graph& g) {
        int m = g.size();
        std::vector<long long> a(static_cast<std::size_t>(m) * m, 0);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                a[static_cast<std::size_t>(i) * m + j] = g.edge(i, j) ? 1 : 0;
        auto mul = [m](const std::vector<long long>& x, const std::vector<long long>& y) {
            std::vector<long long> r(static_cast<std::size_t>(m) * m, 0);
            for (int i = 0; i < m; ++i)
                for (int k = 0; k < m; ++k) {
                    long long xik = x[static_cast<std::size_t>(i) * m + k];
                    if (!xik) continue;
                    for (int j = 0; j < m; ++j)
                        r[static_cast<std::size_t>(i) * m + j] +=
                            xik * y[static_cast<std::size_t>(k) * m + j];
                }
            return r;
        };
        auto a2 = mul(a, a);
        auto a3 = mul(a2, a);
        auto a4 = mul(a2, a2);
        std::vector<long long> tri, quad;
        for (int i = 0; i < m; ++i) {
            tri.push_back(a3[static_cast<std::size_t>(i) * m + i]);
            quad.push_back(a4[static_cast<std::size_t>(i) * m + i]);
        }
        std::sort(tri.begin(), tri.end());
        std::sort(quad.begin(), quad.end());
        tri.insert(tri.end(), quad.begin(), quad.end());
        return tri;
    };

    auto finalize = [&](const echoloc::Graph& g) {
        if (!g.connected()) return;
        auto key = invariant(g);
        auto& bucket = buckets[key];
        for (std::size_t idx : bucket)
            if (echoloc::find_isomorphism(g, classes[idx])) return;
        bucket.push_back(classes.size());
        classes.push_back(g);
    };

    std::function<void(const echoloc::Graph&, const std::vector<int>&, int)> extend;
    std::function<void(const echoloc::Graph&, const std::vector<int>&, int, int, int)>
        choose;
    extend = [&](const echoloc::Graph& g, const std::vector<int>& rem, int u) {
        while (u < n && rem[static_cast<std::size_t>(u)] == 0) ++u;
        if (u == n) {
            finalize(g);
            return;
        }
        choose(g, rem, u, u + 1, rem[static_cast<std::size_t>(u)]);
    };
    choose = [&](const echoloc::Graph& g, const std::vector<int>& rem, int u, int from,
                 int need) {
        if (need == 0) {
            extend(g, rem, u + 1);
            return;
        }
        for (int v = from; v < n; ++v) {
            if (rem[static_cast<std::size_t>(v)] == 0 || g.edge(u, v)) continue;
            echoloc::Graph g2 = g;
            std::vector<int> r2 = rem;
            g2.add_edge(u, v);
            --r2[static_cast<std::size_t>(u)];
            --r2[static_cast<std::size_t>(v)];
            choose(g2, r2, u, v + 1, need - 1);
        }
    };

    echoloc::Graph g0(n);
    g0.add_edge(0, 1);
    g0.add_edge(0, 2);
    g0.add_edge(0, 3);
    std::vector<int> rem(static_cast<std::size_t>(n), 3);
    rem[0] = 0;
    rem[1] = rem[2] = rem[3] = 2;
    extend(g0, rem, 1);
    return classes;
}

} // namespace testsupport
