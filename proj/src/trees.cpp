#include "echoloc/trees.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "echoloc/errors.hpp"

namespace echoloc {

namespace {

// Canonical rooted tree: children sorted nonincreasing by encoding, where
// enc = "(" + concat(children encodings) + ")".  String order on encodings
// is the total order used everywhere.
struct Rooted {
    int size = 1;
    std::string enc = "()";
    std::vector<int> children;  // indices into the pool
};

struct Pool {
    std::vector<Rooted> trees;              // all canonical rooted trees, size <= cap
    std::vector<std::vector<int>> by_size;  // indices per size, enc-descending

    explicit Pool(int cap) : by_size(static_cast<std::size_t>(cap) + 1) {
        trees.push_back(Rooted{});  // the single vertex
        by_size[1].push_back(0);
        for (int s = 2; s <= cap; ++s) {
            std::vector<int> acc;
            build(s, s - 1, -1, acc);
            std::sort(by_size[static_cast<std::size_t>(s)].begin(),
                      by_size[static_cast<std::size_t>(s)].end(), [&](int a, int b) {
                          return trees[static_cast<std::size_t>(a)].enc >
                                 trees[static_cast<std::size_t>(b)].enc;
                      });
        }
    }

    // true when tree a is allowed after tree b in a nonincreasing child list
    bool le(int a, int bound) const {
        if (bound < 0) return true;
        return trees[static_cast<std::size_t>(a)].enc <=
               trees[static_cast<std::size_t>(bound)].enc;
    }

    // Extend `acc` (children chosen so far, nonincreasing) by trees totalling
    // `remaining` vertices; each new child must be <= `bound`.
    void build(int root_size, int remaining, int bound, std::vector<int>& acc) {
        if (remaining == 0) {
            Rooted r;
            r.size = root_size;
            r.children = acc;
            r.enc = "(";
            for (int c : acc) r.enc += trees[static_cast<std::size_t>(c)].enc;
            r.enc += ")";
            trees.push_back(std::move(r));
            by_size[static_cast<std::size_t>(root_size)].push_back(
                static_cast<int>(trees.size()) - 1);
            return;
        }
        for (int s = std::min(remaining, root_size - 1); s >= 1; --s) {
            for (int idx : by_size[static_cast<std::size_t>(s)]) {
                if (!le(idx, bound)) continue;
                acc.push_back(idx);
                build(root_size, remaining - s, idx, acc);
                acc.pop_back();
            }
        }
    }

    // Children multisets for a root of `total` vertices with every subtree
    // size capped (centroid condition).
    std::vector<std::vector<int>> rooted_forests(int total_children, int size_cap) {
        std::vector<std::vector<int>> out;
        std::vector<int> acc;
        forests(total_children, size_cap, -1, acc, out);
        return out;
    }

    void forests(int remaining, int size_cap, int bound, std::vector<int>& acc,
                 std::vector<std::vector<int>>& out) {
        if (remaining == 0) {
            out.push_back(acc);
            return;
        }
        for (int s = std::min(remaining, size_cap); s >= 1; --s) {
            for (int idx : by_size[static_cast<std::size_t>(s)]) {
                if (!le(idx, bound)) continue;
                acc.push_back(idx);
                forests(remaining - s, size_cap, idx, acc, out);
                acc.pop_back();
            }
        }
    }

    // Preorder adjacency construction.
    void attach(int idx, int parent, int& next, Graph& g) const {
        for (int c : trees[static_cast<std::size_t>(idx)].children) {
            int child = next++;
            g.add_edge(parent, child);
            attach(c, child, next, g);
        }
    }
};

} // namespace

std::vector<Graph> enumerate_trees(int n) {
    if (n < 1 || n > 12)
        throw ArgumentError("tree enumeration supports 1 <= n <= 12, got " +
                            std::to_string(n));
    std::vector<Graph> out;
    if (n == 1) {
        out.emplace_back(1);
        return out;
    }
    if (n == 2) {
        Graph g(2);
        g.add_edge(0, 1);
        out.push_back(g);
        return out;
    }

    Pool pool(n / 2 == 0 ? 1 : std::max(n / 2, (n - 1) / 2));

    // Unicentroidal: root children each span at most floor((n-1)/2) vertices.
    for (const auto& children : pool.rooted_forests(n - 1, (n - 1) / 2)) {
        Graph g(n);
        int next = 1;
        for (int c : children) {
            int child = next++;
            g.add_edge(0, child);
            pool.attach(c, child, next, g);
        }
        out.push_back(g);
    }

    // Bicentroidal (n even): an edge joining t1 >= t2, both on n/2 vertices.
    if (n % 2 == 0) {
        const auto& halves = pool.by_size[static_cast<std::size_t>(n / 2)];
        for (std::size_t i = 0; i < halves.size(); ++i) {
            for (std::size_t k = i; k < halves.size(); ++k) {
                Graph g(n);
                int next = 1;
                pool.attach(halves[i], 0, next, g);
                int root2 = next++;
                g.add_edge(0, root2);
                pool.attach(halves[k], root2, next, g);
                out.push_back(g);
            }
        }
    }
    return out;
}

} // namespace echoloc
