#include "echoloc/automorphism.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "echoloc/errors.hpp"

namespace echoloc {

namespace {

// Joint color refinement (1-WL) of two graphs, so equal color ids mean equal
// refined classes across both.  Signature: own color + sorted neighbor colors.
std::pair<std::vector<int>, std::vector<int>> refine_joint(const Graph& g,
                                                           const Graph& h) {
    std::vector<int> cg(static_cast<std::size_t>(g.size()));
    std::vector<int> ch(static_cast<std::size_t>(h.size()));
    for (int v = 0; v < g.size(); ++v) cg[static_cast<std::size_t>(v)] = g.degree(v);
    for (int v = 0; v < h.size(); ++v) ch[static_cast<std::size_t>(v)] = h.degree(v);

    for (int round = 0; round < g.size() + h.size() + 1; ++round) {
        std::map<std::vector<int>, int> ids;
        auto signature = [](const Graph& gr, const std::vector<int>& col, int v) {
            std::vector<int> sig{col[static_cast<std::size_t>(v)]};
            for (int w : gr.neighbors(v)) sig.push_back(col[static_cast<std::size_t>(w)]);
            std::sort(sig.begin() + 1, sig.end());
            return sig;
        };
        std::vector<std::vector<int>> sg(static_cast<std::size_t>(g.size()));
        std::vector<std::vector<int>> sh(static_cast<std::size_t>(h.size()));
        for (int v = 0; v < g.size(); ++v) {
            sg[static_cast<std::size_t>(v)] = signature(g, cg, v);
            ids.emplace(sg[static_cast<std::size_t>(v)], 0);
        }
        for (int v = 0; v < h.size(); ++v) {
            sh[static_cast<std::size_t>(v)] = signature(h, ch, v);
            ids.emplace(sh[static_cast<std::size_t>(v)], 0);
        }
        int next = 0;
        for (auto& [sig, id] : ids) id = next++;
        std::vector<int> ng(static_cast<std::size_t>(g.size()));
        std::vector<int> nh(static_cast<std::size_t>(h.size()));
        for (int v = 0; v < g.size(); ++v) ng[static_cast<std::size_t>(v)] = ids[sg[static_cast<std::size_t>(v)]];
        for (int v = 0; v < h.size(); ++v) nh[static_cast<std::size_t>(v)] = ids[sh[static_cast<std::size_t>(v)]];
        if (ng == cg && nh == ch) break;
        cg = std::move(ng);
        ch = std::move(nh);
    }
    return {cg, ch};
}

struct IsoSearch {
    const Graph& g;
    const Graph& h;
    const std::vector<int>& cg;
    const std::vector<int>& ch;
    std::vector<int> order;  // g vertices in mapping order
    std::vector<int> perm;   // g -> h, -1 when unmapped
    std::vector<bool> used;
    int anchor_u = -1, anchor_v = -1;

    bool dfs(std::size_t k) {
        if (k == order.size()) return true;
        int u = order[k];
        for (int w = 0; w < h.size(); ++w) {
            if (used[static_cast<std::size_t>(w)]) continue;
            if (u == anchor_u && w != anchor_v) continue;
            if (ch[static_cast<std::size_t>(w)] != cg[static_cast<std::size_t>(u)]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                int x = order[j];
                if (g.edge(u, x) != h.edge(w, perm[static_cast<std::size_t>(x)])) ok = false;
            }
            if (!ok) continue;
            perm[static_cast<std::size_t>(u)] = w;
            used[static_cast<std::size_t>(w)] = true;
            if (dfs(k + 1)) return true;
            used[static_cast<std::size_t>(w)] = false;
            perm[static_cast<std::size_t>(u)] = -1;
        }
        return false;
    }
};

std::optional<std::vector<int>> search_isomorphism(const Graph& g, const Graph& h,
                                                   int anchor_u, int anchor_v) {
    if (g.size() != h.size()) return std::nullopt;
    auto [cg, ch] = refine_joint(g, h);
    {
        std::vector<int> a = cg, b = ch;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    if (anchor_u >= 0 &&
        cg[static_cast<std::size_t>(anchor_u)] != ch[static_cast<std::size_t>(anchor_v)])
        return std::nullopt;

    // class sizes for most-constrained-first ordering
    std::map<int, int> class_size;
    for (int c : cg) ++class_size[c];

    IsoSearch s{g, h, cg, ch, {}, {}, {}, anchor_u, anchor_v};
    s.order.resize(static_cast<std::size_t>(g.size()));
    std::iota(s.order.begin(), s.order.end(), 0);
    std::sort(s.order.begin(), s.order.end(), [&](int x, int y) {
        bool ax = x == anchor_u, ay = y == anchor_u;
        if (ax != ay) return ax;  // anchored vertex first
        int sx = class_size[cg[static_cast<std::size_t>(x)]];
        int sy = class_size[cg[static_cast<std::size_t>(y)]];
        if (sx != sy) return sx < sy;
        return x < y;
    });
    s.perm.assign(static_cast<std::size_t>(g.size()), -1);
    s.used.assign(static_cast<std::size_t>(h.size()), false);
    if (!s.dfs(0)) return std::nullopt;
    return s.perm;
}

} // namespace

bool exists_automorphism_mapping(const Graph& g, int u, int v) {
    if (u == v) return true;
    return search_isomorphism(g, g, u, v).has_value();
}

std::vector<std::vector<int>> automorphism_orbits(const Graph& g) {
    if (g.size() > 16)
        throw SizeError("automorphism orbits limited to n <= 16, got " +
                        std::to_string(g.size()));
    int n = g.size();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };

    auto [colors, _] = refine_joint(g, g);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (colors[static_cast<std::size_t>(u)] != colors[static_cast<std::size_t>(v)]) continue;
            if (find(u) == find(v)) continue;
            if (exists_automorphism_mapping(g, u, v))
                parent[static_cast<std::size_t>(find(v))] = find(u);
        }

    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v) groups[find(v)].push_back(v);
    std::vector<std::vector<int>> orbits;
    for (auto& [root, members] : groups) orbits.push_back(std::move(members));
    std::sort(orbits.begin(), orbits.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                  return a.front() < b.front();
              });
    return orbits;
}

std::optional<std::vector<int>> find_isomorphism(const Graph& g, const Graph& h) {
    return search_isomorphism(g, h, -1, -1);
}

} // namespace echoloc
