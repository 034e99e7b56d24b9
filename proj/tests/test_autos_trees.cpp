#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <unordered_set>

#include "echoloc/automorphism.hpp"
#include "echoloc/errors.hpp"
#include "echoloc/graph_spectrum.hpp"
#include "echoloc/trees.hpp"
#include "support/graphgen.hpp"

using namespace echoloc;

namespace {

Graph path3() {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    return g;
}

Graph petersen() {
    Graph g(10);
    for (int i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

} // namespace

TEST_CASE("automorphism orbits") {
    SUBCASE("path: the two ends and the center") {
        auto orbits = automorphism_orbits(path3());
        REQUIRE(orbits.size() == 2);
        CHECK(orbits[0] == std::vector<int>{0, 2});
        CHECK(orbits[1] == std::vector<int>{1});
    }
    SUBCASE("K4 minus an edge: two orbits of two") {
        Graph g(4);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        g.add_edge(1, 2);
        g.add_edge(1, 3);
        g.add_edge(2, 3);
        auto orbits = automorphism_orbits(g);
        REQUIRE(orbits.size() == 2);
        CHECK(orbits[0] == std::vector<int>{0, 1});
        CHECK(orbits[1] == std::vector<int>{2, 3});
    }
    SUBCASE("a large star collapses all leaves (big group, fast queries)") {
        Graph star(16);
        for (int v = 1; v < 16; ++v) star.add_edge(0, v);
        auto orbits = automorphism_orbits(star);
        REQUIRE(orbits.size() == 2);
        CHECK(orbits[0].size() == 1);
        CHECK(orbits[1].size() == 15);
    }
    SUBCASE("the Petersen graph is vertex-transitive") {
        auto orbits = automorphism_orbits(petersen());
        REQUIRE(orbits.size() == 1);
        CHECK(orbits[0].size() == 10);
    }
    SUBCASE("size limit") {
        CHECK_THROWS_AS(automorphism_orbits(Graph(17)), SizeError);
    }
    SUBCASE("rigid asymmetric tree on 7 vertices") {
        // center 2 with branches of three distinct shapes: a leaf, a 2-chain,
        // and a 3-chain
        Graph g(7);
        g.add_edge(2, 5);
        g.add_edge(2, 1);
        g.add_edge(1, 0);
        g.add_edge(2, 3);
        g.add_edge(3, 4);
        g.add_edge(4, 6);
        CHECK(automorphism_orbits(g).size() == 7);
        CHECK(!exists_automorphism_mapping(g, 0, 5));
    }
}

TEST_CASE("isomorphism search") {
    Graph a = path3();
    Graph b(3);
    b.add_edge(0, 2);
    b.add_edge(1, 2);  // path centered at 2
    CHECK(find_isomorphism(a, b).has_value());
    Graph c(3);
    c.add_edge(0, 1);
    CHECK(!find_isomorphism(a, c).has_value());
    auto perm = find_isomorphism(a, b);
    REQUIRE(perm);
    // the center must map to the center
    CHECK((*perm)[1] == 2);
}

TEST_CASE("free tree enumeration") {
    SUBCASE("counts match the classical sequence") {
        std::vector<std::size_t> expect{1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551};
        for (int n = 1; n <= 12; ++n)
            CHECK(enumerate_trees(n).size() == expect[static_cast<std::size_t>(n - 1)]);
    }
    SUBCASE("every output is a tree on n vertices") {
        for (int n = 2; n <= 10; ++n)
            for (const auto& t : enumerate_trees(n)) {
                CHECK(t.size() == n);
                CHECK(t.edge_count() == static_cast<std::size_t>(n - 1));
                CHECK(t.connected());
            }
    }
    SUBCASE("n = 4: the path and the star") {
        auto trees = enumerate_trees(4);
        REQUIRE(trees.size() == 2);
        std::multiset<int> degs;
        for (const auto& t : trees) {
            auto d = t.degrees();
            degs.insert(*std::max_element(d.begin(), d.end()));
        }
        CHECK(degs == std::multiset<int>{2, 3});
    }
    SUBCASE("pairwise non-isomorphic up to n = 8") {
        for (int n = 4; n <= 8; ++n) {
            auto trees = enumerate_trees(n);
            for (std::size_t i = 0; i < trees.size(); ++i)
                for (std::size_t j = i + 1; j < trees.size(); ++j)
                    CHECK(!find_isomorphism(trees[i], trees[j]).has_value());
        }
    }
    SUBCASE("brute-force Prufer cross-check up to n = 9") {
        for (int n : {4, 5, 6, 7, 8, 9}) {
            std::unordered_set<std::string> canon;
            std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
            for (;;) {
                canon.insert(testsupport::canon_free_tree(testsupport::prufer_decode(seq)));
                int k = n - 3;
                while (k >= 0 && seq[static_cast<std::size_t>(k)] == n - 1) {
                    seq[static_cast<std::size_t>(k)] = 0;
                    --k;
                }
                if (k < 0) break;
                ++seq[static_cast<std::size_t>(k)];
            }
            CHECK(canon.size() == enumerate_trees(n).size());
        }
    }
    SUBCASE("out-of-range sizes") {
        CHECK_THROWS_AS(enumerate_trees(0), ArgumentError);
        CHECK_THROWS_AS(enumerate_trees(13), ArgumentError);
    }
}

TEST_CASE("similar vertices are always cospectral") {
    for (int n : {5, 6, 7}) {
        for (const auto& t : enumerate_trees(n)) {
            auto orbits = automorphism_orbits(t);
            for (const auto& orbit : orbits)
                for (std::size_t i = 1; i < orbit.size(); ++i) {
                    CHECK(vertices_cospectral_exact(t, orbit[0], orbit[i],
                                                    GraphOperator::adjacency));
                    CHECK(vertices_cospectral_exact(t, orbit[0], orbit[i],
                                                    GraphOperator::normalized_laplacian));
                }
        }
    }
}

TEST_CASE("trees up to 8 vertices have no non-similar cospectral pairs") {
    // Regression fixture from an exhaustive scan; the smallest example
    // appears at 9 vertices.
    for (int n = 2; n <= 8; ++n) {
        auto trees = enumerate_trees(n);
        auto scan = find_echolocation_failures(trees, GraphOperator::adjacency);
        CHECK(scan.failures.empty());
        CHECK(scan.errors.empty());
    }
}

TEST_CASE("cubic corpus: counts and operator coincidence") {
    // connected cubic graphs: 1, 2, 5, 19 classes on 4, 6, 8, 10 vertices
    std::map<int, std::size_t> expect{{4, 1}, {6, 2}, {8, 5}, {10, 19}};
    for (auto [n, count] : expect) {
        auto cubics = testsupport::connected_cubic_graphs(n);
        CHECK(cubics.size() == count);
        // on regular graphs adjacency- and normalized-Laplacian-cospectral
        // pairs coincide
        for (const auto& g : cubics) {
            auto pa = cospectral_vertex_pairs(g, GraphOperator::adjacency);
            auto pn = cospectral_vertex_pairs(g, GraphOperator::normalized_laplacian);
            CHECK(pa == pn);
        }
    }
}
