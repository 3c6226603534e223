#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hm/constructions.hpp"
#include "hm/errors.hpp"
#include "hm/hypergraph.hpp"
#include "hm/io.hpp"
#include "oracles.hpp"

using namespace hm;

TEST_CASE("construction canonicalizes and validates") {
    Hypergraph h(5, 3, {{2, 1, 0}, {0, 4, 3}});
    CHECK(h.edges()[0] == std::vector<int>{0, 1, 2});
    CHECK(h.edges()[1] == std::vector<int>{0, 3, 4});
    CHECK(h.has_edge(std::vector<int>{4, 3, 0}));
    CHECK_FALSE(h.has_edge(std::vector<int>{1, 2, 3}));

    CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1, 5}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(5, 3, {{0, 1, 2}, {2, 1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(0, 3, {}), std::invalid_argument);
    CHECK_THROWS_AS(Hypergraph(5, 1, {}), std::invalid_argument);
}

TEST_CASE("degree") {
    Hypergraph complete5 = Hypergraph::complete(5, 3);
    for_each_combination(5, 2, [&](const std::vector<int>& s) {
        CHECK(degree(complete5, s) == 3);
    });

    Hypergraph hpp = gen_cyclic_barrier(4);  // n = 12, delta_2 = m-1 = 3
    long long minimum = -1;
    for_each_combination(12, 2, [&](const std::vector<int>& s) {
        long long d = degree(hpp, s);
        CHECK(d >= 3);
        if (minimum < 0 || d < minimum) minimum = d;
    });
    CHECK(minimum == 3);

    Hypergraph empty = Hypergraph::edgeless(6, 3);
    CHECK(degree(empty, std::vector<int>{1, 4}) == 0);

    CHECK_THROWS_AS(degree(complete5, std::vector<int>{}), InvalidArity);
    CHECK_THROWS_AS(degree(complete5, std::vector<int>{0, 1, 2}), InvalidArity);
    CHECK_THROWS_AS(degree(complete5, std::vector<int>{1, 1}), std::invalid_argument);
}

TEST_CASE("min_degree against the completion-enumeration oracle") {
    CHECK(min_degree(Hypergraph::complete(6, 3), 2) == 4);
    CHECK(min_degree(Hypergraph::complete(6, 3), 1) == 10);

    auto mycroft = gen_mycroft(3, 12);
    CHECK(min_degree(mycroft.graph, 2) >= 12 / 3 - 3);

    Hypergraph barrier = gen_space_barrier(6, 24, 7);
    CHECK(min_degree(barrier, 2) == oracle::min_degree(barrier, 2));
    CHECK(min_degree(barrier, 1) == oracle::min_degree(barrier, 1));

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Hypergraph h = oracle::random_3graph(10, 0.4, seed);
        CHECK(min_degree(h, 2) == oracle::min_degree(h, 2));
    }

    CHECK_THROWS_AS(min_degree(barrier, 0), InvalidArity);
    CHECK_THROWS_AS(min_degree(barrier, 3), InvalidArity);
}

TEST_CASE("independence number") {
    SearchBudget budget(10'000'000);
    CHECK(independence_number(Hypergraph::complete(7, 3), budget) == 2);
    CHECK(independence_number(Hypergraph::edgeless(9, 3), budget) == 9);

    auto mycroft = gen_mycroft(3, 12);
    std::vector<int> witness;
    int alpha = independence_number(mycroft.graph, budget, &witness);
    CHECK(alpha < 9);  // below p * k
    CHECK(alpha == oracle::independence_number(mycroft.graph));
    // witness really is edge-free and of the reported size
    CHECK(static_cast<int>(witness.size()) == alpha);
    Hypergraph sub = mycroft.graph;
    std::uint64_t wm = mask_of(witness);
    for (std::size_t i = 0; i < sub.edge_count(); ++i) CHECK((sub.edge_mask(i) & ~wm) != 0);

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        Hypergraph h = oracle::random_3graph(12, 0.2, seed);
        CHECK(independence_number(h, budget) == oracle::independence_number(h));
    }

    SearchBudget tiny(3);
    CHECK_THROWS_AS(independence_number(Hypergraph::complete(9, 3), tiny), BudgetExhausted);
}

TEST_CASE("induced pattern freeness") {
    auto mycroft = gen_mycroft(3, 12);
    CHECK(is_induced_pattern_free(mycroft.graph, PatternGraph::K4minus()));

    Hypergraph complete4 = Hypergraph::complete(4, 3);
    CHECK(is_induced_pattern_free(complete4, PatternGraph::K4minus()));
    auto witness = find_induced_pattern(complete4, PatternGraph::K43());
    REQUIRE(witness.has_value());
    CHECK(*witness == std::vector<int>{0, 1, 2, 3});

    Hypergraph h2 = gen_h2(12, 3);
    CHECK(is_pattern_free(h2, PatternGraph::K4minus()));  // outright, not merely induced
    CHECK(is_induced_pattern_free(h2, PatternGraph::K4minus()));

    // witnesses re-verify: relabelling the witness set onto 0..f-1 yields a
    // graph that itself contains the pattern as an induced subgraph
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        Hypergraph h = oracle::random_3graph(9, 0.35, seed);
        auto w = find_induced_pattern(h, PatternGraph::K4minus());
        if (!w) continue;
        std::vector<std::vector<int>> sub_edges;
        for_each_subset_of(*w, 3, [&](const std::vector<int>& t) {
            if (h.has_edge(t)) {
                std::vector<int> relabeled;
                for (int v : t)
                    relabeled.push_back(static_cast<int>(
                        std::lower_bound(w->begin(), w->end(), v) - w->begin()));
                sub_edges.push_back(relabeled);
            }
        });
        Hypergraph sub(4, 3, sub_edges);
        CHECK_FALSE(is_induced_pattern_free(sub, PatternGraph::K4minus()));
    }

    CHECK_THROWS_AS(is_induced_pattern_free(complete4, PatternGraph(4, 2, {{0, 1}}, "pair")),
                    InvalidPattern);
}

TEST_CASE("subgraph pattern containment") {
    Hypergraph hpp = gen_cyclic_barrier(4);
    CHECK(is_pattern_free(hpp, PatternGraph::K43()));

    Hypergraph complete6 = Hypergraph::complete(6, 3);
    CHECK_FALSE(is_pattern_free(complete6, PatternGraph::K43()));

    Hypergraph h1 = gen_h1(12, 9);
    CHECK(is_pattern_free(h1, PatternGraph::K43()));

    // K4minus containment only needs three of the four triples present
    Hypergraph threeEdges(4, 3, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}});
    CHECK_FALSE(is_pattern_free(threeEdges, PatternGraph::K4minus()));
    CHECK_FALSE(is_induced_pattern_free(threeEdges, PatternGraph::K4minus()));
}

TEST_CASE("link graph") {
    Hypergraph complete6 = Hypergraph::complete(6, 3);
    std::vector<int> rest = {1, 2, 3, 4, 5};
    LinkGraph link = link_graph(complete6, 0, rest);
    CHECK(link.pairs.size() == 10);  // complete graph on 5

    // inside H(m, n) the link of an A-vertex on B is complete bipartite
    Hypergraph barrier = gen_space_barrier(4, 16, 3);
    std::vector<int> b(12);
    std::iota(b.begin(), b.end(), 4);
    LinkGraph alink = link_graph(barrier, 0, b);
    CHECK(static_cast<long long>(alink.pairs.size()) == 6LL * 6LL);
    CHECK(count_triangles(alink) == 0);  // bipartite

    Hypergraph empty = Hypergraph::edgeless(6, 3);
    CHECK(link_graph(empty, 0, rest).pairs.empty());

    std::vector<int> with_v = {0, 1, 2};
    CHECK_THROWS_AS(link_graph(complete6, 0, with_v), std::invalid_argument);
}

TEST_CASE("triangle counts and the edge-density bound") {
    // complete graph K5: 10 triangles, bound attains equality
    oracle::random_graph(1, 0, 1);  // touch the helper
    hm::LinkGraph k5;
    k5.ground = {0, 1, 2, 3, 4};
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) k5.pairs.emplace_back(i, j);
    CHECK(count_triangles(k5) == 10);
    CHECK(goodman_bound(5, 10) == Rational(10));

    hm::LinkGraph k22;
    k22.ground = {0, 1, 2, 3};
    k22.pairs = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    CHECK(count_triangles(k22) == 0);
    CHECK(goodman_bound(4, 4) == Rational(0));

    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        int n = 5 + static_cast<int>(seed % 16);
        hm::LinkGraph g = oracle::random_graph(n, 0.55, seed);
        long long tri = count_triangles(g);
        CHECK(tri == oracle::count_triangles(g));
        CHECK(Rational(tri) >= goodman_bound(n, static_cast<long long>(g.pairs.size())));
    }

    CHECK_THROWS_AS(goodman_bound(0, 0), std::invalid_argument);
}

TEST_CASE("hg file round trip") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "hm_io_test";
    fs::create_directories(dir);

    {
        std::istringstream in("3 3\n0 1 2\n");
        Hypergraph h = read_hypergraph_text(in);
        CHECK(h.n() == 3);
        CHECK(h.k() == 3);
        CHECK(h.edge_count() == 1);
    }
    {
        std::istringstream in("# comment\n\n4 3\n2 1 0\n0 2 3\n");
        Hypergraph h = read_hypergraph_text(in);
        CHECK(h.edge_count() == 2);
        CHECK(h.edges()[0] == std::vector<int>{0, 1, 2});
    }

    auto mycroft = gen_mycroft(3, 12);
    fs::path file = dir / "h3.hg";
    write_hypergraph(mycroft.graph, file);
    Hypergraph back = read_hypergraph(file);
    CHECK(back.n() == mycroft.graph.n());
    CHECK(back.edges() == mycroft.graph.edges());

    fs::path jfile = dir / "h3.json";
    write_hypergraph(mycroft.graph, jfile);
    Hypergraph jback = read_hypergraph(jfile);
    CHECK(jback.edges() == mycroft.graph.edges());

    auto expect_parse_error = [&](const std::string& text, int line) {
        std::istringstream in(text);
        try {
            read_hypergraph_text(in);
            FAIL("expected a parse error for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_parse_error("3 3\n0 1 1\n", 2);     // repeated vertex
    expect_parse_error("3 3\n0 1 3\n", 2);     // vertex out of range
    expect_parse_error("3 3\n0 1\n", 2);       // wrong arity
    expect_parse_error("3\n", 1);              // bad header
    expect_parse_error("3 3\nx y z\n", 2);     // not integers
    expect_parse_error("4 3\n0 1 2\n2 1 0\n", 3);  // duplicate edge

    fs::remove_all(dir);
}
