#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "oricount/enumerate.hpp"

using namespace oricount;

TEST_CASE("orientation imbalance") {
    Graph tri = generate_complete(3);
    Orientation o;
    o.forward = {1, 0, 1};  // 0->1, 2->0, 1->2
    CHECK(o.imbalance(tri) == std::vector<long long>{0, 0, 0});
    o.forward = {1, 1, 1};
    CHECK(o.imbalance(tri) == std::vector<long long>{2, 0, -2});
}

TEST_CASE("out-degree targets") {
    Graph tri = generate_complete(3);
    CHECK(outdegree_targets(tri, {0, 0, 0}) == std::vector<long long>{1, 1, 1});
    CHECK(outdegree_targets(tri, {2, -2, 0}) == std::vector<long long>{2, 0, 1});
    CHECK(outdegree_targets(tri, {1, -1, 0}).empty());   // parity
    CHECK(outdegree_targets(tri, {4, -4, 0}).empty());   // range
}

TEST_CASE("orientation probability at the balanced point") {
    Graph tri = generate_complete(3);
    std::vector<double> ones(3, 1.0);
    CHECK(log_P(tri, {0, 0, 0}, ones) == doctest::Approx(-3 * std::log(2.0)).epsilon(1e-14));
    Graph k4 = generate_complete(4);
    auto mv = solve_merits(k4, std::vector<long long>{1, 1, -1, -1});
    CHECK(std::exp(log_P(k4, {1, 1, -1, -1}, mv.r)) == doctest::Approx(27.0 / 1024.0).epsilon(1e-10));
    CHECK_THROWS_AS(log_P(tri, {1, -1, 0}, ones), Error);
}

TEST_CASE("exact counts on small fixed instances") {
    Graph tri = generate_complete(3);
    CHECK(exact_count_bruteforce(tri, {0, 0, 0}) == 2);
    CHECK(exact_count_bruteforce(tri, {2, -2, 0}) == 1);
    CHECK(exact_count_bruteforce(tri, {1, -1, 0}) == 0);
    Graph k4 = generate_complete(4);
    CHECK(exact_count_bruteforce(k4, {1, 1, -1, -1}) == 4);
    CHECK(exact_count_dp(tri, {0, 0, 0}) == 2);
    CHECK(exact_count_dp(k4, {1, 1, -1, -1}) == 4);
    CHECK(exact_count_dp(k4, {3, -1, -1, -1}) == 2);
}

TEST_CASE("dp equals brute force on random instances") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        int n = 4 + static_cast<int>(seed % 5);
        Graph g = oracles::random_connected_graph(n, seed * 19 + 7);
        if (g.m() > 20) continue;
        auto b = oracles::random_achievable_imbalance(g, seed * 19 + 7);
        CAPTURE(seed);
        CHECK(exact_count_dp(g, b) == exact_count_bruteforce(g, b));
    }
}

TEST_CASE("group totals cover all orientations") {
    Graph g = oracles::random_connected_graph(5, 808);
    REQUIRE(g.m() <= 12);
    std::map<std::vector<long long>, long long> groups;
    Orientation o;
    o.forward.assign(g.m(), 0);
    for (std::uint64_t mask = 0; mask < (1ULL << g.m()); ++mask) {
        for (int e = 0; e < g.m(); ++e) o.forward[e] = (mask >> e) & 1;
        groups[o.imbalance(g)]++;
    }
    mpz_class total = 0;
    for (auto& [b, cnt] : groups) {
        CHECK(exact_count_dp(g, b) == static_cast<long>(cnt));
        total += static_cast<long>(cnt);
    }
    CHECK(total == mpz_class(1) << g.m());
}

TEST_CASE("balanced counts on complete graphs") {
    CHECK(exact_count_dp(generate_complete(5), std::vector<long long>(5, 0)) == 24);
    CHECK(exact_count_dp(generate_complete(7), std::vector<long long>(7, 0)) == 2640);
}

TEST_CASE("quadrature") {
    Graph edge = Graph::from_edges(2, {{0, 1}});
    std::vector<double> ones2(2, 1.0);
    CHECK(exact_count_quadrature(edge, {1, -1}, ones2, 8) == doctest::Approx(1.0).epsilon(1e-10));

    Graph tri = generate_complete(3);
    std::vector<double> ones3(3, 1.0);
    CHECK(exact_count_quadrature_auto(tri, {0, 0, 0}, ones3) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(exact_count_quadrature_auto(tri, {2, -2, 0}, ones3) == doctest::Approx(1.0).epsilon(1e-10));

    SUBCASE("matches brute force with solved merits") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            int n = 4 + static_cast<int>(seed % 2);
            Graph g = oracles::random_connected_graph(n, seed * 41 + 13);
            auto b = oracles::random_achievable_imbalance(g, seed * 41 + 13);
            if (check_feasible(g, b).status != Feasibility::StrictlyFeasible) continue;
            auto mv = solve_merits(g, b);
            double q = exact_count_quadrature_auto(g, b, mv.r);
            double exact = exact_count_bruteforce(g, b).get_d();
            CAPTURE(seed);
            CHECK(q == doctest::Approx(exact).epsilon(1e-8));
        }
    }
    SUBCASE("size guard") {
        Graph k6 = generate_complete(6);
        CHECK_THROWS_AS(exact_count_quadrature(k6, std::vector<long long>(6, 0),
                                               std::vector<double>(6, 1.0), 8),
                        Error);
    }
}

TEST_CASE("asymptotic count of the balanced triangle") {
    Graph tri = generate_complete(3);
    auto res = asymptotic_count(tri, {0, 0, 0});
    CHECK_FALSE(res.zero);
    double expect = -std::log(std::acos(-1.0)) + 3 * std::log(2.0) +
                    0.5 * std::log(6.0) - 0.5 * std::log(4.5) - 19.0 / 54.0;
    CHECK(res.log_count == doctest::Approx(expect).epsilon(1e-12));
    CHECK(res.log_count == doctest::Approx(0.72672).epsilon(1e-4));
    CHECK(assemble_log_count(3, res) == doctest::Approx(res.log_count).epsilon(1e-12));
    CHECK(res.psi == doctest::Approx(-19.0 / 54.0).epsilon(1e-12));
}

TEST_CASE("asymptotic count edge cases") {
    Graph tri = generate_complete(3);
    SUBCASE("parity failure is an exact zero") {
        auto res = asymptotic_count(tri, {1, -1, 0});
        CHECK(res.zero);
        CHECK(std::isinf(res.log_count));
    }
    SUBCASE("infeasible is an exact zero") {
        Graph c5 = generate_cycle(5);
        CHECK(asymptotic_count(c5, {2, 2, -2, -1, -1}).zero);
    }
    SUBCASE("boundary raises Degenerate") {
        try {
            asymptotic_count(tri, {2, -2, 0});
            FAIL("expected Degenerate");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Degenerate);
        }
    }
    SUBCASE("disconnected input is rejected") {
        Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
        CHECK_THROWS_AS(asymptotic_count(g, {0, 0, 0, 0}), Error);
    }
}

TEST_CASE("accuracy improves along complete graphs") {
    double prev_err = 1e100;
    for (int n : {5, 7, 9}) {
        Graph g = generate_complete(n);
        std::vector<long long> b(n, 0);
        double exact_log = std::log(exact_count_dp(g, b).get_d());
        double approx_log = asymptotic_count(g, b).log_count;
        double err = std::abs(approx_log - exact_log);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < std::log(1.10));  // within 10 percent at n = 9
}

TEST_CASE("eulerian special case") {
    Graph c4 = generate_cycle(4);
    auto res = eulerian_count(c4);
    double expect = std::log(std::pow(2.0, 5.5) / (std::pow(std::acos(-1.0), 1.5) * 2.0)) - 1.0;
    CHECK(res.log_count == doctest::Approx(expect).epsilon(1e-12));
    CHECK(assemble_log_count(4, res) == doctest::Approx(res.log_count).epsilon(1e-12));

    SUBCASE("odd degree rejected") {
        CHECK_THROWS_AS(eulerian_count(generate_complete(4)), Error);
    }
    SUBCASE("tracks the full asymptotic pipeline on circulants") {
        Graph g = generate_circulant(10, {1, 2});
        auto full = asymptotic_count(g, std::vector<long long>(10, 0));
        auto cor = eulerian_count(g);
        CHECK(cor.half_log_det_A == doctest::Approx(full.half_log_det_A).epsilon(1e-9));
        CHECK(cor.log_P == doctest::Approx(full.log_P).epsilon(1e-12));
        CHECK(std::abs(cor.log_count - full.log_count) < 0.5);
    }
    SUBCASE("within 25 percent of the exact count") {
        Graph g = generate_circulant(8, {1, 2});
        double exact_log = std::log(exact_count_dp(g, std::vector<long long>(8, 0)).get_d());
        CHECK(std::abs(eulerian_count(g).log_count - exact_log) < std::log(1.25));
    }
}

TEST_CASE("subgraph occurrence probabilities") {
    Graph c4 = generate_cycle(4);
    std::vector<long long> zero4(4, 0);
    SUBCASE("empty subgraph has probability one") {
        CHECK(subdigraph_probability_exact(c4, {}, zero4) == mpq_class(1));
    }
    SUBCASE("single arc in a balanced 4-cycle") {
        CHECK(subdigraph_probability_exact(c4, {{0, 1}}, zero4) == mpq_class(1, 2));
    }
    SUBCASE("full directed cycle") {
        CHECK(subdigraph_probability_exact(c4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, zero4) ==
              mpq_class(1, 2));
    }
    SUBCASE("arc not in the graph") {
        CHECK_THROWS_AS(subdigraph_probability_exact(c4, {{0, 2}}, zero4), Error);
    }
    SUBCASE("asymptotic triangle probability in a circulant") {
        Graph g = generate_circulant(10, {1, 2});
        std::vector<std::pair<int, int>> tri_arcs = {{0, 1}, {1, 2}, {2, 0}};
        double approx = subdigraph_probability_asymptotic(g, tri_arcs);
        CHECK(approx == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-12));
        auto exact = subdigraph_probability_exact(g, tri_arcs, std::vector<long long>(10, 0));
        double ex = exact.get_d();
        CHECK(std::abs(std::log(approx / ex)) < std::log(1.30));
    }
    SUBCASE("asymptotic path demands eulerian inputs") {
        CHECK_THROWS_AS(subdigraph_probability_asymptotic(c4, {{0, 1}}), Error);
        // subgraph exhausting a degree
        CHECK_THROWS_AS(subdigraph_probability_asymptotic(c4, {{0, 1}, {3, 0}}), Error);
    }
}

TEST_CASE("hamiltonian expectation") {
    Graph c4 = generate_cycle(4);
    CHECK(hamiltonian_expectation(c4, 1) ==
          doctest::Approx(std::exp(2.0) / 8.0).epsilon(1e-12));
    Graph k5 = generate_complete(5);
    CHECK(hamiltonian_expectation(k5, 12) ==
          doctest::Approx(12.0 * std::exp(1.25) / 16.0).epsilon(1e-12));
    CHECK(hamiltonian_expectation(c4, 0) == 0.0);
    CHECK_THROWS_AS(hamiltonian_expectation(generate_complete(4), 3), Error);
}

TEST_CASE("size guards") {
    Graph big = generate_complete(9);  // m = 36 > 30
    CHECK_THROWS_AS(exact_count_bruteforce(big, std::vector<long long>(9, 0)), Error);
    Graph k13 = generate_complete(13);
    CHECK_THROWS_AS(exact_count_dp(k13, std::vector<long long>(13, 0), 1000), Error);
}
