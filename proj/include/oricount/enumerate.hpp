#ifndef ORICOUNT_ENUMERATE_HPP
#define ORICOUNT_ENUMERATE_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "oricount/correction.hpp"
#include "oricount/feasibility.hpp"
#include "oricount/graph.hpp"
#include "oricount/mle.hpp"

namespace oricount {

/// One direction bit per canonical edge; bit set means j -> k with j < k.
struct Orientation {
    std::vector<std::uint8_t> forward;

    std::vector<long long> imbalance(const Graph& g) const {
        std::vector<long long> b(g.n(), 0);
        for (int e = 0; e < g.m(); ++e) {
            auto [j, k] = g.edges()[e];
            if (forward[e]) { b[j]++; b[k]--; }
            else { b[j]--; b[k]++; }
        }
        return b;
    }
};

/// Out-degree targets s_j = (d_j + b_j)/2, or empty if parity/range fails.
inline std::vector<long long> outdegree_targets(const Graph& g, const std::vector<long long>& b) {
    std::vector<long long> s(g.n());
    for (int j = 0; j < g.n(); ++j) {
        long long t = g.degree(j) + b[j];
        if (t < 0 || t % 2 != 0 || t / 2 > g.degree(j)) return {};
        s[j] = t / 2;
    }
    return s;
}

/// log P(G, b) = sum_j s_j log r_j - sum_{jk} log(r_j + r_k),
/// the Bradley-Terry probability of any orientation with imbalance b.
inline double log_P(const Graph& g, const std::vector<long long>& b, const std::vector<double>& r) {
    require_zero_sum(b);
    auto s = outdegree_targets(g, b);
    if (s.empty()) throw Error(ErrorKind::ParityError, "imbalance parity does not match degrees");
    double lp = 0.0;
    for (int j = 0; j < g.n(); ++j) lp += s[j] * std::log(r[j]);
    for (auto [j, k] : g.edges()) lp -= std::log(r[j] + r[k]);
    return lp;
}

/// Exact count by iterating all 2^m orientations with Gray-code updates.
inline mpz_class exact_count_bruteforce(const Graph& g, const std::vector<long long>& b) {
    if (g.m() > 30) throw Error(ErrorKind::SizeLimit, "brute force guarded at m <= 30");
    require_zero_sum(b);
    const int n = g.n(), m = g.m();
    std::vector<long long> imb(n, 0);
    std::vector<std::uint8_t> bit(m, 0);
    for (auto [j, k] : g.edges()) { imb[j]--; imb[k]++; }  // all edges k -> j initially
    int matches = 0;
    for (int j = 0; j < n; ++j)
        if (imb[j] == b[j]) ++matches;
    unsigned long long count = (matches == n) ? 1 : 0;
    const std::uint64_t total = m == 0 ? 1 : (1ULL << m);
    for (std::uint64_t i = 1; i < total; ++i) {
        int e = __builtin_ctzll(i);
        auto [j, k] = g.edges()[e];
        matches -= (imb[j] == b[j]) + (imb[k] == b[k]);
        if (bit[e]) { bit[e] = 0; imb[j] -= 2; imb[k] += 2; }
        else { bit[e] = 1; imb[j] += 2; imb[k] -= 2; }
        matches += (imb[j] == b[j]) + (imb[k] == b[k]);
        if (matches == n) ++count;
    }
    return mpz_class(static_cast<unsigned long>(count));
}

/// Exact count as the coefficient of prod x_j^{s_j} in prod_{jk in G}(x_j + x_k),
/// by a sparse DP over edges with exponent vectors as states.
inline mpz_class exact_count_dp(const Graph& g, const std::vector<long long>& b,
                                long long state_cap = 100000000LL) {
    require_zero_sum(b);
    auto s = outdegree_targets(g, b);
    if (s.empty()) return 0;
    const int n = g.n();
    double budget = 1.0;
    for (int j = 0; j < n; ++j) {
        budget *= static_cast<double>(s[j] + 1);
        if (budget > static_cast<double>(state_cap))
            throw Error(ErrorKind::SizeLimit, "DP state budget exceeded");
    }
    // ascending by max endpoint keeps exponent support short early
    std::vector<int> order(g.m());
    for (int e = 0; e < g.m(); ++e) order[e] = e;
    std::sort(order.begin(), order.end(), [&](int a, int c) {
        auto [aj, ak] = g.edges()[a];
        auto [cj, ck] = g.edges()[c];
        return std::make_pair(ak, aj) < std::make_pair(ck, cj);
    });
    std::vector<long long> remaining(n, 0);
    for (auto [j, k] : g.edges()) { remaining[j]++; remaining[k]++; }

    using State = std::vector<std::uint8_t>;
    std::map<State, mpz_class> dp;
    dp[State(n, 0)] = 1;
    for (int idx : order) {
        auto [j, k] = g.edges()[idx];
        remaining[j]--;
        remaining[k]--;
        std::map<State, mpz_class> next;
        for (auto& [st, cnt] : dp) {
            for (int pick : {j, k}) {
                if (st[pick] + 1 > s[pick]) continue;
                State ns = st;
                ns[pick]++;
                // the other endpoint must still be able to reach its target
                int other = pick == j ? k : j;
                if (ns[other] + remaining[other] < s[other]) continue;
                if (ns[pick] + remaining[pick] < s[pick]) continue;
                next[std::move(ns)] += cnt;
            }
        }
        dp = std::move(next);
        if (dp.empty()) return 0;
    }
    State goal(n, 0);
    for (int j = 0; j < n; ++j) goal[j] = static_cast<std::uint8_t>(s[j]);
    auto it = dp.find(goal);
    return it == dp.end() ? mpz_class(0) : it->second;
}

/// Exact count by the Cauchy contour integral, reduced to n-1 dimensions and
/// evaluated by the rectangle rule on a grid^(n-1) lattice over (R mod pi)^(n-1).
/// Exact for all positive contour radii r once the grid resolves the integrand.
inline double exact_count_quadrature(const Graph& g, const std::vector<long long>& b,
                                     const std::vector<double>& r, int grid) {
    const int n = g.n();
    if (n > 5) throw Error(ErrorKind::SizeLimit, "quadrature guarded at n <= 5");
    require_zero_sum(b);
    auto s = outdegree_targets(g, b);
    if (s.empty()) return 0.0;
    if (n == 0) return 1.0;

    const double pi = std::acos(-1.0);
    std::vector<int> idx(n - 1, 0);
    std::complex<double> sum = 0.0;
    std::vector<double> theta(n, 0.0);
    while (true) {
        for (int i = 0; i < n - 1; ++i) theta[i] = pi * idx[i] / grid;
        double phase = 0.0;
        for (int j = 0; j < n; ++j) phase -= b[j] * theta[j];
        std::complex<double> f = std::polar(1.0, phase);
        for (auto [j, k] : g.edges()) {
            double x = theta[j] - theta[k];
            double ljk = r[j] / (r[j] + r[k]);
            f *= ljk * std::polar(1.0, x) + (1.0 - ljk) * std::polar(1.0, -x);
        }
        sum += f;
        int i = 0;
        for (; i < n - 1; ++i) {
            if (++idx[i] < grid) break;
            idx[i] = 0;
        }
        if (i == n - 1) break;
    }
    double lp = log_P(g, b, r);
    // pi^{-(n-1)} P^{-1} * Re(sum) * (pi/grid)^{n-1}
    return sum.real() * std::exp(-lp) / std::pow(static_cast<double>(grid), n - 1);
}

/// Grid-doubling wrapper: refine until two successive grids agree to 1e-8.
inline double exact_count_quadrature_auto(const Graph& g, const std::vector<long long>& b,
                                          const std::vector<double>& r) {
    double prev = exact_count_quadrature(g, b, r, 8);
    for (int grid = 16; grid <= 1024; grid *= 2) {
        double cur = exact_count_quadrature(g, b, r, grid);
        if (std::abs(cur - prev) < 1e-8 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

struct CountResult {
    bool zero = false;  // exactly zero count (infeasible or bad parity)
    double log_count = -std::numeric_limits<double>::infinity();
    double log_P = 0.0;
    double half_log_Dn = 0.0;
    double half_log_det_A = 0.0;
    double psi = 0.0;
    AssumptionReport diagnostics{};
};

inline double assemble_log_count(int n, const CountResult& c) {
    const double pi = std::acos(-1.0);
    return -0.5 * (n - 1) * std::log(pi) - c.log_P + c.half_log_Dn - c.half_log_det_A + c.psi;
}

/// The full asymptotic pipeline: merits, lambda, matrices, psi, assembly.
inline CountResult asymptotic_count(const Graph& g, const std::vector<long long>& b,
                                    double eps = 0.1, const SolveOptions& opt = {}) {
    if (!g.connected()) throw Error(ErrorKind::Disconnected, "asymptotic count needs a connected graph");
    require_zero_sum(b);
    CountResult res;
    if (outdegree_targets(g, b).empty()) {
        res.zero = true;
        return res;
    }
    auto verdict = check_feasible(g, b);
    if (verdict.status == Feasibility::Infeasible) {
        res.zero = true;
        return res;
    }
    MeritVector mv = solve_merits(g, b, opt);  // throws Degenerate on boundary instances
    LambdaMatrix lam = lambda_matrix(mv.r, g);
    CorrectionBundle bundle = correction_bundle(g, lam);
    res.log_P = log_P(g, b, mv.r);
    res.half_log_Dn = 0.5 * std::log(static_cast<double>(g.max_degree()) * g.n());
    res.half_log_det_A = 0.5 * bundle.log_det_A;
    res.psi = bundle.psi.psi;
    res.log_count = assemble_log_count(g.n(), res);
    res.diagnostics = assumption_report(g, std::vector<double>(b.begin(), b.end()), mv.r, eps);
    return res;
}

/// Eulerian-orientation special case (b = 0, degree-only correction):
/// 2^{m+(n-1)/2} pi^{-(n-1)/2} kappa(G)^{-1/2} exp(-1/4 sum (1/d_j+1/d_k)^2).
inline CountResult eulerian_count(const Graph& g) {
    for (int j = 0; j < g.n(); ++j)
        if (g.degree(j) % 2 != 0)
            throw Error(ErrorKind::ParityError, "vertex " + std::to_string(j) + " has odd degree");
    if (!g.connected()) throw Error(ErrorKind::Disconnected, "eulerian count needs a connected graph");
    const int n = g.n(), m = g.m();
    CountResult res;
    res.log_P = -m * std::log(2.0);
    res.half_log_Dn = 0.5 * std::log(static_cast<double>(g.max_degree()) * n);
    // kappa(G, 1) = kappa(G) 2^{-(n-1)} with edge weight 1/2
    res.half_log_det_A = 0.5 * (std::log(static_cast<double>(g.max_degree()) * n) +
                                log_kappa(g) - (n - 1) * std::log(2.0));
    res.psi = expvar_leading(g);
    res.log_count = assemble_log_count(n, res);
    return res;
}

/// Probability that a uniform random orientation of g with imbalance b contains
/// the given oriented subgraph: N(G \ H, b - b') / N(G, b), exactly via DP.
inline mpq_class subdigraph_probability_exact(const Graph& g,
                                              const std::vector<std::pair<int, int>>& arcs,
                                              const std::vector<long long>& b) {
    std::vector<std::pair<int, int>> rest = g.edges();
    std::vector<long long> b2 = b;
    for (auto [tail, head] : arcs) {
        int idx = g.edge_index(tail, head);
        if (idx < 0) throw Error(ErrorKind::SubgraphMismatch, "oriented subgraph edge not in graph");
        auto canon = g.edges()[idx];
        auto it = std::find(rest.begin(), rest.end(), canon);
        if (it == rest.end()) throw Error(ErrorKind::SubgraphMismatch, "repeated subgraph edge");
        rest.erase(it);
        b2[tail] -= 1;
        b2[head] += 1;
    }
    Graph remainder = Graph::from_edges(g.n(), std::move(rest));
    mpz_class num = exact_count_dp(remainder, b2);
    mpz_class den = exact_count_dp(g, b);
    if (den == 0) throw Error(ErrorKind::Infeasible, "no orientation with imbalance b");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

/// Leading-order occurrence probability for Eulerian H inside Eulerian G:
/// 2^{-m_H} prod_j (1 - h_j/d_j)^{-1/2}.
inline double subdigraph_probability_asymptotic(const Graph& g,
                                                const std::vector<std::pair<int, int>>& arcs) {
    std::vector<long long> hb(g.n(), 0), hdeg(g.n(), 0);
    for (auto [tail, head] : arcs) {
        if (g.edge_index(tail, head) < 0)
            throw Error(ErrorKind::SubgraphMismatch, "oriented subgraph edge not in graph");
        hb[tail] += 1;
        hb[head] -= 1;
        hdeg[tail] += 1;
        hdeg[head] += 1;
    }
    for (int j = 0; j < g.n(); ++j) {
        if (g.degree(j) % 2 != 0 || hdeg[j] % 2 != 0 || hb[j] != 0)
            throw Error(ErrorKind::ParityError, "asymptotic path needs Eulerian G and Eulerian H");
        if (hdeg[j] > 0 && hdeg[j] == g.degree(j))
            throw Error(ErrorKind::BadParameter, "subgraph exhausts a vertex degree");
    }
    double p = std::pow(2.0, -static_cast<double>(arcs.size()));
    for (int j = 0; j < g.n(); ++j)
        if (g.degree(j) > 0)
            p /= std::sqrt(1.0 - static_cast<double>(hdeg[j]) / g.degree(j));
    return p;
}

/// Expected number of directed hamiltonian cycles in a random Eulerian
/// orientation, 2^{-n+1} N_H exp(sum_j 1/d_j); N_H supplied by the caller.
inline double hamiltonian_expectation(const Graph& g, const mpz_class& num_hamiltonian_cycles) {
    for (int j = 0; j < g.n(); ++j)
        if (g.degree(j) % 2 != 0)
            throw Error(ErrorKind::ParityError, "vertex " + std::to_string(j) + " has odd degree");
    if (num_hamiltonian_cycles == 0) return 0.0;
    double inv_deg_sum = 0.0;
    for (int j = 0; j < g.n(); ++j) inv_deg_sum += 1.0 / g.degree(j);
    return std::pow(2.0, 1.0 - g.n()) * num_hamiltonian_cycles.get_d() * std::exp(inv_deg_sum);
}

} // namespace oricount

#endif
