#ifndef ORICOUNT_MLE_HPP
#define ORICOUNT_MLE_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "oricount/graph.hpp"
#include "oricount/spectral.hpp"

namespace oricount {

/// Bradley-Terry merits solving the balance equations
/// sum_{k in N(j)} (r_j - r_k)/(r_j + r_k) = b_j, normalized to geometric
/// mean 1 per connected component.
struct MeritVector {
    std::vector<double> r;
    double residual;
    int iterations;
};

/// lambda(j,k) = r_j / (r_j + r_k) per ordered edge.
struct LambdaMatrix {
    std::vector<double> forward;  // lambda_jk for canonical j<k

    double lam(const Graph& g, int j, int k) const {
        int idx = g.edge_index(j, k);
        if (idx < 0) throw Error(ErrorKind::BadParameter, "not an edge");
        return j < k ? forward[idx] : 1.0 - forward[idx];
    }
};

inline LambdaMatrix lambda_matrix(const std::vector<double>& r, const Graph& g) {
    LambdaMatrix lm;
    lm.forward.reserve(g.m());
    for (auto [j, k] : g.edges()) {
        if (!(r[j] > 0.0) || !(r[k] > 0.0))
            throw Error(ErrorKind::BadParameter, "merits must be positive");
        lm.forward.push_back(r[j] / (r[j] + r[k]));
    }
    return lm;
}

/// max_j |sum_k (lambda_jk - lambda_kj) - b_j|, independent of the solver loop.
inline double balance_residual(const Graph& g, const std::vector<double>& b,
                               const std::vector<double>& r) {
    std::vector<double> net(g.n(), 0.0);
    for (auto [j, k] : g.edges()) {
        double d = (r[j] - r[k]) / (r[j] + r[k]);
        net[j] += d;
        net[k] -= d;
    }
    double worst = 0.0;
    for (int j = 0; j < g.n(); ++j) worst = std::max(worst, std::abs(net[j] - b[j]));
    return worst;
}

namespace detail {

inline void normalize_geomean(const Graph& g, std::vector<double>& r) {
    auto comp = g.components();
    int nc = g.num_components();
    std::vector<double> logsum(nc, 0.0);
    std::vector<int> count(nc, 0);
    for (int j = 0; j < g.n(); ++j) {
        logsum[comp[j]] += std::log(r[j]);
        count[comp[j]]++;
    }
    for (int j = 0; j < g.n(); ++j) r[j] *= std::exp(-logsum[comp[j]] / count[comp[j]]);
}

inline double max_edge_ratio(const Graph& g, const std::vector<double>& r) {
    double worst = 1.0;
    for (auto [j, k] : g.edges())
        worst = std::max(worst, std::max(r[j] / r[k], r[k] / r[j]));
    return worst;
}

// Newton step in log-merit space. The Jacobian of the balance residual with
// respect to log r is the weighted Laplacian with edge weight 2*lam*lam;
// the zero mode is pinned with a J/n shift per component.
inline void newton_step(const Graph& g, const std::vector<double>& b, std::vector<double>& r) {
    const int n = g.n();
    Eigen::MatrixXd Lw = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd F(n);
    for (auto [j, k] : g.edges()) {
        double ljk = r[j] / (r[j] + r[k]);
        double w = 2.0 * ljk * (1.0 - ljk);
        Lw(j, j) += w;
        Lw(k, k) += w;
        Lw(j, k) -= w;
        Lw(k, j) -= w;
    }
    std::vector<double> net(n, 0.0);
    for (auto [j, k] : g.edges()) {
        double d = (r[j] - r[k]) / (r[j] + r[k]);
        net[j] += d;
        net[k] -= d;
    }
    for (int j = 0; j < n; ++j) F(j) = net[j] - b[j];
    auto comp = g.components();
    std::vector<int> csize(g.num_components(), 0);
    for (int j = 0; j < n; ++j) csize[comp[j]]++;
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (comp[j] == comp[k]) Lw(j, k) += 1.0 / csize[comp[j]];
    Eigen::VectorXd delta = Lw.ldlt().solve(-F);
    for (int j = 0; j < n; ++j) r[j] *= std::exp(delta(j));
}

} // namespace detail

struct SolveOptions {
    double tol = 1e-12;
    int max_iter = 100000;
    bool newton_polish = false;
    double ratio_cap = 1e10;
    int stagnation_window = 1000;
    // all-ones start unless overridden (e.g. for uniqueness checks)
    std::vector<double> start;
};

/// Minorize-maximize fixed point r_j <- s_j / sum_k 1/(r_j + r_k) with
/// s_j = (d_j + b_j)/2, renormalized each sweep.
inline MeritVector solve_merits(const Graph& g, const std::vector<double>& b,
                                const SolveOptions& opt = {}) {
    const int n = g.n();
    if (static_cast<int>(b.size()) != n)
        throw Error(ErrorKind::InvalidImbalance, "imbalance length differs from vertex count");
    {
        auto comp = g.components();
        std::vector<double> sums(g.num_components(), 0.0);
        for (int j = 0; j < n; ++j) sums[comp[j]] += b[j];
        for (double s : sums)
            if (std::abs(s) > 1e-12)
                throw Error(ErrorKind::InvalidImbalance, "imbalance does not sum to zero per component");
    }
    for (int j = 0; j < n; ++j)
        if (b[j] >= g.degree(j) || b[j] <= -static_cast<double>(g.degree(j)))
            if (!(g.degree(j) == 0 && b[j] == 0.0))
                throw Error(ErrorKind::Degenerate,
                            "imbalance at vertex " + std::to_string(j) + " reaches its degree");

    std::vector<double> r = opt.start.empty() ? std::vector<double>(n, 1.0) : opt.start;
    detail::normalize_geomean(g, r);

    std::vector<double> s(n), denom(n);
    for (int j = 0; j < n; ++j) s[j] = 0.5 * (g.degree(j) + b[j]);

    double best = balance_residual(g, b, r);
    int best_iter = 0;
    int iter = 0;
    double res = best;
    while (res > opt.tol) {
        if (iter >= opt.max_iter)
            throw Error(ErrorKind::NotConverged, "iteration cap reached, residual " + std::to_string(res));
        ++iter;
        std::fill(denom.begin(), denom.end(), 0.0);
        for (auto [j, k] : g.edges()) {
            double inv = 1.0 / (r[j] + r[k]);
            denom[j] += inv;
            denom[k] += inv;
        }
        for (int j = 0; j < n; ++j)
            if (g.degree(j) > 0) r[j] = s[j] / denom[j];
        detail::normalize_geomean(g, r);
        if (opt.newton_polish && iter > 1) {
            double pre = balance_residual(g, b, r);
            if (pre < 1e-6 && pre > opt.tol) {
                detail::newton_step(g, b, r);
                detail::normalize_geomean(g, r);
            }
        }
        res = balance_residual(g, b, r);
        if (detail::max_edge_ratio(g, r) > opt.ratio_cap)
            throw Error(ErrorKind::Degenerate, "merit ratio diverged (boundary-feasible imbalance)");
        if (res < best * (1.0 - 1e-9)) {
            best = res;
            best_iter = iter;
        } else if (iter - best_iter >= opt.stagnation_window) {
            throw Error(ErrorKind::Degenerate,
                        "residual stagnated at " + std::to_string(res) + " (boundary-feasible imbalance)");
        }
    }
    return {r, res, iter};
}

inline MeritVector solve_merits(const Graph& g, const std::vector<long long>& b,
                                const SolveOptions& opt = {}) {
    return solve_merits(g, std::vector<double>(b.begin(), b.end()), opt);
}

/// Expansion-based bound on max |log(r_j/r_k)|:
/// (35 D / (delta h)) log(n/(delta h)) log(1/delta), with h exact for n <= 22
/// and lambda2/2 otherwise.
inline double tameness_bound(const Graph& g, double delta) {
    if (!(delta > 0.0) || delta > 1.0)
        throw Error(ErrorKind::BadParameter, "delta must lie in (0, 1]");
    if (g.n() < 10) throw Error(ErrorKind::BadParameter, "tameness bound stated for n >= 10");
    if (!g.connected()) throw Error(ErrorKind::Disconnected, "tameness bound needs a connected graph");
    double h = cheeger_lower_bound(g);
    double dmax = g.max_degree();
    return (35.0 * dmax / (delta * h)) * std::log(g.n() / (delta * h)) * std::log(1.0 / delta);
}

/// Exact 1 - max_U sum_U b / |boundary(U)| over nontrivial U; n <= 22 only.
inline double exact_cut_slack(const Graph& g, const std::vector<long long>& b) {
    const int n = g.n();
    if (n > 22) throw Error(ErrorKind::SizeLimit, "exact cut slack guarded at n <= 22");
    std::vector<char> in(n, 0);
    long long boundary = 0;
    long long bsum = 0;
    double worst = 0.0;  // max of sum_U b / |dU| over U with dU nonempty
    std::uint64_t gray_prev = 0;
    for (std::uint64_t i = 1; i + 1 < (1ULL << n); ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        int v = __builtin_ctzll(gray ^ gray_prev);
        gray_prev = gray;
        if (in[v]) {
            in[v] = 0;
            bsum -= b[v];
            for (int w : g.neighbors(v)) boundary += in[w] ? 1 : -1;
        } else {
            in[v] = 1;
            bsum += b[v];
            for (int w : g.neighbors(v)) boundary += in[w] ? -1 : 1;
        }
        if (boundary > 0)
            worst = std::max(worst, static_cast<double>(bsum) / static_cast<double>(boundary));
    }
    return 1.0 - worst;
}

/// Diagnostics for the asymptotic formula's assumptions on one instance.
/// Asymptotic constants are reported as raw ratios; thresholds are the user's.
struct AssumptionReport {
    double delta_max;       // maximum degree
    double a1_margin;       // Delta / n^{1/3+eps}
    double h_lower;         // exact h for n <= 22, else lambda2/2
    double gamma_est;       // h_lower / Delta
    double R;               // max edge merit ratio - 1
    double a3_stat;         // R^2 (n/Delta) log(2n/Delta), compare log n
    double err1;            // R^3 Delta^{-3/2+eps/2} n
    double err2;            // Delta^{-3+eps} n
    double tameness;        // tameness_bound at the instance's exact slack (NaN if unavailable)
    double sufficient_ratio;  // b_max / (Delta^{3/2} n^{-1/2} / log(2n/Delta))
    bool sufficient_ok;
};

inline AssumptionReport assumption_report(const Graph& g, const std::vector<double>& b,
                                          const std::vector<double>& r, double eps) {
    AssumptionReport rep{};
    const int n = g.n();
    double dmax = g.max_degree();
    rep.delta_max = dmax;
    rep.a1_margin = dmax / std::pow(static_cast<double>(n), 1.0 / 3.0 + eps);
    rep.h_lower = cheeger_lower_bound(g);
    rep.gamma_est = dmax > 0 ? rep.h_lower / dmax : 0.0;
    rep.R = detail::max_edge_ratio(g, r) - 1.0;
    double logterm = std::log(2.0 * n / dmax);
    rep.a3_stat = rep.R * rep.R * (n / dmax) * logterm;
    rep.err1 = std::pow(rep.R, 3.0) * std::pow(dmax, -1.5 + eps / 2.0) * n;
    rep.err2 = std::pow(dmax, -3.0 + eps) * n;

    double bmax = 0.0;
    bool b_zero = true;
    for (double x : b) {
        bmax = std::max(bmax, std::abs(x));
        if (x != 0.0) b_zero = false;
    }
    rep.tameness = std::numeric_limits<double>::quiet_NaN();
    if (b_zero) {
        rep.tameness = 0.0;
    } else if (n >= 10 && n <= 22 && g.connected()) {
        bool integral = true;
        std::vector<long long> bi(n);
        for (int j = 0; j < n; ++j) {
            bi[j] = static_cast<long long>(std::llround(b[j]));
            if (bi[j] != b[j]) integral = false;
        }
        if (integral) {
            double slack = exact_cut_slack(g, bi);
            if (slack > 0.0) rep.tameness = tameness_bound(g, slack);
        }
    }
    double threshold = std::pow(dmax, 1.5) / std::sqrt(static_cast<double>(n)) / logterm;
    rep.sufficient_ratio = bmax / threshold;
    rep.sufficient_ok = rep.sufficient_ratio <= 1.0;
    return rep;
}

} // namespace oricount

#endif
