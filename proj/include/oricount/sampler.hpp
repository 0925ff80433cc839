#ifndef ORICOUNT_SAMPLER_HPP
#define ORICOUNT_SAMPLER_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "oricount/enumerate.hpp"
#include "oricount/graph.hpp"
#include "oricount/mle.hpp"

namespace oricount {

/// Independent-edge orientation model with Bradley-Terry probabilities.
struct OrientationModel {
    LambdaMatrix lam;
    std::uint64_t seed;
};

namespace detail {

// counter-based stream: the draw for (seed, sample, edge) is independent of
// evaluation order, so parallel sampling reproduces exactly
inline double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t edge) {
    std::uint64_t x = splitmix64(seed ^ splitmix64(sample ^ splitmix64(edge + 0x51700000ULL)));
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Orients each edge jk toward k with probability lambda_jk, independently.
/// Deterministic given (model.seed, sample_index).
inline Orientation sample_orientation(const OrientationModel& model, const Graph& g,
                                      std::uint64_t sample_index = 0) {
    Orientation o;
    o.forward.resize(g.m());
    for (int e = 0; e < g.m(); ++e) {
        double lam = model.lam.forward[e];
        if (!(lam > 0.0) || !(lam < 1.0))
            throw Error(ErrorKind::Degenerate, "degenerate edge probability");
        o.forward[e] = detail::counter_uniform(model.seed, sample_index, e) < lam ? 1 : 0;
    }
    return o;
}

/// Expected imbalance sequence of the model, sum_k (lambda_jk - lambda_kj).
inline std::vector<double> expected_imbalance(const Graph& g, const LambdaMatrix& lam) {
    std::vector<double> b(g.n(), 0.0);
    for (int e = 0; e < g.m(); ++e) {
        auto [j, k] = g.edges()[e];
        double d = 2.0 * lam.forward[e] - 1.0;
        b[j] += d;
        b[k] -= d;
    }
    return b;
}

/// Recovers merits from edge probabilities along a spanning tree, r_root = 1 and
/// r_j = prod over the tree path of (1-p)/p. Exact when p is of merit form.
inline std::vector<double> reconstruct_merits(const Graph& g, const LambdaMatrix& lam) {
    std::vector<double> r(g.n(), 0.0);
    std::vector<int> stack;
    for (int root = 0; root < g.n(); ++root) {
        if (r[root] != 0.0) continue;
        r[root] = 1.0;
        stack.push_back(root);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : g.neighbors(v)) {
                if (r[w] != 0.0) continue;
                double pvw = lam.lam(g, v, w);
                r[w] = r[v] * (1.0 - pvw) / pvw;
                stack.push_back(w);
            }
        }
    }
    detail::normalize_geomean(g, r);
    return r;
}

struct UniformityReport {
    bool uniform;           // within-group probabilities agree to tolerance
    bool merit_form;        // spanning-tree reconstruction reproduces every lambda
    double max_group_ratio_dev;  // max over groups of max/min probability - 1
    double max_logP_dev;    // max |log(group prob) - log_P| over groups (merit form only)
    double total_probability;    // sum over groups of size * probability
    int group_count;
};

/// Exhaustively enumerates all 2^m orientations, groups them by imbalance
/// vector, and checks conditional uniformity plus agreement with P(G, b).
inline UniformityReport verify_conditional_uniformity(const Graph& g, const LambdaMatrix& lam,
                                                      double tol = 1e-12) {
    const int m = g.m();
    if (m > 16) throw Error(ErrorKind::SizeLimit, "exhaustive verification guarded at m <= 16");

    struct Group {
        double min_p, max_p;
        long long size;
    };
    std::map<std::vector<long long>, Group> groups;
    Orientation o;
    o.forward.assign(m, 0);
    for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        double p = 1.0;
        for (int e = 0; e < m; ++e) {
            o.forward[e] = (mask >> e) & 1;
            p *= o.forward[e] ? lam.forward[e] : 1.0 - lam.forward[e];
        }
        auto b = o.imbalance(g);
        auto [it, fresh] = groups.try_emplace(std::move(b), Group{p, p, 1});
        if (!fresh) {
            it->second.min_p = std::min(it->second.min_p, p);
            it->second.max_p = std::max(it->second.max_p, p);
            it->second.size++;
        }
    }

    UniformityReport rep{};
    rep.group_count = static_cast<int>(groups.size());
    rep.max_group_ratio_dev = 0.0;
    rep.total_probability = 0.0;
    for (auto& [b, grp] : groups) {
        rep.max_group_ratio_dev = std::max(rep.max_group_ratio_dev, grp.max_p / grp.min_p - 1.0);
        rep.total_probability += grp.size * 0.5 * (grp.min_p + grp.max_p);
    }
    rep.uniform = rep.max_group_ratio_dev <= tol;

    auto r = reconstruct_merits(g, lam);
    auto lam2 = lambda_matrix(r, g);
    rep.merit_form = true;
    for (int e = 0; e < m; ++e)
        if (std::abs(lam2.forward[e] - lam.forward[e]) > 1e-10) rep.merit_form = false;

    rep.max_logP_dev = 0.0;
    if (rep.merit_form) {
        for (auto& [b, grp] : groups) {
            double lp = log_P(g, b, r);
            rep.max_logP_dev = std::max(rep.max_logP_dev,
                                        std::abs(std::log(grp.max_p) - lp));
            rep.max_logP_dev = std::max(rep.max_logP_dev,
                                        std::abs(std::log(grp.min_p) - lp));
        }
    }
    return rep;
}

} // namespace oricount

#endif
