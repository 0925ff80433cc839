#ifndef ORICOUNT_FEASIBILITY_HPP
#define ORICOUNT_FEASIBILITY_HPP

#include <vector>

#include "oricount/flow.hpp"
#include "oricount/graph.hpp"
#include "oricount/spectral.hpp"

namespace oricount {

enum class Feasibility { Infeasible, Boundary, StrictlyFeasible };

inline const char* feasibility_name(Feasibility f) {
    switch (f) {
        case Feasibility::Infeasible: return "Infeasible";
        case Feasibility::Boundary: return "Boundary";
        case Feasibility::StrictlyFeasible: return "StrictlyFeasible";
    }
    return "?";
}

struct FeasibilityVerdict {
    Feasibility status;
    std::vector<int> witness;  // U violating (Infeasible) or saturating (Boundary) the cut condition
    Rational flow_value;
    std::vector<Feasibility> component_status;  // indexed by component id
};

namespace detail {

// Auxiliary feasibility network: source s supplies d_v + b_v into each
// vertex, sink t drains d_v, internal arcs have capacity 1 each way.
// force_in / force_out pin a vertex to the source / sink side via infinite arcs.
struct FeasNet {
    MaxFlow flow;
    int s, t;
    std::vector<int> internal_arc;  // arc id of j->k per canonical edge

    FeasNet(const Graph& g, const std::vector<long long>& b, int force_in = -1, int force_out = -1)
        : flow(g.n() + 2), s(g.n()), t(g.n() + 1) {
        for (int v = 0; v < g.n(); ++v) {
            long long cap = g.degree(v) + b[v];
            flow.add_arc(s, v, std::max(cap, 0LL) + (v == force_in ? MaxFlow::kInf : 0));
            flow.add_arc(v, t, g.degree(v) + (v == force_out ? MaxFlow::kInf : 0));
        }
        for (auto [j, k] : g.edges()) {
            internal_arc.push_back(flow.add_arc(j, k, 1));
            flow.add_arc(k, j, 1);
        }
    }
};

inline std::vector<int> cut_side(const MaxFlow& f, int s, int n) {
    auto vis = f.reachable(s);
    std::vector<int> u;
    for (int v = 0; v < n; ++v)
        if (vis[v]) u.push_back(v);
    return u;
}

} // namespace detail

/// Classifies b against the cut condition sum_{j in U} b_j <= |boundary(U)|.
/// Strict feasibility means strict inequality for every U that is not a union
/// of connected components.
inline FeasibilityVerdict check_feasible(const Graph& g, const std::vector<long long>& b) {
    const int n = g.n();
    if (static_cast<int>(b.size()) != n)
        throw Error(ErrorKind::InvalidImbalance, "imbalance length differs from vertex count");
    require_zero_sum(b);

    FeasibilityVerdict v;
    auto comp = g.components();
    int nc = g.num_components();
    v.component_status.assign(nc, Feasibility::StrictlyFeasible);

    for (int j = 0; j < n; ++j) {
        if (b[j] > g.degree(j) || b[j] < -static_cast<long long>(g.degree(j))) {
            v.status = Feasibility::Infeasible;
            v.witness = {j};
            v.flow_value = 0;
            v.component_status[comp[j]] = Feasibility::Infeasible;
            return v;
        }
    }

    const long long target = 2LL * g.m();
    detail::FeasNet net(g, b);
    long long value = net.flow.max_flow(net.s, net.t);
    v.flow_value = Rational(value);
    if (value < target) {
        v.status = Feasibility::Infeasible;
        v.witness = detail::cut_side(net.flow, net.s, n);
        std::vector<char> hit(nc, 0);
        for (int j : v.witness) hit[comp[j]] = 1;
        for (int c = 0; c < nc; ++c)
            if (hit[c]) v.component_status[c] = Feasibility::Infeasible;
        return v;
    }

    // Equality detection: a saturating nontrivial U exists iff for some
    // same-component pair (x not-in-U impossible to avoid...) forcing x inside
    // and y outside still admits a cut of capacity 2|E|.
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (x == y || comp[x] != comp[y]) continue;
            detail::FeasNet forced(g, b, x, y);
            if (forced.flow.max_flow(forced.s, forced.t) == target) {
                v.status = Feasibility::Boundary;
                v.witness = detail::cut_side(forced.flow, forced.s, n);
                v.component_status[comp[x]] = Feasibility::Boundary;
                // keep scanning other components for their own status
                goto component_scan;
            }
        }
    }
    v.status = Feasibility::StrictlyFeasible;
    return v;

component_scan:
    for (int c = 0; c < nc; ++c) {
        if (v.component_status[c] == Feasibility::Boundary) continue;
        bool boundary = false;
        for (int x = 0; x < n && !boundary; ++x) {
            if (comp[x] != c) continue;
            for (int y = 0; y < n && !boundary; ++y) {
                if (x == y || comp[y] != c) continue;
                detail::FeasNet forced(g, b, x, y);
                if (forced.flow.max_flow(forced.s, forced.t) == target) boundary = true;
            }
        }
        if (boundary) v.component_status[c] = Feasibility::Boundary;
    }
    return v;
}

/// Edge probabilities p(j,k) of a random orientation whose expected imbalance
/// sequence is b, extracted from a maximum flow by the half-shift formula.
/// Exact rationals with denominator 2.
struct FractionalOrientation {
    std::vector<Rational> p_forward;  // per canonical edge, p(j,k) with j<k

    Rational p(const Graph& g, int j, int k) const {
        int idx = g.edge_index(j, k);
        if (idx < 0) throw Error(ErrorKind::BadParameter, "not an edge");
        return j < k ? p_forward[idx] : Rational(1) - p_forward[idx];
    }
};

inline FractionalOrientation fractional_orientation(const Graph& g, const std::vector<long long>& b) {
    require_zero_sum(b);
    for (int j = 0; j < g.n(); ++j)
        if (b[j] > g.degree(j) || b[j] < -static_cast<long long>(g.degree(j)))
            throw Error(ErrorKind::Infeasible, "imbalance exceeds degree at vertex " + std::to_string(j));
    detail::FeasNet net(g, b);
    if (net.flow.max_flow(net.s, net.t) != 2LL * g.m())
        throw Error(ErrorKind::Infeasible, "no orientation with this expected imbalance sequence");
    FractionalOrientation fo;
    fo.p_forward.reserve(g.m());
    for (int e = 0; e < g.m(); ++e) {
        long long fjk = net.flow.flow_on(net.internal_arc[e]);
        long long fkj = net.flow.flow_on(net.internal_arc[e] + 2);  // reverse direction arc follows
        fo.p_forward.push_back(Rational(1 + fjk - fkj, 2));
    }
    return fo;
}

} // namespace oricount

#endif
