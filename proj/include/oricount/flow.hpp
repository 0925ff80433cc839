#ifndef ORICOUNT_FLOW_HPP
#define ORICOUNT_FLOW_HPP

#include <limits>
#include <queue>
#include <vector>

namespace oricount {

/// Dinic max-flow on integer capacities.
class MaxFlow {
public:
    static constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

    explicit MaxFlow(int num_nodes) : head_(num_nodes, -1) {}

    int num_nodes() const { return static_cast<int>(head_.size()); }

    /// Adds a directed arc and its zero-capacity reverse; returns the arc id.
    int add_arc(int from, int to, long long cap) {
        arcs_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(arcs_.size()) - 1;
        return static_cast<int>(arcs_.size()) - 2;
    }

    long long max_flow(int s, int t) {
        long long total = 0;
        while (bfs(s, t)) {
            cur_ = head_;
            long long f;
            while ((f = dfs(s, t, kInf)) > 0) total += f;
        }
        return total;
    }

    /// Flow pushed through arc id (forward arcs only).
    long long flow_on(int arc_id) const { return arcs_[arc_id ^ 1].cap; }

    /// Residual capacity of arc id.
    long long residual(int arc_id) const { return arcs_[arc_id].cap; }

    /// Set of nodes reachable from s in the residual graph (the min-cut source side).
    std::vector<char> reachable(int s) const {
        std::vector<char> vis(num_nodes(), 0);
        std::vector<int> stack{s};
        vis[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int e = head_[v]; e != -1; e = arcs_[e].next)
                if (arcs_[e].cap > 0 && !vis[arcs_[e].to]) {
                    vis[arcs_[e].to] = 1;
                    stack.push_back(arcs_[e].to);
                }
        }
        return vis;
    }

private:
    struct Arc {
        int to;
        int next;
        long long cap;
    };

    bool bfs(int s, int t) {
        level_.assign(num_nodes(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int e = head_[v]; e != -1; e = arcs_[e].next)
                if (arcs_[e].cap > 0 && level_[arcs_[e].to] == -1) {
                    level_[arcs_[e].to] = level_[v] + 1;
                    q.push(arcs_[e].to);
                }
        }
        return level_[t] != -1;
    }

    long long dfs(int v, int t, long long limit) {
        if (v == t || limit == 0) return limit;
        for (int& e = cur_[v]; e != -1; e = arcs_[e].next) {
            Arc& a = arcs_[e];
            if (a.cap > 0 && level_[a.to] == level_[v] + 1) {
                long long f = dfs(a.to, t, std::min(limit, a.cap));
                if (f > 0) {
                    a.cap -= f;
                    arcs_[e ^ 1].cap += f;
                    return f;
                }
            }
        }
        return 0;
    }

    std::vector<int> head_;
    std::vector<Arc> arcs_;
    std::vector<int> level_;
    std::vector<int> cur_;
};

} // namespace oricount

#endif
