#ifndef ORICOUNT_GRAPH_HPP
#define ORICOUNT_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oricount/errors.hpp"

namespace oricount {

/// Undirected simple graph. Edges are stored canonically with j < k;
/// adjacency lists and degrees are kept consistent with the edge list.
/// Immutable after construction.
class Graph {
public:
    Graph() : n_(0) {}

    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges) {
        if (n < 0) throw Error(ErrorKind::BadParameter, "negative vertex count");
        Graph g;
        g.n_ = n;
        std::set<std::pair<int, int>> seen;
        for (auto& [j, k] : edges) {
            if (j == k) throw Error(ErrorKind::SelfLoop, "self-loop at vertex " + std::to_string(j));
            if (j < 0 || k < 0 || j >= n || k >= n)
                throw Error(ErrorKind::IndexOutOfRange, "edge endpoint out of range");
            if (j > k) std::swap(j, k);
            if (!seen.insert({j, k}).second)
                throw Error(ErrorKind::DuplicateEdge,
                            "duplicate edge " + std::to_string(j + 1) + "-" + std::to_string(k + 1));
        }
        g.edges_.assign(seen.begin(), seen.end());
        g.adj_.assign(n, {});
        g.degree_.assign(n, 0);
        for (auto [j, k] : g.edges_) {
            g.adj_[j].push_back(k);
            g.adj_[k].push_back(j);
            g.degree_[j]++;
            g.degree_[k]++;
        }
        for (auto& a : g.adj_) std::sort(a.begin(), a.end());
        return g;
    }

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return degree_[v]; }
    const std::vector<int>& degrees() const { return degree_; }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree_[v]);
        return d;
    }

    int min_degree() const {
        if (n_ == 0) return 0;
        int d = degree_[0];
        for (int v = 1; v < n_; ++v) d = std::min(d, degree_[v]);
        return d;
    }

    bool has_edge(int j, int k) const {
        if (j > k) std::swap(j, k);
        return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(j, k));
    }

    /// Index of canonical edge {j,k} in edges(), or -1.
    int edge_index(int j, int k) const {
        if (j > k) std::swap(j, k);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(j, k));
        if (it == edges_.end() || *it != std::make_pair(j, k)) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    /// Component id per vertex, ids numbered 0..num_components-1 by first vertex.
    std::vector<int> components() const {
        std::vector<int> comp(n_, -1);
        int c = 0;
        std::vector<int> stack;
        for (int s = 0; s < n_; ++s) {
            if (comp[s] != -1) continue;
            comp[s] = c;
            stack.push_back(s);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj_[v])
                    if (comp[w] == -1) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
            }
            ++c;
        }
        return comp;
    }

    int num_components() const {
        auto comp = components();
        return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
    }

    bool connected() const { return n_ <= 1 || num_components() == 1; }

private:
    int n_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> degree_;
};

/// Parses the edge-list format: first line "n m", then m lines "j k" (1-indexed).
inline Graph load_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line()) throw Error(ErrorKind::ParseError, "empty document");
    std::istringstream head(line);
    long long n = -1, m = -1;
    std::string junk;
    if (!(head >> n >> m) || (head >> junk) || n < 0 || m < 0)
        throw Error(ErrorKind::ParseError, "line 1: expected header \"n m\"");

    std::vector<std::pair<int, int>> edges;
    std::set<std::pair<int, int>> seen;
    for (long long e = 0; e < m; ++e) {
        if (!next_line())
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno + 1) + ": missing edge line");
        std::istringstream es(line);
        long long j = 0, k = 0;
        if (!(es >> j >> k) || (es >> junk))
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected \"j k\"");
        if (j < 1 || k < 1 || j > n || k > n)
            throw Error(ErrorKind::IndexOutOfRange,
                        "line " + std::to_string(lineno) + ": vertex index out of range");
        if (j == k)
            throw Error(ErrorKind::SelfLoop, "line " + std::to_string(lineno) + ": self-loop");
        int a = static_cast<int>(j - 1), b = static_cast<int>(k - 1);
        if (a > b) std::swap(a, b);
        if (!seen.insert({a, b}).second)
            throw Error(ErrorKind::DuplicateEdge, "line " + std::to_string(lineno) + ": duplicate edge");
        edges.push_back({a, b});
    }
    return Graph::from_edges(static_cast<int>(n), std::move(edges));
}

inline std::string write_edge_list(const Graph& g) {
    std::ostringstream out;
    out << g.n() << " " << g.m() << "\n";
    for (auto [j, k] : g.edges()) out << j + 1 << " " << k + 1 << "\n";
    return out.str();
}

namespace detail {

// splitmix64, used both as a seeded stream and a counter-based hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    // modulo bias is negligible for the ranges used here
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

} // namespace detail

inline Graph generate_complete(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) edges.push_back({j, k});
    return Graph::from_edges(n, std::move(edges));
}

inline Graph generate_cycle(int n) {
    if (n < 3) throw Error(ErrorKind::BadParameter, "cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < n; ++j) edges.push_back({j, (j + 1) % n});
    return Graph::from_edges(n, std::move(edges));
}

/// Circulant graph C_n(offsets): j ~ j+o (mod n) for each offset o.
inline Graph generate_circulant(int n, const std::vector<int>& offsets) {
    if (n < 2) throw Error(ErrorKind::BadParameter, "circulant needs n >= 2");
    std::set<std::pair<int, int>> edges;
    for (int o : offsets) {
        if (o <= 0 || o > n / 2)
            throw Error(ErrorKind::BadParameter, "circulant offset out of range");
        for (int j = 0; j < n; ++j) {
            int k = (j + o) % n;
            if (j == k) continue;
            edges.insert({std::min(j, k), std::max(j, k)});
        }
    }
    return Graph::from_edges(n, {edges.begin(), edges.end()});
}

inline Graph generate_gnp(int n, double p, std::uint64_t seed) {
    if (p < 0.0 || p > 1.0) throw Error(ErrorKind::BadParameter, "gnp probability out of [0,1]");
    detail::Rng rng(detail::splitmix64(seed) ^ 0x676e7000ULL);
    std::vector<std::pair<int, int>> edges;
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            if (rng.uniform() < p) edges.push_back({j, k});
    return Graph::from_edges(n, std::move(edges));
}

/// Random d-regular graph via the pairing model, retried until simple.
inline Graph generate_random_regular(int n, int d, std::uint64_t seed) {
    if (d < 0 || d >= n) throw Error(ErrorKind::BadParameter, "regular degree out of range");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw Error(ErrorKind::BadParameter, "n*d must be even for a d-regular graph");
    detail::Rng rng(detail::splitmix64(seed) ^ 0x72656700ULL);
    const int points = n * d;
    std::vector<int> perm(points);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        for (int i = 0; i < points; ++i) perm[i] = i;
        for (int i = points - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
        std::set<std::pair<int, int>> edges;
        bool ok = true;
        for (int i = 0; i < points && ok; i += 2) {
            int a = perm[i] / d, b = perm[i + 1] / d;
            if (a == b) ok = false;
            else if (!edges.insert({std::min(a, b), std::max(a, b)}).second) ok = false;
        }
        if (ok) return Graph::from_edges(n, {edges.begin(), edges.end()});
    }
    throw Error(ErrorKind::BadParameter, "pairing model failed to produce a simple graph");
}

/// Parses a generator spec string "kind:n[:params][:seed]".
/// Supported: "k:n" / "complete:n", "c:n" / "cycle:n",
/// "circ:n:o1,o2,...", "gnp:n:p:seed", "reg:n:d:seed".
inline Graph generate_from_spec(const std::string& spec) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : spec) {
        if (ch == ':') { parts.push_back(cur); cur.clear(); }
        else cur.push_back(ch);
    }
    parts.push_back(cur);
    if (parts.size() < 2) throw Error(ErrorKind::ParseError, "generator spec needs \"kind:n...\"");
    const std::string& kind = parts[0];
    int n = 0;
    try { n = std::stoi(parts[1]); }
    catch (...) { throw Error(ErrorKind::ParseError, "bad vertex count in generator spec"); }

    if (kind == "k" || kind == "complete") return generate_complete(n);
    if (kind == "c" || kind == "cycle") return generate_cycle(n);
    if (kind == "circ" || kind == "circulant") {
        if (parts.size() < 3) throw Error(ErrorKind::ParseError, "circulant spec needs offsets");
        std::vector<int> offs;
        std::string tok;
        std::istringstream os(parts[2]);
        while (std::getline(os, tok, ',')) offs.push_back(std::stoi(tok));
        return generate_circulant(n, offs);
    }
    if (kind == "gnp") {
        if (parts.size() < 4) throw Error(ErrorKind::ParseError, "gnp spec is gnp:n:p:seed");
        return generate_gnp(n, std::stod(parts[2]), std::stoull(parts[3]));
    }
    if (kind == "reg" || kind == "regular") {
        if (parts.size() < 4) throw Error(ErrorKind::ParseError, "regular spec is reg:n:d:seed");
        return generate_random_regular(n, std::stoi(parts[2]), std::stoull(parts[3]));
    }
    throw Error(ErrorKind::ParseError, "unknown generator kind \"" + kind + "\"");
}

/// Checks Sum b = 0 and b_j == d_j (mod 2) for an integer imbalance target.
inline bool imbalance_parity_ok(const Graph& g, const std::vector<long long>& b) {
    for (int j = 0; j < g.n(); ++j)
        if (((b[j] % 2) + 2) % 2 != g.degree(j) % 2) return false;
    return true;
}

inline void require_zero_sum(const std::vector<long long>& b) {
    long long s = 0;
    for (long long x : b) s += x;
    if (s != 0) throw Error(ErrorKind::InvalidImbalance, "imbalance sum is not zero");
}

} // namespace oricount

#endif
