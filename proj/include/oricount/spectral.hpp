#ifndef ORICOUNT_SPECTRAL_HPP
#define ORICOUNT_SPECTRAL_HPP

#include <cstdint>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "oricount/graph.hpp"

namespace oricount {

using Rational = boost::rational<long long>;

/// Exact Cheeger constant h(G) = min |boundary(U)| / |U| over nonempty U with
/// |U| <= n/2. Exhaustive Gray-code walk over subsets; guarded at n <= 22.
inline Rational cheeger_exact(const Graph& g) {
    const int n = g.n();
    if (n == 0 || g.m() == 0) throw Error(ErrorKind::BadParameter, "cheeger of empty graph");
    if (n > 22) throw Error(ErrorKind::SizeLimit, "cheeger_exact guarded at n <= 22");

    std::vector<char> in(n, 0);
    long long boundary = 0, size = 0;
    long long best_num = -1, best_den = 1;
    const std::uint64_t total = 1ULL << n;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t i = 1; i < total; ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        int v = __builtin_ctzll(gray ^ gray_prev);
        gray_prev = gray;
        if (in[v]) {
            in[v] = 0;
            --size;
            for (int w : g.neighbors(v)) boundary += in[w] ? 1 : -1;
        } else {
            in[v] = 1;
            ++size;
            for (int w : g.neighbors(v)) boundary += in[w] ? -1 : 1;
        }
        if (size == 0 || 2 * size > n) continue;
        // boundary/size < best_num/best_den  <=>  boundary*best_den < best_num*size
        if (best_num < 0 || boundary * best_den < best_num * size) {
            best_num = boundary;
            best_den = size;
        }
    }
    return Rational(best_num, best_den);
}

/// Same subset walk, returning the minimising set (smallest ratio, then first found).
inline std::vector<int> cheeger_witness(const Graph& g) {
    const int n = g.n();
    if (n > 22) throw Error(ErrorKind::SizeLimit, "cheeger witness guarded at n <= 22");
    Rational h = cheeger_exact(g);
    std::vector<char> in(n, 0);
    long long boundary = 0, size = 0;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t i = 1; i < (1ULL << n); ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        int v = __builtin_ctzll(gray ^ gray_prev);
        gray_prev = gray;
        if (in[v]) {
            in[v] = 0; --size;
            for (int w : g.neighbors(v)) boundary += in[w] ? 1 : -1;
        } else {
            in[v] = 1; ++size;
            for (int w : g.neighbors(v)) boundary += in[w] ? -1 : 1;
        }
        if (size == 0 || 2 * size > n) continue;
        if (Rational(boundary, size) == h) {
            std::vector<int> u;
            for (int j = 0; j < n; ++j)
                if (in[j]) u.push_back(j);
            return u;
        }
    }
    return {};
}

inline Eigen::MatrixXd laplacian(const Graph& g) {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (auto [j, k] : g.edges()) {
        L(j, j) += 1;
        L(k, k) += 1;
        L(j, k) -= 1;
        L(k, j) -= 1;
    }
    return L;
}

struct Lambda2Result {
    double value;
    bool connected;
};

/// Second-smallest eigenvalue of the unweighted Laplacian.
/// For a disconnected graph the value is 0 and the flag is set.
inline Lambda2Result lambda2(const Graph& g) {
    if (g.n() < 2) return {0.0, true};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g), Eigen::EigenvaluesOnly);
    double v = std::max(0.0, es.eigenvalues()(1));
    bool conn = g.connected();
    return {conn ? v : 0.0, conn};
}

/// Lower bound on h(G): exact value when n <= 22, else lambda2/2.
inline double cheeger_lower_bound(const Graph& g) {
    if (g.n() <= 22) return boost::rational_cast<double>(cheeger_exact(g));
    return 0.5 * lambda2(g).value;
}

} // namespace oricount

#endif
