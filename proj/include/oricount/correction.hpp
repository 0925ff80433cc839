#ifndef ORICOUNT_CORRECTION_HPP
#define ORICOUNT_CORRECTION_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "oricount/graph.hpp"
#include "oricount/mle.hpp"

namespace oricount {

/// Quadratic-form matrices of the saddle-point expansion:
/// L is the Laplacian with edge weight 2*lam_jk*lam_kj, A = (Delta/n) J + L.
struct QuadraticForms {
    Eigen::MatrixXd L;
    Eigen::MatrixXd A;
};

inline QuadraticForms build_matrices(const Graph& g, const LambdaMatrix& lam) {
    const int n = g.n();
    QuadraticForms q;
    q.L = Eigen::MatrixXd::Zero(n, n);
    for (int e = 0; e < g.m(); ++e) {
        auto [j, k] = g.edges()[e];
        double w = 2.0 * lam.forward[e] * (1.0 - lam.forward[e]);
        q.L(j, j) += w;
        q.L(k, k) += w;
        q.L(j, k) -= w;
        q.L(k, j) -= w;
    }
    double dmax = g.max_degree();
    q.A = Eigen::MatrixXd::Constant(n, n, dmax / n) + q.L;
    return q;
}

/// log of the weighted spanning-tree sum kappa(G, r) (edge weight 2*lam*lam)
/// by the Matrix-Tree theorem: determinant of L with row/column 0 removed.
inline double log_kappa_weighted(const Graph& g, const LambdaMatrix& lam) {
    const int n = g.n();
    if (n < 2) return 0.0;
    Eigen::MatrixXd L = build_matrices(g, lam).L;
    Eigen::LLT<Eigen::MatrixXd> llt(L.block(1, 1, n - 1, n - 1));
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::NotPositiveDefinite, "reduced Laplacian not positive definite");
    double logdet = 0.0;
    for (int i = 0; i < n - 1; ++i) logdet += std::log(llt.matrixL()(i, i));
    return 2.0 * logdet;
}

/// log of the unweighted spanning-tree count.
inline double log_kappa(const Graph& g) {
    LambdaMatrix half;
    half.forward.assign(g.m(), 0.5);
    // weight 2*(1/2)*(1/2) = 1/2 per edge; rescale to weight 1
    return log_kappa_weighted(g, half) + (g.n() - 1) * std::log(2.0);
}

/// log|A| via Cholesky, crosschecked against the Matrix-Tree identity
/// |A| = Delta * n * kappa(G, r).
inline double log_det_A(const Eigen::MatrixXd& A, const Graph& g, const LambdaMatrix& lam) {
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::NotPositiveDefinite, "A is not positive definite");
    double logdet = 0.0;
    for (int i = 0; i < A.rows(); ++i) logdet += std::log(llt.matrixL()(i, i));
    logdet *= 2.0;
    if (g.connected()) {
        double mt = std::log(static_cast<double>(g.max_degree())) +
                    std::log(static_cast<double>(g.n())) + log_kappa_weighted(g, lam);
        if (std::abs(logdet - mt) > 1e-9 * std::max(1.0, std::abs(logdet)))
            throw Error(ErrorKind::NotPositiveDefinite,
                        "Matrix-Tree crosscheck failed: log|A|=" + std::to_string(logdet) +
                            " vs " + std::to_string(mt));
    }
    return logdet;
}

/// Covariances of the edge differences Y_jk = X_j - X_k (canonical j < k)
/// where X has density proportional to exp(-x'Ax), i.e. Cov X = (2A)^{-1}.
struct EdgeCovariance {
    Eigen::MatrixXd sigma;  // (2A)^{-1}
    std::vector<double> var;  // v_e per canonical edge

    double cov(const Graph& g, int e1, int e2) const {
        auto [j, k] = g.edges()[e1];
        auto [j2, k2] = g.edges()[e2];
        return sigma(j, j2) + sigma(k, k2) - sigma(j, k2) - sigma(k, j2);
    }
};

inline EdgeCovariance edge_covariances(const Eigen::MatrixXd& A, const Graph& g) {
    EdgeCovariance ec;
    Eigen::LLT<Eigen::MatrixXd> llt(2.0 * A);
    if (llt.info() != Eigen::Success)
        throw Error(ErrorKind::NotPositiveDefinite, "2A is not positive definite");
    ec.sigma = llt.solve(Eigen::MatrixXd::Identity(A.rows(), A.cols()));
    ec.var.reserve(g.m());
    for (auto [j, k] : g.edges())
        ec.var.push_back(ec.sigma(j, j) + ec.sigma(k, k) - 2.0 * ec.sigma(j, k));
    return ec;
}

inline double double_factorial_pairs(int m) {
    if (m % 2 != 0) return 0.0;
    double p = 1.0;
    for (int i = m - 1; i > 1; i -= 2) p *= i;
    return p;
}

/// E Z^s for centered normal Z with given variance: p(s) * v^{s/2}.
inline double isserlis_moment(int s, double variance) {
    if (s < 0) throw Error(ErrorKind::BadParameter, "negative moment order");
    if (s % 2 != 0) return 0.0;
    return double_factorial_pairs(s) * std::pow(variance, s / 2);
}

/// Cov(Z1^s, Z2^t) for jointly normal centered (Z1, Z2) with variances v1, v2
/// and covariance w, by the pairing sum.
inline double isserlis_cov(int s, int t, double v1, double v2, double w) {
    if (s < 0 || t < 0) throw Error(ErrorKind::BadParameter, "negative moment order");
    double total = 0.0;
    double binom_s = s, binom_t = t;  // C(s,u), C(t,u) built incrementally
    double ufact = 1.0;
    for (int u = 1; u <= std::min(s, t); ++u) {
        if (u > 1) {
            binom_s *= static_cast<double>(s - u + 1) / u;
            binom_t *= static_cast<double>(t - u + 1) / u;
            ufact *= u;
        }
        double term = binom_s * binom_t * ufact * double_factorial_pairs(s - u) *
                      double_factorial_pairs(t - u);
        if (term == 0.0) continue;
        total += term * std::pow(v1, (s - u) / 2) * std::pow(v2, (t - u) / 2) * std::pow(w, u);
    }
    return total;
}

/// The four components of the correction exponent psi and their edge
/// coefficients. c3 = ll*(l_jk - l_kj), c4 = ll*(1 - 6 ll),
/// c6 = ll*(1 - 30 ll + 120 ll^2) with ll = lam_jk * lam_kj.
struct PsiTerms {
    double Ef4, Ef6, Vf3, Vf4;
    double psi;  // Ef4 + Ef6 - Vf3/2 + Vf4/2
};

inline PsiTerms psi_terms(const Graph& g, const LambdaMatrix& lam, const EdgeCovariance& cov) {
    const int m = g.m();
    std::vector<double> c3(m), c4(m), c6(m);
    for (int e = 0; e < m; ++e) {
        double l = lam.forward[e];
        double ll = l * (1.0 - l);
        c3[e] = ll * (2.0 * l - 1.0);  // lam_jk - lam_kj
        c4[e] = ll * (1.0 - 6.0 * ll);
        c6[e] = ll * (1.0 - 30.0 * ll + 120.0 * ll * ll);
    }
    PsiTerms t{};
    for (int e = 0; e < m; ++e) {
        double v = cov.var[e];
        t.Ef4 += (2.0 / 3.0) * c4[e] * isserlis_moment(4, v);
        t.Ef6 += -(4.0 / 45.0) * c6[e] * isserlis_moment(6, v);
    }
    // fixed-order O(m^2) pair sums so repeated runs agree bitwise
    for (int e1 = 0; e1 < m; ++e1) {
        for (int e2 = 0; e2 < m; ++e2) {
            double w = cov.cov(g, e1, e2);
            t.Vf3 += (16.0 / 9.0) * c3[e1] * c3[e2] *
                     isserlis_cov(3, 3, cov.var[e1], cov.var[e2], w);
            t.Vf4 += (4.0 / 9.0) * c4[e1] * c4[e2] *
                     isserlis_cov(4, 4, cov.var[e1], cov.var[e2], w);
        }
    }
    t.psi = t.Ef4 + t.Ef6 - 0.5 * t.Vf3 + 0.5 * t.Vf4;
    return t;
}

/// -(1/4) sum_{jk in G} (1/d_j + 1/d_k)^2, the degree-only approximation to Ef4.
inline double expvar_leading(const Graph& g) {
    double s = 0.0;
    for (auto [j, k] : g.edges()) {
        double t = 1.0 / g.degree(j) + 1.0 / g.degree(k);
        s += t * t;
    }
    return -0.25 * s;
}

struct CorrectionBundle {
    QuadraticForms forms;
    double log_det_A;
    EdgeCovariance cov;
    PsiTerms psi;
};

inline CorrectionBundle correction_bundle(const Graph& g, const LambdaMatrix& lam) {
    CorrectionBundle b;
    b.forms = build_matrices(g, lam);
    b.log_det_A = log_det_A(b.forms.A, g, lam);
    b.cov = edge_covariances(b.forms.A, g);
    b.psi = psi_terms(g, lam, b.cov);
    return b;
}

/// ||A^{-1}||_inf, for checking against the expansion-based bound
/// c^{-1} + 18 Delta / (l_min h^2) log(n/h).
inline double a_inverse_inf_norm(const Eigen::MatrixXd& A) {
    Eigen::MatrixXd inv = A.llt().solve(Eigen::MatrixXd::Identity(A.rows(), A.cols()));
    return inv.cwiseAbs().rowwise().sum().maxCoeff();
}

} // namespace oricount

#endif
