#pragma once
// Psi' : X -> U, Psi'' : X -> (qbar, p), the H iteration, and the way back

#include "core.hpp"

namespace gcn {

template <class T>
Mat<T> schur_left(const Mat<T>& x) {
    int n = x.r;
    T inv = qdiv(T(1), x(1, n));
    Mat<T> a = sub(x, range(2, n), range(1, n - 1));
    for (int i = 2; i <= n; ++i)
        for (int j = 1; j <= n - 1; ++j) a(i - 1, j) -= x(i, n) * inv * x(1, j);
    return a;
}

template <class T>
Mat<T> schur_right(const Mat<T>& x) {
    int n = x.r;
    T inv = qdiv(T(1), x(n, 1));
    Mat<T> a = sub(x, range(1, n - 1), range(2, n));
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 2; j <= n; ++j) a(i, j - 1) -= x(i, 1) * inv * x(n, j);
    return a;
}

template <class T>
Mat<T> psi_prime(const Mat<T>& x) {
    return schur_left(x) * inverse(schur_right(x));
}

// element of Rbar_N: qbar(l)/p(l), p monic of degree N
template <class T>
struct RationalPoint {
    int N = 0;
    std::vector<T> qbar;  // qbar_0..qbar_N
    std::vector<T> p;     // p_0..p_N, p_N = 1

    // hbar_0..hbar_count from qbar_j = sum_i p_{i+j} hbar_i
    std::vector<T> moments(int count) const {
        std::vector<T> h;
        for (int s = 0; s <= count; ++s) {
            T v = s <= N ? qbar[N - s] : T(0);
            for (int i = std::max(0, s - N); i < s; ++i) v -= p[N - s + i] * h[i];
            h.push_back(v);
        }
        return h;
    }
};

template <class T>
RationalPoint<T> psi_second(const Mat<T>& x) {
    int n = x.r;
    RationalPoint<T> r;
    r.N = n - 1;
    T inv = qdiv(T(1), x(1, n));
    for (int i = 0; i <= n - 1; ++i) {
        r.qbar.push_back(x(n, i + 1) * inv);
        r.p.push_back(x(1, i + 1) * inv);
    }
    return r;
}

// hbar_0..hbar_count as a 1 x (count+1) matrix, the input format for moment functions
template <class T>
Mat<T> moment_row(const std::vector<T>& h) {
    Mat<T> m(1, int(h.size()));
    for (std::size_t i = 0; i < h.size(); ++i) m(1, int(i) + 1) = h[i];
    return m;
}

// H_0 = U, H_k = U gamma(H_{k-1}_+); returns H_0..H_steps
template <class T>
std::vector<Mat<T>> H_iterate(const Mat<T>& u, int steps) {
    std::vector<Mat<T>> hs{u};
    for (int k = 1; k <= steps; ++k) {
        auto [plus, zm] = gauss_factorize(hs.back());
        hs.push_back(u * gamma_group(plus));
    }
    return hs;
}

template <class T>
Mat<T> H_map(const Mat<T>& u) {
    return H_iterate(u, std::max(u.r - 2, 0)).back();
}

// group version of gamma* on lower triangular matrices, bottom-right filled with 1
template <class T>
Mat<T> gamma_star_group(const Mat<T>& a) {
    Mat<T> b = gamma_star(a);
    b(a.r, a.r) = T(1);
    return b;
}

// intermediates of the reconstruction, exposed for tests
struct Reconstruction {
    MatQ M, C, L, V, Vplus, Vzm, N, Theta, X;
    std::vector<Q> mu, m;
};

inline Q minor_1n(const std::vector<Q>& r1, const std::vector<Q>& rn, int a, int b) {
    return r1[a - 1] * rn[b - 1] - r1[b - 1] * rn[a - 1];
}

// X from U and the first and last rows of X
inline Reconstruction reconstruct_X(const MatQ& u, const std::vector<Q>& row1, const std::vector<Q>& rown) {
    int n = u.r + 1;
    if (int(row1.size()) != n || int(rown.size()) != n) throw std::invalid_argument("row length mismatch");
    Q x1n = row1[n - 1], xn1 = rown[0];
    if (sgn(x1n) == 0 || sgn(xn1) == 0) throw Singular("x1n or xn1 vanishes");
    if (det(u) != xn1 / x1n) throw std::invalid_argument("fibre condition det U = xn1/x1n violated");
    Reconstruction R;
    R.M = MatQ(n - 1, n - 1);
    for (int j = 2; j <= n - 1; ++j) R.M(1, j - 1) = -rown[j - 1] / xn1;
    R.M(1, n - 1) = -rown[n - 1] / xn1;
    for (int i = 2; i <= n - 1; ++i) R.M(i, i - 1) = 1;
    for (int j = 2; j <= n; ++j) R.mu.push_back(-minor_1n(row1, rown, 1, j) / (x1n * xn1));
    for (int j = 1; j <= n - 1; ++j) R.m.push_back(-minor_1n(row1, rown, j, n) / x1n);
    R.C = MatQ(n - 1, n - 1);
    MatQ rowv(1, n - 1);
    for (int j = 1; j <= n - 1; ++j) rowv(1, j) = R.mu[j - 1];
    for (int k = 1; k <= n - 1; ++k) {
        for (int j = 1; j <= n - 1; ++j) R.C(k, j) = rowv(1, j);
        rowv = rowv * R.M;
    }
    MatQ toe(n - 1, n - 1);
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= i; ++j) toe(i, j) = rown[i - j];
    R.L = toe * R.C;
    R.V = H_map(u);
    auto [vp, vzm] = gauss_factorize(R.V);
    R.Vplus = vp;
    R.Vzm = vzm;
    R.N = identity<Q>(n - 1);
    MatQ f = vzm;
    for (int k = 0; k < n - 1; ++k) {
        R.N = f * R.N;
        f = gamma_star_group(f);
    }
    MatQ left = identity<Q>(n), right = identity<Q>(n);
    put(left, 2, 2, vp);
    put(right, 1, 1, inverse(R.N));
    R.Theta = left * right;
    MatQ inner(n, n);
    put(inner, 2, 1, R.L);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) inner(i, j) += rown[i - 1] * row1[j - 1] / x1n;
    R.X = R.Theta * inner;
    return R;
}

inline std::vector<Q> row_of(const MatQ& x, int i) {
    std::vector<Q> r;
    for (int j = 1; j <= x.c; ++j) r.push_back(x(i, j));
    return r;
}

}  // namespace gcn
