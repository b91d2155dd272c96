#pragma once
// named functions on X, on U = Psi'(X), and on moment streams

#include "builders.hpp"
#include "expr.hpp"
#include "maps.hpp"

#include <map>
#include <mutex>

namespace gcn {

// ---------------------------------------------------------------- signs

// s^m_kl for the dual structure of size m
inline int sign_dual(int m, int k, int l) {
    if (m % 2 == 0) return sign_pow(long(k) * (l + 1));
    return sign_pow((m - 1) / 2 + k * (k - 1) / 2 + l * (l - 1) / 2);
}

// sign relating phi_kl(Psi'(X)) and det Phi_kl(X)
inline int sign_phi(int n, int k, int l) {
    int base = n % 2 == 0 ? (n - 2) / 2 : (n - 1) / 2;
    return sign_pow(base + k * (k - 1) / 2 + l * (l - 1) / 2);
}

inline int sign_g(int n, int i, int j) { return sign_pow(long(n + j + 1) * (i + j)); }

// -------------------------------------------------------- interpolation

// coefficients of a polynomial of degree <= d from its values at 0..d
inline const MatQ& vandermonde_inverse(int d) {
    static std::map<int, MatQ> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    MatQ v(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
        Q p = 1;
        for (int j = 0; j <= d; ++j) {
            v(i + 1, j + 1) = p;
            p *= i;
        }
    }
    return cache.emplace(d, inverse(v)).first->second;
}

template <class T>
std::vector<T> interp_coeffs(const std::vector<T>& vals) {
    int d = int(vals.size()) - 1;
    const MatQ& vi = vandermonde_inverse(d);
    std::vector<T> c(d + 1, T(0));
    for (int r = 0; r <= d; ++r)
        for (int i = 0; i <= d; ++i)
            if (sgn(vi(r + 1, i + 1)) != 0) c[r] += T(vi(r + 1, i + 1)) * vals[i];
    return c;
}

// ------------------------------------------------------------- U side

// first k columns of 1, first l of U, first column of U^p for 2 <= p <= m-k-l+1
template <class T>
Mat<T> build_Phi_dual(const Mat<T>& u, int k, int l) {
    int m = u.r;
    if (k < 1 || l < 1 || k + l > m) throw std::out_of_range("Phi_kl(U) index range");
    Mat<T> r(m, m);
    int col = 1;
    for (int j = 1; j <= k; ++j, ++col) r(j, col) = T(1);
    for (int j = 1; j <= l; ++j, ++col)
        for (int i = 1; i <= m; ++i) r(i, col) = u(i, j);
    Mat<T> pw = u;
    for (int p = 2; p <= m - k - l + 1; ++p, ++col) {
        pw = pw * u;
        for (int i = 1; i <= m; ++i) r(i, col) = pw(i, 1);
    }
    return r;
}

template <class T>
T phi_dual(const Mat<T>& u, int k, int l) {
    return T(sign_dual(u.r, k, l)) * det(build_Phi_dual(u, k, l));
}

inline void subsets_(const Rows& from, int size, std::size_t start, Rows& cur, std::vector<Rows>& out) {
    if (int(cur.size()) == size) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i < from.size(); ++i) {
        cur.push_back(from[i]);
        subsets_(from, size, i + 1, cur, out);
        cur.pop_back();
    }
}
inline std::vector<Rows> subsets(const Rows& from, int size) {
    std::vector<Rows> out;
    Rows cur;
    if (size >= 0 && size <= int(from.size())) subsets_(from, size, 0, cur, out);
    return out;
}

inline Rows down_shift(const Rows& r) {  // gamma*(I) = {i-1}
    Rows s;
    for (int i : r) s.push_back(i - 1);
    return s;
}

inline Rows sorted_union(Rows a, const Rows& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
}

// literal subset sum; rows of every minor sorted ascending
template <class T>
T g_dual_subsets(const Mat<T>& u, int i, int j) {
    int m = u.r;
    if (!(1 < j && j <= i && i <= m)) throw std::out_of_range("g_ij(U) index range");
    if (j == 2) return det(sub(u, range(i, m), range(2, m - i + 2)));
    Rows full = range(2, m);
    // I_1 .. I_{j-2}, with I_{j-1} = [2,m]
    std::vector<std::vector<Rows>> choices;
    choices.push_back(subsets(full, m - i + 1));
    for (int t = 2; t <= j - 2; ++t) choices.push_back(subsets(full, m - j + t));
    T total(0);
    std::vector<std::size_t> idx(choices.size(), 0);
    for (auto& c : choices)
        if (c.empty()) return total;
    while (true) {
        std::vector<Rows> I;
        for (std::size_t t = 0; t < idx.size(); ++t) I.push_back(choices[t][idx[t]]);
        I.push_back(full);
        T term = det(sub(u, range(i, m), I[0]));
        if (!is_null(term)) {
            term = term * det(sub(u, sorted_union(down_shift(I[0]), range(m - i + j, m)), I[1]));
            for (int t = 2; t <= j - 2 && !is_null(term); ++t)
                term = term * det(sub(u, sorted_union(down_shift(I[t - 1]), {m}), I[t]));
            total += term;
        }
        std::size_t p = 0;
        while (p < idx.size() && ++idx[p] == choices[p].size()) idx[p++] = 0;
        if (p == idx.size()) break;
    }
    return total;
}

// flag minors of H(U)
template <class T>
T g_dual_flags(const Mat<T>& u, int i, int j) {
    int m = u.r;
    if (!(1 < j && j <= i && i <= m)) throw std::out_of_range("g_ij(U) index range");
    Mat<T> h = H_map(u);
    T r = det(sub(h, range(i, m), range(j, m - i + j)));
    for (int s = 2; s <= j - 1; ++s) r = r * det(sub(h, range(s, m), range(s, m)));
    return r;
}

// c_0 = 1, ..., c_m = det U
template <class T>
std::vector<T> c_dual(const Mat<T>& u) {
    int m = u.r;
    std::vector<T> vals;
    for (int lam = 0; lam <= m; ++lam) vals.push_back(det(identity<T>(m) + scale(T(lam), u)));
    auto co = interp_coeffs(vals);
    for (int r = 1; r <= m; ++r) co[r] = T(sign_pow(long(r) * (m - 1))) * co[r];
    return co;
}

// ------------------------------------------------------------- X side

template <class T>
T phi_X(const Mat<T>& x, int k, int l) { return det(build_phi_matrix(x, k, l)); }

template <class T>
T g_X(const Mat<T>& x, int i, int j) { return det(build_Gij(x, i, j)); }

// c_0..c_{n+1}, signed coefficients of det(lambda A + B)
template <class T>
std::vector<T> c_X(const Mat<T>& x) {
    int n = x.r;
    auto [A, B] = build_AB(x);
    std::vector<T> vals;
    for (int lam = 0; lam <= n + 1; ++lam) vals.push_back(det(scale(T(lam), A) + B));
    auto co = interp_coeffs(vals);
    for (int r = 0; r <= n + 1; ++r) co[r] = T(sign_pow(long(r) * n)) * co[r];
    return co;
}

template <class T>
T f_X(const Mat<T>& x, int m) {
    Mat<T> f = build_F(x);
    int s = f.r;
    if (m < 1 || m > s) throw std::out_of_range("f_m index range");
    return det(sub(f, range(s - m + 1, s), range(s - m + 1, s)));
}

template <class T>
T k_X(const Mat<T>& x, int i, int j) {
    int n = x.r;
    if (i == j) return det(sub(x, range(i, n), range(i, n)));
    return det(build_Kij(x, i, j));
}

template <class T>
T word_X(const Word& w, const Mat<T>& x) { return det(bracket_matrix(w, x)); }

// -------------------------------------------------------- moment side

// det (h_{a+b-2+off})_{a,b=1..m}
template <class T>
T hankel_det(const std::vector<T>& h, int m, int off) {
    Mat<T> H(m, m);
    for (int a = 1; a <= m; ++a)
        for (int b = 1; b <= m; ++b) H(a, b) = h.at(a + b - 2 + off);
    return det(H);
}

template <class T>
T tbar_minus(const std::vector<T>& h, int m) { return hankel_det(h, m, 0); }
template <class T>
T tbar_plus(const std::vector<T>& h, int m) { return T(sign_pow(m)) * hankel_det(h, m, 1); }
template <class T>
T t_minus(const std::vector<T>& h, int m) { return hankel_det(h, m, 1); }
template <class T>
T t_plus(const std::vector<T>& h, int m) { return hankel_det(h, m, 2); }

template <class T>
std::vector<T> moment_stream(const Mat<T>& row) {
    std::vector<T> h;
    for (int j = 1; j <= row.c; ++j) h.push_back(row(1, j));
    return h;
}

// ================================================================ catalog

namespace fn {

inline std::string idx(int a, int b) { return "[" + std::to_string(a) + "," + std::to_string(b) + "]"; }

inline Expr x(int i, int j) {
    return leaf("x" + std::to_string(i) + std::to_string(j), {1, 0}, [i, j](const auto& m) { return m(i, j); });
}

inline Expr detX(int n) {
    return leaf("det X", {n, 0}, [](const auto& m) { return det(m); });
}

inline Expr phi(int n, int k, int l) {
    return leaf("phi" + idx(k, l), {(n - k - l) * (n + 1), 0},
                [k, l](const auto& m) { return phi_X(m, k, l); });
}

inline Expr g(int n, int i, int j) {
    return leaf("g" + idx(i, j), {n + j - 1, 0}, [i, j](const auto& m) { return g_X(m, i, j); });
}

inline Expr c(int n, int r) {
    return leaf("c" + std::to_string(r), {n + 1, 0}, [r](const auto& m) { return c_X(m)[r]; });
}

inline Expr f(int n, int m) {
    (void)n;
    return leaf("f" + std::to_string(m), {m, 0}, [m](const auto& x) { return f_X(x, m); });
}

inline Expr k(int n, int i, int j) {
    int sz = i == j ? n - i + 1 : n - j + 2;
    return leaf("k" + idx(i, j), {sz, 0}, [i, j](const auto& m) { return k_X(m, i, j); });
}

inline Expr word(const Word& w) {
    return leaf(w.str(), {w.weight(), 0}, [w](const auto& m) { return word_X(w, m); });
}

// the companion of g_{n-1,n-1} in the D exchange: rows 2..2n-3 and columns 2..2n-3
// of G({1,n}^{n-3}, {1,n-1,n}, {1,n})
inline Expr g_trimmed(int n) {
    return leaf("g~", {2 * n - 4, 0}, [n](const auto& m) {
        std::vector<Rows> blocks(n - 3, Rows{1, n});
        blocks.push_back({1, n - 1, n});
        blocks.push_back({1, n});
        auto G = build_G(blocks, m);
        return det(sub(G, range(2, 2 * n - 3), range(2, 2 * n - 3)));
    });
}

// ---- pullbacks through Psi' and Psi''; entries of U have degree n+1 over n+1

inline Degree pulled(int n, int d) { return {d * (n + 1), d * (n + 1)}; }

inline Expr u(int n, int i, int j) {
    return leaf("u" + std::to_string(i) + std::to_string(j) + "(X)", pulled(n, 1),
                [i, j](const auto& m) { return psi_prime(m)(i, j); }, false);
}

inline Expr phi_pull(int n, int k, int l) {
    return leaf("phi" + idx(k, l) + "(U(X))", pulled(n, n - 1),
                [k, l](const auto& m) { return phi_dual(psi_prime(m), k, l); }, false);
}

inline Expr g_pull(int n, int i, int j) {
    return leaf("g" + idx(i, j) + "(U(X))", pulled(n, (n - 1) * (j - 1)),
                [i, j](const auto& m) { return g_dual_flags(psi_prime(m), i, j); }, false);
}

inline Expr c_pull(int n, int r) {
    return leaf("c" + std::to_string(r) + "(U(X))", pulled(n, r),
                [r](const auto& m) { return c_dual(psi_prime(m))[r]; }, false);
}

// moments of Psi''(X): entries are ratios of x's with powers of x1n below
inline Expr hbar_pull(int n, int s) {
    return leaf("hbar" + std::to_string(s) + "(X)", {s + 1, s + 1},
                [s](const auto& m) { return psi_second(m).moments(s)[s]; }, false);
}

inline Expr p_pull(int n, int kk) {
    (void)n;
    return leaf("p" + std::to_string(kk) + "(X)", {1, 1},
                [kk](const auto& m) { return psi_second(m).p[kk]; }, false);
}

inline Expr qbar_pull(int n, int kk) {
    (void)n;
    return leaf("qbar" + std::to_string(kk) + "(X)", {1, 1},
                [kk](const auto& m) { return psi_second(m).qbar[kk]; }, false);
}

inline Expr tbar_minus_pull(int n, int mm) {
    int d = mm * (2 * mm);
    return leaf("tbar-" + std::to_string(mm) + "(X)", {d, d}, [mm](const auto& x) {
        auto h = psi_second(x).moments(2 * mm);
        return tbar_minus(h, mm);
    }, false);
}

inline Expr tbar_plus_pull(int n, int mm) {
    (void)n;
    int d = mm * (2 * mm + 1);
    return leaf("tbar+" + std::to_string(mm) + "(X)", {d, d}, [mm](const auto& x) {
        auto h = psi_second(x).moments(2 * mm + 1);
        return tbar_plus(h, mm);
    }, false);
}

// ---- functions of U itself (point = U)

inline Expr u_own(int i, int j) { return x(i, j); }

inline Expr phi_own(int m, int k, int l) {
    return leaf("phi" + idx(k, l) + "(U)", {m, 0}, [k, l](const auto& u) { return phi_dual(u, k, l); });
}

inline Expr g_own(int m, int i, int j) {
    return leaf("g" + idx(i, j) + "(U)", {m * m, 0}, [i, j](const auto& u) { return g_dual_flags(u, i, j); });
}

inline Expr c_own(int m, int r) {
    return leaf("c" + std::to_string(r) + "(U)", {r, 0}, [r](const auto& u) { return c_dual(u)[r]; });
}

// ---- functions of a moment row (point = 1 x K matrix of hbar_0..)

inline Expr hbar_own(int s) {
    return leaf("hbar" + std::to_string(s), {1, 0}, [s](const auto& h) { return h(1, s + 1); });
}
inline Expr tbar_minus_own(int m) {
    return leaf("tbar-" + std::to_string(m), {m, 0},
                [m](const auto& r) { return tbar_minus(moment_stream(r), m); });
}
inline Expr tbar_plus_own(int m) {
    return leaf("tbar+" + std::to_string(m), {m, 0},
                [m](const auto& r) { return tbar_plus(moment_stream(r), m); });
}
inline Expr t_minus_own(int m) {
    return leaf("t-" + std::to_string(m), {m, 0}, [m](const auto& r) { return t_minus(moment_stream(r), m); });
}
inline Expr t_plus_own(int m) {
    return leaf("t+" + std::to_string(m), {m, 0}, [m](const auto& r) { return t_plus(moment_stream(r), m); });
}

}  // namespace fn

}  // namespace gcn
