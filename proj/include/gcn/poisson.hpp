#pragma once
// the three brackets, evaluated at a point from exact gradients

#include "expr.hpp"

namespace gcn {

inline MatQ diag_range(int n, bool descending) {
    MatQ d(n, n);
    for (int i = 1; i <= n; ++i) d(i, i) = descending ? n + 1 - i : i;
    return d;
}

// sum_{k>=from} op^k (m), op nilpotent on the given part
template <class Op>
MatQ shift_sum(const MatQ& m, Op op, int from) {
    MatQ acc(m.r, m.c), cur = m;
    for (int k = 0; k < from; ++k) cur = op(cur);
    for (int k = from; k < m.r; ++k) {
        acc = acc + cur;
        cur = op(cur);
    }
    return acc;
}

inline MatQ gam(const MatQ& m) { return gamma(m); }
inline MatQ gam_star(const MatQ& m) { return gamma_star(m); }

// Cartan part: descending D for R_0 with gamma*, ascending D for Rbar_0 with gamma
inline MatQ cartan_part(const MatQ& eta, bool bar) {
    int n = eta.r;
    MatQ D = diag_range(n, !bar);
    Q tr = trace(eta), trd = trace(D * eta);
    MatQ r = scale(frac(n - 1, 2 * n) * tr, identity<Q>(n));
    r = r + scale(frac(1, n), scale(tr, D) - scale(trd, identity<Q>(n)));
    r = r - (bar ? shift_sum(eta, gam, 1) : shift_sum(eta, gam_star, 1));
    return r;
}

inline MatQ R_plus(const MatQ& m) {
    return cartan_part(diag_part(m), false) + shift_sum(strict_upper(m), gam, 0) -
           shift_sum(strict_lower(m), gam_star, 1);
}

inline MatQ Rbar_plus(const MatQ& m) {
    return cartan_part(diag_part(m), true) + shift_sum(strict_upper(m), gam_star, 0) -
           shift_sum(strict_lower(m), gam, 1);
}

// {f1,f2} = <Rbar_+(grad f1 X), grad f2 X> - <R_+(X grad f1), X grad f2>
inline Q bracket_grad(const MatQ& n1, const MatQ& n2, const MatQ& x) {
    return pairing(Rbar_plus(n1 * x), n2 * x) - pairing(R_plus(x * n1), x * n2);
}

inline Q bracket_main(const Expr& f, const Expr& g, const MatQ& x) {
    return bracket_grad(grad(f, x).nabla, grad(g, x).nabla, x);
}

// dual bracket on a point U
inline Q bracket_dual_grad(const MatQ& n1, const MatQ& n2, const MatQ& u) {
    MatQ c1 = commutator(n1, u), c2 = commutator(n2, u);
    return pairing(R_plus(c1), c2) - pairing(c1, n2 * u);
}

inline Q bracket_dual(const Expr& f, const Expr& g, const MatQ& u) {
    return bracket_dual_grad(grad(f, u).nabla, grad(g, u).nabla, u);
}

// {hbar_i, hbar_j}^T from the moment stream
inline Q toda_moment(const std::vector<Q>& h, int i, int j) {
    if (i == j) return 0;
    if (i > j) return -toda_moment(h, j, i);
    Q s = 0;
    for (int k = i; k <= j - 1; ++k) s += h.at(k + 1) * h.at(i + j - k - 1);
    return s;
}

// functions of a 1 x K moment row; needs hbar up to index 2K-2
inline Q bracket_toda(const Expr& f, const Expr& g, const MatQ& row, const std::vector<Q>& h) {
    Grad a = grad(f, row), b = grad(g, row);
    Q s = 0;
    for (int i = 1; i <= row.c; ++i) {
        if (sgn(a.nabla(i, 1)) == 0) continue;
        for (int j = 1; j <= row.c; ++j)
            if (sgn(b.nabla(j, 1)) != 0) s += a.nabla(i, 1) * b.nabla(j, 1) * toda_moment(h, i - 1, j - 1);
    }
    return s;
}

}  // namespace gcn
