#pragma once
// the concrete quivers and initial seeds

#include "functions.hpp"
#include "gcs.hpp"

namespace gcn {

inline std::string L(int k, int l) { return "(" + std::to_string(k) + "," + std::to_string(l) + ")"; }
inline std::string R(int i, int j) { return "<" + std::to_string(i) + "," + std::to_string(j) + ">"; }
inline std::string T(int m, char s) { return "(" + std::to_string(m) + "," + s + ")"; }
inline std::string Cr(int r) { return "c" + std::to_string(r); }

// right triangle vertex from its mirrored coordinates
inline std::string Rk(int m, int k, int l) { return R(m + 1 - k, m + 2 - k - l); }

// Q^dagger_m; names of the frozen corner and (0,0) may be overridden for gluing
struct DaggerNames {
    std::string corner, zero;
};

inline void add_dagger(Quiver& q, int m, const DaggerNames& nm, bool corner_frozen, bool isolated_c) {
    for (int s = 2; s <= m; ++s)
        for (int k = 1; k < s; ++k) {
            int l = s - k;
            q.add(L(k, l), (k == 1 && l == 1) ? m : 1);
        }
    for (int i = 2; i <= m; ++i)
        for (int j = 2; j <= i; ++j) {
            std::string lab = (i == m && j == m) ? nm.corner : R(i, j);
            if (!q.has(lab)) q.add(lab, 1, i == m && j == m && corner_frozen);
        }
    if (!q.has(nm.zero)) q.add(nm.zero, 1, true);
    if (isolated_c)
        for (int r = 1; r < m; ++r) q.add(Cr(r), 1, true, true);

    auto in_tri = [m](int k, int l) { return k >= 1 && l >= 1 && k + l <= m; };
    auto rk = [&](int k, int l) {
        std::string s = Rk(m, k, l);
        return s == R(m, m) ? nm.corner : s;
    };
    for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) {
            if (!in_tri(k, l)) continue;
            // left: NE except along l = 1, NW, south
            if (l >= 2 && in_tri(k + 1, l)) q.arrow(L(k, l), L(k + 1, l));
            if (in_tri(k, l + 1)) q.arrow(L(k, l + 1), L(k, l));
            if (in_tri(k + 1, l) && in_tri(k, l + 1)) q.arrow(L(k + 1, l), L(k, l + 1));
            // right, mirrored
            if (l >= 2 && in_tri(k + 1, l)) q.arrow(rk(k + 1, l), rk(k, l));
            if (in_tri(k, l + 1)) q.arrow(rk(k, l), rk(k, l + 1));
            if (in_tri(k + 1, l) && in_tri(k, l + 1)) q.arrow(rk(k, l + 1), rk(k + 1, l));
        }
    for (int p = 2; p <= m; ++p) q.arrow(rk(m + 1 - p, p - 1), L(p - 1, m - p + 1));
    for (int p = 2; p <= m - 1; ++p) q.arrow(L(p - 1, m - p + 1), rk(m - p, p));
    // the two long paths; (2,1)->(1,2) and its mirror come out doubled
    for (int l = 1; l <= m - 2; ++l) {
        q.arrow(L(1, l), L(l + 1, 1));
        q.arrow(L(l + 1, 1), L(1, l + 1));
    }
    for (int j = 3; j <= m; ++j) {
        q.arrow(rk(1, m + 2 - j), rk(m + 2 - j, 1));
        q.arrow(rk(m + 2 - j, 1), rk(1, m + 1 - j));
    }
    q.arrow(L(1, 1), nm.zero);
    q.arrow(nm.zero, R(2, 2) == R(m, m) ? nm.corner : R(2, 2));
}

inline Quiver dagger_quiver(int m) {
    Quiver q;
    add_dagger(q, m, {R(m, m), L(0, 0)}, true, true);
    return q;
}

// Qbar^T_N; the two frozen names may be overridden
inline void add_bar_toda(Quiver& q, int N, const std::string& top, const std::string& bottom, bool top_frozen) {
    auto plus = [&](int m) { return m == N ? top : T(m, '+'); };
    auto minus = [&](int m) { return m == N + 1 ? bottom : T(m, '-'); };
    for (int m = 1; m <= N; ++m) {
        if (!q.has(plus(m))) q.add(plus(m), 1, m == N && top_frozen);
        if (!q.has(minus(m))) q.add(minus(m));
    }
    if (!q.has(minus(N + 1))) q.add(minus(N + 1), 1, true);
    for (int m = 2; m <= N; ++m) {
        q.arrow(plus(m), plus(m - 1));
        q.arrow(minus(m), minus(m - 1));
    }
    for (int m = 1; m <= N - 1; ++m) q.arrow(minus(m), plus(m), 2);
    for (int m = 1; m <= N - 2; ++m) q.arrow(plus(m), minus(m + 1), 2);
    if (N >= 2) q.arrow(plus(N - 1), minus(N), 2);
    q.arrow(minus(N), plus(N));
    q.arrow(minus(N + 1), minus(N));
}

inline Quiver bar_toda_quiver(int N) {
    Quiver q;
    add_bar_toda(q, N, T(N, '+'), T(N + 1, '-'), true);
    return q;
}

inline Quiver toda_quiver(int N) {
    Quiver q;
    for (int m = 1; m <= N; ++m) q.add(T(m, '+'), 1, m == N);
    for (int m = 1; m <= N; ++m) q.add(T(m, '-'), 1, m == N);
    for (int m = 2; m <= N; ++m) {
        q.arrow(T(m, '+'), T(m - 1, '+'));
        q.arrow(T(m, '-'), T(m - 1, '-'));
    }
    for (int m = 1; m <= N - 1; ++m) q.arrow(T(m, '-'), T(m, '+'), 2);
    for (int m = 1; m <= N - 2; ++m) q.arrow(T(m, '+'), T(m + 1, '-'), 2);
    q.arrow(T(N - 1, '+'), T(N, '-'));
    return q;
}

// Q_n: both pullbacks glued along A, C, D with D unfrozen
inline Quiver main_quiver(int n) {
    int m = n - 1;
    Quiver q;
    add_dagger(q, m, {"D", "C"}, false, true);
    add_bar_toda(q, m, "D", "C", false);
    q.add("A", 1, true);
    q.add("B", 1, true);
    q.arrow(L(n - 2, 1), "A");
    q.arrow("A", L(1, 1));
    q.arrow(L(n - 2, 1), "B");
    q.arrow("B", R(n - 1, 2));
    q.arrow("A", T(1, '-'));
    q.arrow("D", "C");
    return q;
}

inline Quiver hat_quiver(int n) {
    Quiver q = main_quiver(n);
    q.add_opposite(q.id(L(1, 1)), q.id("B"));
    return q;
}

// ---------------------------------------------------------------- seeds

inline Seed main_seed(int n, bool hat = false) {
    Seed s;
    s.q = hat ? hat_quiver(n) : main_quiver(n);
    s.x.resize(s.q.size());
    int m = n - 1;
    for (auto& [lab, id] : s.q.labels()) {
        Expr e;
        if (lab == "A") e = fn::x(1, n);
        else if (lab == "B") e = fn::detX(n);
        else if (lab == "C") e = fn::x(n, 1);
        else if (lab == "D") e = fn::g(n, m, m);
        else if (lab[0] == 'c') e = fn::c(n, std::stoi(lab.substr(1)));
        else if (lab[0] == '<') {
            int i, j;
            std::sscanf(lab.c_str(), "<%d,%d>", &i, &j);
            e = fn::g(n, i, j);
        } else if (lab.back() == ')' && (lab[lab.size() - 2] == '+' || lab[lab.size() - 2] == '-')) {
            int t = std::stoi(lab.substr(1));
            e = fn::f(n, lab[lab.size() - 2] == '+' ? 2 * t : 2 * t - 1);
        } else {
            int k, l;
            std::sscanf(lab.c_str(), "(%d,%d)", &k, &l);
            e = fn::phi(n, k, l);
        }
        s.x[id] = named(e, e->name);
    }
    std::vector<Expr> str{constant(1)};
    for (int r = 1; r <= n - 2; ++r)
        str.push_back(hat ? s.x[s.q.id(Cr(r))] : s.x[s.q.id(Cr(r))] / s.x[s.q.id("B")]);
    str.push_back(constant(1));
    s.strings[s.q.id(L(1, 1))] = str;
    return s;
}

// dual seed on U in GL_m
inline Seed dagger_seed(int m) {
    Seed s;
    s.q = dagger_quiver(m);
    s.x.resize(s.q.size());
    for (auto& [lab, id] : s.q.labels()) {
        Expr e;
        if (lab == L(0, 0)) e = fn::c_own(m, m);
        else if (lab[0] == 'c') e = fn::c_own(m, std::stoi(lab.substr(1)));
        else if (lab[0] == '<') {
            int i, j;
            std::sscanf(lab.c_str(), "<%d,%d>", &i, &j);
            e = fn::g_own(m, i, j);
        } else {
            int k, l;
            std::sscanf(lab.c_str(), "(%d,%d)", &k, &l);
            e = fn::phi_own(m, k, l);
        }
        s.x[id] = e;
    }
    std::vector<Expr> str{constant(1)};
    for (int r = 1; r < m; ++r) str.push_back(s.x[s.q.id(Cr(r))]);
    str.push_back(constant(1));
    s.strings[s.q.id(L(1, 1))] = str;
    return s;
}

// Toda-side seed on a moment row
inline Seed bar_toda_seed(int N) {
    Seed s;
    s.q = bar_toda_quiver(N);
    s.x.resize(s.q.size());
    for (int m = 1; m <= N; ++m) {
        s.x[s.q.id(T(m, '+'))] = fn::tbar_plus_own(m);
        s.x[s.q.id(T(m, '-'))] = fn::tbar_minus_own(m);
    }
    s.x[s.q.id(T(N + 1, '-'))] = named(fn::tbar_minus_own(N + 1) / fn::tbar_plus_own(N), "tbar-" +
                                                                                          std::to_string(N + 1) + "/tbar+" + std::to_string(N));
    return s;
}

}  // namespace gcn
