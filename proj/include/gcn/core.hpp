#pragma once
// exact scalars, forward-mode duals, dense 1-based matrices

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace gcn {

using Q = mpq_class;

struct Singular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// value plus partials w.r.t. a fixed list of atoms; empty partials = constant
struct Dual {
    Q v;
    std::vector<Q> d;

    Dual() : v(0) {}
    Dual(const Q& q) : v(q) {}
    Dual(long q) : v(q) {}
    Dual(int q) : v(q) {}

    static Dual atom(const Q& val, std::size_t slot, std::size_t nslots) {
        Dual r(val);
        r.d.assign(nslots, Q(0));
        r.d[slot] = 1;
        return r;
    }
    Q partial(std::size_t i) const { return d.empty() ? Q(0) : d[i]; }
};

inline void axpy_(std::vector<Q>& y, const Q& a, const std::vector<Q>& x) {
    if (x.empty() || sgn(a) == 0) return;
    if (y.empty()) y.assign(x.size(), Q(0));
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sgn(x[i]) != 0) y[i] += a * x[i];
}

inline Dual operator-(const Dual& a) {
    Dual r(-a.v);
    r.d = a.d;
    for (auto& x : r.d) x = -x;
    return r;
}
inline Dual operator+(const Dual& a, const Dual& b) {
    Dual r(a.v + b.v);
    r.d = a.d;
    axpy_(r.d, Q(1), b.d);
    return r;
}
inline Dual operator-(const Dual& a, const Dual& b) {
    Dual r(a.v - b.v);
    r.d = a.d;
    axpy_(r.d, Q(-1), b.d);
    return r;
}
inline Dual operator*(const Dual& a, const Dual& b) {
    Dual r(a.v * b.v);
    axpy_(r.d, b.v, a.d);
    axpy_(r.d, a.v, b.d);
    return r;
}
inline Dual operator/(const Dual& a, const Dual& b) {
    if (sgn(b.v) == 0) throw Singular("dual division by zero");
    Dual r(a.v / b.v);
    axpy_(r.d, Q(1) / b.v, a.d);
    axpy_(r.d, -a.v / (b.v * b.v), b.d);
    return r;
}
inline Dual& operator+=(Dual& a, const Dual& b) { return a = a + b; }
inline Dual& operator-=(Dual& a, const Dual& b) { return a = a - b; }
inline Dual& operator*=(Dual& a, const Dual& b) { return a = a * b; }
inline Dual& operator/=(Dual& a, const Dual& b) { return a = a / b; }

inline const Q& value(const Q& q) { return q; }
inline const Q& value(const Dual& q) { return q.v; }
inline bool is_zero(const Q& q) { return sgn(q) == 0; }
inline bool is_zero(const Dual& q) { return sgn(q.v) == 0; }
// zero including every partial; only this may be skipped in elimination
inline bool is_null(const Q& q) { return sgn(q) == 0; }
inline bool is_null(const Dual& q) {
    if (sgn(q.v) != 0) return false;
    for (auto& e : q.d)
        if (sgn(e) != 0) return false;
    return true;
}

template <class T>
T qdiv(const T& a, const T& b) {
    if (is_zero(b)) throw Singular("division by zero");
    return a / b;
}

template <class T>
T ipow(const T& x, long e) {
    if (e < 0) return qdiv(T(1), ipow(x, -e));
    T r(1), b = x;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

// canonical a/b; mpq_class(a,b) alone is not reduced
inline Q frac(long a, long b) {
    Q q(a, b);
    q.canonicalize();
    return q;
}

inline int sign_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

inline std::string qstr(const Q& q) { return q.get_str(); }

// ---------------------------------------------------------------- matrices

template <class T>
struct Mat {
    int r = 0, c = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int rows, int cols) : r(rows), c(cols), a(std::size_t(rows) * cols, T(0)) {}

    T& operator()(int i, int j) { return a[std::size_t(i - 1) * c + (j - 1)]; }
    const T& operator()(int i, int j) const { return a[std::size_t(i - 1) * c + (j - 1)]; }
    int rows() const { return r; }
    int cols() const { return c; }
    bool square() const { return r == c; }
};

using MatQ = Mat<Q>;
using MatD = Mat<Dual>;

inline std::vector<int> range(int a, int b) {
    std::vector<int> v;
    for (int i = a; i <= b; ++i) v.push_back(i);
    return v;
}
inline std::vector<int> cat(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

template <class T>
Mat<T> identity(int n) {
    Mat<T> m(n, n);
    for (int i = 1; i <= n; ++i) m(i, i) = T(1);
    return m;
}

template <class T>
Mat<T> unit(int n, int i, int j) {
    Mat<T> m(n, n);
    m(i, j) = T(1);
    return m;
}

template <class T>
Mat<T> sub(const Mat<T>& m, const std::vector<int>& I, const std::vector<int>& J) {
    Mat<T> s(int(I.size()), int(J.size()));
    for (std::size_t x = 0; x < I.size(); ++x)
        for (std::size_t y = 0; y < J.size(); ++y) s(int(x) + 1, int(y) + 1) = m(I[x], J[y]);
    return s;
}

template <class T>
void put(Mat<T>& m, int i0, int j0, const Mat<T>& blk) {
    for (int i = 1; i <= blk.r; ++i)
        for (int j = 1; j <= blk.c; ++j) m(i0 + i - 1, j0 + j - 1) = blk(i, j);
}

template <class T>
Mat<T> operator*(const Mat<T>& x, const Mat<T>& y) {
    if (x.c != y.r) throw std::invalid_argument("dimension mismatch in product");
    Mat<T> z(x.r, y.c);
    for (int i = 1; i <= x.r; ++i)
        for (int k = 1; k <= x.c; ++k) {
            const T& xi = x(i, k);
            if (is_null(xi)) continue;
            for (int j = 1; j <= y.c; ++j)
                if (!is_null(y(k, j))) z(i, j) += xi * y(k, j);
        }
    return z;
}
template <class T>
Mat<T> operator+(Mat<T> x, const Mat<T>& y) {
    if (x.r != y.r || x.c != y.c) throw std::invalid_argument("dimension mismatch in sum");
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}
template <class T>
Mat<T> operator-(Mat<T> x, const Mat<T>& y) {
    if (x.r != y.r || x.c != y.c) throw std::invalid_argument("dimension mismatch in difference");
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}
template <class T>
Mat<T> operator-(Mat<T> x) {
    for (auto& e : x.a) e = -e;
    return x;
}
template <class T>
Mat<T> scale(const std::type_identity_t<T>& s, Mat<T> x) {
    for (auto& e : x.a) e = s * e;
    return x;
}
template <class T>
bool operator==(const Mat<T>& x, const Mat<T>& y) {
    if (x.r != y.r || x.c != y.c) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
        if (value(x.a[i]) != value(y.a[i])) return false;
    return true;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
    Mat<T> t(x.c, x.r);
    for (int i = 1; i <= x.r; ++i)
        for (int j = 1; j <= x.c; ++j) t(j, i) = x(i, j);
    return t;
}

template <class T>
T trace(const Mat<T>& x) {
    T s(0);
    for (int i = 1; i <= std::min(x.r, x.c); ++i) s += x(i, i);
    return s;
}

// <A,B> = Tr(AB)
template <class T>
T pairing(const Mat<T>& x, const Mat<T>& y) {
    T s(0);
    for (int i = 1; i <= x.r; ++i)
        for (int j = 1; j <= x.c; ++j)
            if (!is_null(x(i, j)) && !is_null(y(j, i))) s += x(i, j) * y(j, i);
    return s;
}

template <class T>
Mat<T> commutator(const Mat<T>& x, const Mat<T>& y) { return x * y - y * x; }

inline MatQ value(const MatD& m) {
    MatQ q(m.r, m.c);
    for (std::size_t i = 0; i < m.a.size(); ++i) q.a[i] = m.a[i].v;
    return q;
}
inline const MatQ& value(const MatQ& m) { return m; }

template <class T>
Mat<T> lift(const MatQ& m) {
    Mat<T> x(m.r, m.c);
    for (std::size_t i = 0; i < m.a.size(); ++i) x.a[i] = T(m.a[i]);
    return x;
}

// entries of x become independent atoms, slot (i-1)*cols + (j-1)
inline MatD atoms(const MatQ& x) {
    MatD d(x.r, x.c);
    std::size_t ns = std::size_t(x.r) * x.c;
    for (int i = 1; i <= x.r; ++i)
        for (int j = 1; j <= x.c; ++j) d(i, j) = Dual::atom(x(i, j), std::size_t(i - 1) * x.c + (j - 1), ns);
    return d;
}

// ------------------------------------------------------------- determinant

// fraction-free Bareiss, pivoting on nonzero entries
inline Q det(const MatQ& m) {
    if (!m.square()) throw std::invalid_argument("det of non-square matrix");
    int n = m.r;
    if (n == 0) return Q(1);
    MatQ a = m;
    int sgnp = 1;
    Q prev(1);
    for (int k = 1; k <= n; ++k) {
        if (is_zero(a(k, k))) {
            int p = k + 1;
            while (p <= n && is_zero(a(p, k))) ++p;
            if (p > n) return Q(0);
            for (int j = 1; j <= n; ++j) std::swap(a(k, j), a(p, j));
            sgnp = -sgnp;
        }
        for (int i = k + 1; i <= n; ++i) {
            for (int j = k + 1; j <= n; ++j) {
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sgnp > 0 ? a(n, n) : Q(-a(n, n));
}

// Gauss-Jordan inverse
template <class T>
Mat<T> inverse(const Mat<T>& m) {
    if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.r;
    Mat<T> a = m, b = identity<T>(n);
    for (int k = 1; k <= n; ++k) {
        int p = k;
        while (p <= n && is_zero(a(p, k))) ++p;
        if (p > n) throw Singular("singular matrix");
        if (p != k)
            for (int j = 1; j <= n; ++j) {
                std::swap(a(k, j), a(p, j));
                std::swap(b(k, j), b(p, j));
            }
        T piv = a(k, k);
        for (int j = 1; j <= n; ++j) {
            a(k, j) = a(k, j) / piv;
            b(k, j) = b(k, j) / piv;
        }
        for (int i = 1; i <= n; ++i) {
            if (i == k || is_null(a(i, k))) continue;
            T f = a(i, k);
            for (int j = 1; j <= n; ++j) {
                if (!is_null(a(k, j))) a(i, j) -= f * a(k, j);
                if (!is_null(b(k, j))) b(i, j) -= f * b(k, j);
            }
        }
    }
    return b;
}

// plain elimination; used for duals on singular value matrices
inline Dual det_elim(MatD a) {
    int n = a.r;
    Dual d(1);
    for (int k = 1; k <= n; ++k) {
        int p = k;
        while (p <= n && is_zero(a(p, k))) ++p;
        if (p > n) {
            // value is zero; partials need the adjugate route, not available here
            throw Singular("dual determinant of singular matrix");
        }
        if (p != k) {
            for (int j = 1; j <= n; ++j) std::swap(a(k, j), a(p, j));
            d = -d;
        }
        d = d * a(k, k);
        for (int i = k + 1; i <= n; ++i) {
            if (is_null(a(i, k))) continue;
            Dual f = a(i, k) / a(k, k);
            for (int j = k + 1; j <= n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return d;
}

// d det = det * Tr(M^{-1} dM); falls back to elimination if det = 0
inline Dual det(const MatD& m) {
    if (!m.square()) throw std::invalid_argument("det of non-square matrix");
    int n = m.r;
    if (n == 0) return Dual(1);
    MatQ v = value(m);
    Q dv = det(v);
    if (sgn(dv) == 0) return det_elim(m);
    MatQ inv = inverse(v);
    Dual r(dv);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            const auto& pd = m(i, j).d;
            if (pd.empty()) continue;
            Q w = dv * inv(j, i);
            if (sgn(w) == 0) continue;
            axpy_(r.d, w, pd);
        }
    return r;
}

// ---------------------------------------------------- triangular structure

template <class T>
Mat<T> strict_upper(const Mat<T>& x) {
    Mat<T> y(x.r, x.c);
    for (int i = 1; i <= x.r; ++i)
        for (int j = i + 1; j <= x.c; ++j) y(i, j) = x(i, j);
    return y;
}
template <class T>
Mat<T> strict_lower(const Mat<T>& x) {
    Mat<T> y(x.r, x.c);
    for (int i = 1; i <= x.r; ++i)
        for (int j = 1; j < i && j <= x.c; ++j) y(i, j) = x(i, j);
    return y;
}
template <class T>
Mat<T> diag_part(const Mat<T>& x) {
    Mat<T> y(x.r, x.c);
    for (int i = 1; i <= std::min(x.r, x.c); ++i) y(i, i) = x(i, i);
    return y;
}

// X = X_+ X_{0,-}: unipotent upper times lower (with diagonal)
template <class T>
std::pair<Mat<T>, Mat<T>> gauss_factorize(const Mat<T>& x) {
    if (!x.square()) throw std::invalid_argument("gauss factorization of non-square matrix");
    int n = x.r;
    Mat<T> up = identity<T>(n), lo(n, n);
    // eliminate from the bottom-right corner upwards
    Mat<T> a = x;
    for (int k = n; k >= 1; --k) {
        if (is_zero(a(k, k)))
            throw Singular("trailing principal minor vanishes at index " + std::to_string(k));
        for (int i = 1; i < k; ++i) {
            T f = a(i, k) / a(k, k);
            up(i, k) = f;
            if (is_null(f)) continue;
            for (int j = 1; j <= k; ++j) a(i, j) -= f * a(k, j);
        }
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j) lo(i, j) = a(i, j);
    return {up, lo};
}

inline bool is_strictly_triangular(const MatQ& x) {
    bool up = true, lo = true;
    for (int i = 1; i <= x.r; ++i)
        for (int j = 1; j <= x.c; ++j) {
            if (sgn(x(i, j)) == 0) continue;
            if (j <= i) up = false;
            if (j >= i) lo = false;
        }
    return up || lo;
}

template <class T>
Mat<T> nilpotent_exp(const Mat<T>& x) {
    if (!is_strictly_triangular(value(x))) throw std::domain_error("exp: argument not strictly triangular");
    int n = x.r;
    Mat<T> s = identity<T>(n), term = identity<T>(n);
    for (int k = 1; k < n; ++k) {
        term = scale(T(Q(1, k)), term * x);
        s = s + term;
    }
    return s;
}

template <class T>
Mat<T> nilpotent_log(const Mat<T>& b) {
    int n = b.r;
    Mat<T> x = b - identity<T>(n);
    if (!is_strictly_triangular(value(x))) throw std::domain_error("log: argument not unipotent triangular");
    Mat<T> s(n, n), pw = identity<T>(n);
    for (int k = 1; k < n; ++k) {
        pw = pw * x;
        s = s + scale(T(Q(k % 2 ? 1 : -1, k)), pw);
    }
    return s;
}

// gamma(A) = S A Sbar shifts entries down-right, gamma*(A) up-left
template <class T>
Mat<T> gamma(const Mat<T>& x) {
    Mat<T> y(x.r, x.c);
    for (int i = 2; i <= x.r; ++i)
        for (int j = 2; j <= x.c; ++j) y(i, j) = x(i - 1, j - 1);
    return y;
}
template <class T>
Mat<T> gamma_star(const Mat<T>& x) {
    Mat<T> y(x.r, x.c);
    for (int i = 1; i < x.r; ++i)
        for (int j = 1; j < x.c; ++j) y(i, j) = x(i + 1, j + 1);
    return y;
}

// group lift of gamma on unipotent triangular matrices
template <class T>
Mat<T> gamma_group(const Mat<T>& b) { return nilpotent_exp(gamma(nilpotent_log(b))); }

}  // namespace gcn
