#pragma once
// block matrices assembled from rows of X; every entry is 0 or some x_ij

#include "core.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace gcn {

using Rows = std::vector<int>;

inline Rows one_cup(const Rows& r) { return cat({1}, r); }
inline Rows cup_n(const Rows& r, int n) { return cat(r, {n}); }
inline Rows shift_up(const Rows& r) {  // gamma(J) = {j+1}
    Rows s;
    for (int j : r) s.push_back(j + 1);
    return s;
}

// G(I_1..I_p): block l has l-1 leading zero columns, then X_{I_l}, then p-l zeros
template <class T>
Mat<T> build_G(const std::vector<Rows>& blocks, const Mat<T>& x) {
    int n = x.r, p = int(blocks.size());
    int h = 0;
    for (auto& I : blocks) h += int(I.size());
    Mat<T> g(h, n + p - 1);
    int row = 1;
    for (int l = 1; l <= p; ++l)
        for (int i : blocks[l - 1]) {
            if (i < 1 || i > n) throw std::out_of_range("row selector outside [1,n]");
            for (int j = 1; j <= n; ++j) g(row, l - 1 + j) = x(i, j);
            ++row;
        }
    return g;
}

template <class T>
Mat<T> build_Gij(const Mat<T>& x, int i, int j) {
    int n = x.r;
    if (!(2 <= j && j <= i && i <= n - 1)) throw std::out_of_range("G_ij index range");
    std::vector<Rows> blocks(j - 2, Rows{1, n});
    blocks.push_back(one_cup(range(n + j - i, n)));
    blocks.push_back(one_cup(range(i + 1, n)));
    return build_G(blocks, x);
}

template <class T>
Mat<T> build_phi_matrix(const Mat<T>& x, int k, int l) {
    int n = x.r;
    if (k < 1 || l < 1 || k + l > n - 1) throw std::out_of_range("Phi_kl index range");
    int N = n - k - l, sz = N * (n + 1);
    Mat<T> m(sz, sz);
    for (int i = 1; i <= N; ++i) {
        Rows I = (i == N) ? range(l + 1, n - 1) : range(2, n - 1);
        Rows J = (i == N) ? range(k + 1, n - 1) : (i == N - 1) ? range(l + 1, n - 1) : range(2, n - 1);
        Rows t2 = cup_n(I, n), t3 = one_cup(shift_up(J));
        int row = (i - 1) * n + 1, col = (i - 1) * (n + 1);
        for (int a : t2) {
            for (int j = 1; j <= n; ++j) m(row, col + j) = x(a, j);
            ++row;
        }
        for (int a : t3) {
            for (int j = 1; j <= n; ++j) m(row, col + 1 + j) = x(a, j);
            ++row;
        }
    }
    return m;
}

// periodic staircase blocks, size n+1
template <class T>
std::pair<Mat<T>, Mat<T>> build_AB(const Mat<T>& x) {
    int n = x.r;
    Mat<T> A(n + 1, n + 1), B(n + 1, n + 1);
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n - 1; ++j) A(i, j + 2) = x(i, j);
        B(i, 1) = x(i, n);
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) B(i + 1, j + 1) = x(i, j);
    return {A, B};
}

template <class T>
Mat<T> build_F(const Mat<T>& x) {
    int n = x.r, N = 2 * n - 1;
    Mat<T> f(N, N);
    for (int j = 1; j <= n; ++j) f(1, j) = x(n, j);
    for (int s = 1; s <= n - 1; ++s)
        for (int j = 1; j <= n; ++j) {
            f(2 * s, s + j) = x(1, j);
            f(2 * s + 1, s + j) = x(n, j);
        }
    return f;
}

// trailing square of G([i,n],[n+j-i,n])
template <class T>
Mat<T> build_Kij(const Mat<T>& x, int i, int j) {
    int n = x.r;
    if (!(1 <= j && j < i && i <= n) || (i == n && j == 1)) throw std::out_of_range("K_ij index range");
    Mat<T> g = build_G<T>({range(i, n), range(n + j - i, n)}, x);
    int s = n - j + 2;
    return sub(g, range(1, s), range(g.c - s + 1, g.c));
}

// ---------------------------------------------------------- bracket words

// [k1 .. kp]: every block is row 1 plus the last k-1 rows
// a barred block (written k') is the last k rows instead
struct Word {
    std::vector<int> k;
    std::vector<bool> b;  // per block

    bool bar() const { return !b.empty() && b[0]; }
    bool barred(std::size_t i) const { return i < b.size() && b[i]; }
    int weight() const {
        int s = 0;
        for (int v : k) s += v;
        return s;
    }
    std::string str() const {
        std::ostringstream o;
        o << "[";
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) o << " ";
            o << k[i];
            if (barred(i)) o << "'";
        }
        o << "]";
        return o.str();
    }
    bool operator==(const Word& o) const {
        if (k != o.k) return false;
        for (std::size_t i = 0; i < k.size(); ++i)
            if (barred(i) != o.barred(i)) return false;
        return true;
    }
};

inline Word word(std::vector<int> k) { return Word{std::move(k), {}}; }
inline Word barword(std::vector<int> k) { return Word{std::move(k), {true}}; }
// both blocks barred: k_ij = [n-i+1' i-j+1']
inline Word kword(int a, int c) { return Word{{a, c}, {true, true}}; }

// 2^q followed by the rest
inline std::vector<int> twos(int q, std::vector<int> rest = {}) {
    std::vector<int> v(std::max(q, 0), 2);
    return cat(v, rest);
}

inline bool word_valid(const Word& w, int n) {
    if (w.k.empty()) return false;
    for (int v : w.k)
        if (v < 1 || v > n) return false;
    return n + int(w.k.size()) - 1 >= w.weight();
}

inline std::vector<Rows> word_blocks(const Word& w, int n) {
    std::vector<Rows> blocks;
    for (std::size_t i = 0; i < w.k.size(); ++i) {
        if (w.barred(i)) blocks.push_back(range(n - w.k[i] + 1, n));
        else blocks.push_back(one_cup(range(n - w.k[i] + 2, n)));
    }
    return blocks;
}

template <class T>
Mat<T> bracket_matrix(const Word& w, const Mat<T>& x) {
    int n = x.r;
    if (!word_valid(w, n)) throw std::invalid_argument("malformed bracket word " + w.str());
    Mat<T> g = build_G(word_blocks(w, n), x);
    int s = w.weight();
    return sub(g, range(1, s), range(g.c - s + 1, g.c));
}

inline Word with_head(std::vector<int> head, bool headbar, const Word& w, std::size_t drop) {
    Word r;
    r.k = std::move(head);
    r.b.assign(r.k.size(), false);
    if (!r.b.empty()) r.b[0] = headbar;
    for (std::size_t i = drop; i < w.k.size(); ++i) {
        r.k.push_back(w.k[i]);
        r.b.push_back(w.barred(i));
    }
    return r;
}

inline Word promote(const Word& w) {
    if (!w.bar()) return with_head({2}, false, w, 0);
    if (w.k[0] == 1) return with_head({1, 2}, true, w, 1);
    return with_head({1, w.k[0] + 1}, true, w, 1);
}

inline bool demotable(const Word& w) {
    if (w.k.size() < 2) return false;
    return (!w.bar() && w.k[0] == 2) || (w.bar() && w.k[0] == 1);
}

inline Word demote(const Word& w) {
    if (!demotable(w)) throw std::invalid_argument("word cannot be demoted " + w.str());
    if (!w.bar()) return with_head({1}, true, w, 1);
    return with_head({}, false, w, 1);
}

// symbolic dump: entries encoded as 10*i + j
inline MatQ label_matrix(int n) {
    MatQ x(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) x(i, j) = 10 * i + j;
    return x;
}

inline std::string dump_labels(const MatQ& m) {
    std::ostringstream o;
    for (int i = 1; i <= m.r; ++i) {
        for (int j = 1; j <= m.c; ++j) {
            if (j > 1) o << ' ';
            long v = m(i, j).get_num().get_si();
            if (v == 0) o << "0";
            else o << "x" << v / 10 << v % 10;
        }
        o << '\n';
    }
    return o.str();
}

}  // namespace gcn
