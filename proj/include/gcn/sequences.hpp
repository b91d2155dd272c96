#pragma once
// universal numbering, the mutation plans H_n / T_n / W_n, and mu on the Toda side

#include "quivers.hpp"

#include <optional>

namespace gcn {

// ---------------------------------------------------------------- numbering

// universal number -> label in Q_n
inline std::map<int, std::string> universal_numbering(int n) {
    std::map<int, std::string> u;
    u[0] = "D";
    int next = 1;
    for (int k = 1; k <= n - 3; ++k) {
        int j = n - 1 - k;
        for (int i = j; i <= n - 1; ++i) u[next++] = R(i, j);
    }
    u[next++] = "B";
    u[next++] = "C";
    for (int k = 1; k <= n - 2; ++k) u[next++] = L(k, n - 1 - k);
    for (int k = 1; k <= n - 2; ++k) {
        u[-2 * k + 1] = T(n - k, '-');
        u[-2 * k] = T(n - 1 - k, '+');
    }
    u[-2 * n + 3] = T(1, '-');
    return u;
}

inline int first_frozen_number(int n) { return n * (n - 3) / 2 + 1; }

inline bool universal_frozen(int n, int num) {
    return num == -2 * n + 3 || num >= first_frozen_number(n);
}

// Q_n^0 as its own quiver, vertices labelled by universal number
inline Quiver q0_quiver(int n) {
    Quiver full = main_quiver(n);
    auto u = universal_numbering(n);
    Quiver q;
    std::vector<int> src;
    for (auto& [num, lab] : u) {
        q.add(std::to_string(num), 1, universal_frozen(n, num));
        src.push_back(full.id(lab));
    }
    for (int a = 0; a < q.size(); ++a)
        for (int b = 0; b < q.size(); ++b)
            if (full.c[src[a]][src[b]] > 0) q.arrow(a, b, full.c[src[a]][src[b]]);
    return q;
}

// ---------------------------------------------------------------- H_n

struct Step {
    int vertex;          // universal number, or position code for the tail
    std::string segment; // P I R S T
    std::string relation;
    Word predicted;
};

struct HPlan {
    std::vector<Step> steps;
    std::size_t rs_begin = 0;  // where R_n S_n starts
};

inline std::vector<int> root_layer(int n) {
    std::vector<int> r;
    int k = n - 3, off = (k - 1) * (k + 2) / 2;
    for (int t = 1; t <= k + 1; ++t) r.push_back(off + t);
    return r;
}

inline HPlan build_H(int n) {
    if (n < 4) throw std::invalid_argument("H_n needs n >= 4");
    HPlan h;
    if (n == 4) {
        h.steps = {{0, "P", "promo4pluck", barword({1, 3})},
                   {-1, "I", "promo4pluck", word({3})},
                   {1, "R", "DJ", barword({2, 2})},
                   {2, "R", "4pluck", barword({3})},
                   {-2, "S", "4pluck", barword({2})}};
        h.rs_begin = 2;
        return h;
    }
    HPlan prev = build_H(n - 1);
    for (auto s : prev.steps) {
        s.predicted = promote(s.predicted);
        if (s.segment != "P") s.relation = "promoted " + s.relation;
        s.segment = "P";
        h.steps.push_back(s);
    }
    std::vector<Step> rs(prev.steps.begin() + prev.rs_begin, prev.steps.end());
    for (auto s : rs) {
        s.vertex -= 1;
        s.predicted = demote(promote(s.predicted));
        s.relation = "promoted+demoted " + s.relation;
        s.segment = "I";
        h.steps.push_back(s);
    }
    h.rs_begin = h.steps.size();
    auto root = root_layer(n);
    for (std::size_t t = 0; t < root.size(); ++t) {
        int j = int(t) + 3;
        if (j <= n - 1) h.steps.push_back({root[t], "R", "DJ", Word{{j - 1, n - j + 1}, {true}}});
        else h.steps.push_back({root[t], "R", "4pluck", barword({n - 1})});
    }
    std::size_t i_begin = h.rs_begin - rs.size();
    for (std::size_t t = 0; t < rs.size(); ++t) {
        Step s = h.steps[i_begin + t];
        s.vertex -= 1;
        s.predicted = rs[t].predicted;
        s.relation = rs[t].relation;
        s.segment = "S";
        h.steps.push_back(s);
    }
    return h;
}

inline std::vector<int> H_sequence(int n) {
    std::vector<int> r;
    for (auto& s : build_H(n).steps) r.push_back(s.vertex);
    return r;
}

// ---------------------------------------------------------------- Q_n^n

// |i,j| -> word attached after H_n; empty for positions that do not exist
inline std::optional<Word> boomerang_word(int n, int i, int j) {
    if (i < 1 || j < 1 || i + j > n + 2) return std::nullopt;
    if ((i == 1 && j <= 2) || (i == 2 && j == 2)) return std::nullopt;
    if (i == 1 && j == 3) return std::nullopt;  // C carries x_n1
    if (j == 1) return barword({n - i + 2});
    if (j == 2) return word({n - i + 2});
    return Word{{j - 2, n - i - j + 4}, {true}};
}

inline std::string pos(int i, int j) { return "|" + std::to_string(i) + "," + std::to_string(j) + "|"; }

inline std::vector<std::pair<int, int>> boomerang_positions(int n) {
    std::vector<std::pair<int, int>> r;
    for (int i = 1; i <= n + 1; ++i)
        for (int j = 1; i + j <= n + 2; ++j)
            if (boomerang_word(n, i, j) || (i == 1 && j == 3)) r.push_back({i, j});
    return r;
}

// arrows of Q_n^n as listed, on positions
inline std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> boomerang_arrows(int n) {
    std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> a;
    for (int i = 2; i <= n + 1; ++i)
        for (int j = 1; j <= n - i + 2; ++j)
            if (!(i == 2 && j == 2)) a.push_back({{i, j}, {i - 1, j + 1}});
    for (int i = 2; i <= n; ++i)
        for (int j = 2; j <= n - i + 2; ++j)
            if (!(i == 2 && j == 3)) a.push_back({{i, j}, {i, j - 1}});
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 2; j <= n - i + 1; ++j) a.push_back({{i, j}, {i + 1, j}});
    for (int k = n - 2; k >= 1; --k) {
        a.push_back({{n - k - 1, k + 3}, {n - k + 1, 1}});
        a.push_back({{n - k + 1, 1}, {n - k, k + 2}});
    }
    a.push_back({{n - 1, 3}, {n + 1, 1}});
    a.push_back({{n + 1, 1}, {1, n + 1}});
    return a;
}

// tail T_n on positions, columns right to left
struct TailStep {
    int i, j;
    std::string relation;
    Word before, after;
};

inline std::vector<TailStep> build_T(int n) {
    std::vector<TailStep> t;
    for (int i = n; i >= 2; --i)
        for (int j = (i == 2 ? 3 : 2); j <= n - i + 2; ++j) {
            TailStep s{i, j, "", *boomerang_word(n, i, j), {}};
            if (j == 2) {
                s.relation = "bar1DJ k2=" + std::to_string(n - i + 3);
                s.after = kword(1, n - i + 2);
            } else {
                s.relation = "barDJ k1=" + std::to_string(j - 1) + " k2=" + std::to_string(n - i - j + 5);
                s.after = kword(j - 1, n - i - j + 4);
            }
            t.push_back(s);
        }
    return t;
}

// ---------------------------------------------------------------- execution

struct TraceEntry {
    int index;
    std::string segment, vertex, relation, predicted;
    bool match;
    std::string value_hash;
};

inline std::string value_hash(const Q& q) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : q.get_str()) h = (h ^ c) * 1099511628211ull;
    std::ostringstream o;
    o << std::hex << h;
    return o.str();
}

struct WResult {
    std::vector<TraceEntry> trace;
    Seed seed;
    bool steps_ok = true;
    bool checkpoint_ok = true;    // variables after H_n
    bool arrows_ok = true;        // quiver after H_n against Q_n^n
    bool final_ok = true;         // final mutable set
    std::vector<std::string> notes;
    std::map<std::string, int> position_of;  // |i,j| -> vertex id after H_n
};

// find the vertex among `ids` whose value equals v
inline int locate(const std::vector<int>& ids, const std::vector<Q>& vals, const Q& v) {
    int hit = -1;
    for (std::size_t t = 0; t < ids.size(); ++t)
        if (vals[t] == v) {
            if (hit >= 0) return -2;
            hit = ids[t];
        }
    return hit;
}

inline WResult run_W(int n, const MatQ& X, bool head_only = false) {
    WResult r;
    Seed s = main_seed(n);
    auto u = universal_numbering(n);
    Evaluator<Q> ev(X);
    int idx = 0;
    for (auto& st : build_H(n).steps) {
        int k = s.q.id(u.at(st.vertex));
        s = mutate_seed(s, k);
        Q got = ev(s.x[k]);
        Q want = word_X(st.predicted, X);
        bool ok = got == want;
        r.steps_ok &= ok;
        r.trace.push_back({idx++, st.segment, std::to_string(st.vertex), st.relation, st.predicted.str(), ok,
                           value_hash(got)});
    }

    // place Q_n^0 vertices on the grid by value
    std::vector<int> ids;
    std::vector<Q> vals;
    for (auto& [num, lab] : u) {
        ids.push_back(s.q.id(lab));
        vals.push_back(ev(s.x[s.q.id(lab)]));
    }
    for (auto [i, j] : boomerang_positions(n)) {
        int v;
        if (i == 1 && j == 3) v = s.q.id("C");
        else v = locate(ids, vals, word_X(*boomerang_word(n, i, j), X));
        if (v < 0) {
            r.checkpoint_ok = false;
            r.notes.push_back("no unique vertex for " + pos(i, j));
            continue;
        }
        r.position_of[pos(i, j)] = v;
    }
    if (r.checkpoint_ok && int(r.position_of.size()) != int(u.size())) {
        r.checkpoint_ok = false;
        r.notes.push_back("position count mismatch");
    }
    if (r.checkpoint_ok) {
        // compare arrows with at least one end mutable in Q_n^0
        std::map<int, std::pair<int, int>> at;
        for (auto& [p, v] : r.position_of) {
            int i, j;
            std::sscanf(p.c_str(), "|%d,%d|", &i, &j);
            at[v] = {i, j};
        }
        std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> want;
        for (auto& a : boomerang_arrows(n)) want.insert(a);
        auto frozen0 = [&](int v) {
            for (auto& [num, lab] : u)
                if (s.q.id(lab) == v) return universal_frozen(n, num);
            return true;
        };
        for (auto& [a, pa] : at)
            for (auto& [b, pb] : at) {
                if (frozen0(a) && frozen0(b)) continue;
                int have = std::max(s.q.c[a][b], 0);
                int w = int(want.count({pa, pb}));
                if (have != w) {
                    r.arrows_ok = false;
                    r.notes.push_back("arrow " + pos(pa.first, pa.second) + "->" + pos(pb.first, pb.second) +
                                      " have " + std::to_string(have) + " listed " + std::to_string(w));
                }
            }
    }
    if (head_only || !r.checkpoint_ok) {
        r.seed = s;
        if (!head_only) r.final_ok = false;
        return r;
    }

    for (auto& t : build_T(n)) {
        int k = r.position_of.at(pos(t.i, t.j));
        bool before = ev(s.x[k]) == word_X(t.before, X);
        s = mutate_seed(s, k);
        Q got = ev(s.x[k]);
        bool ok = before && got == word_X(t.after, X);
        r.steps_ok &= ok;
        r.trace.push_back({idx++, "T", pos(t.i, t.j), t.relation, t.after.str(), ok, value_hash(got)});
    }

    // final mutable set of Q_n against phi_kl and k_ij
    std::vector<Q> want;
    for (int k = 1; k <= n - 2; ++k)
        for (int l = 1; k + l <= n - 1; ++l) want.push_back(ev(fn::phi(n, k, l)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= i; ++j)
            if (!(i == 1 && j == 1) && !(i == n && j == 1)) want.push_back(ev(fn::k(n, i, j)));
    std::vector<Q> have;
    for (int v = 0; v < s.q.size(); ++v)
        if (!s.q.v[v].frozen) have.push_back(ev(s.x[v]));
    auto key = [](const Q& a, const Q& b) { return cmp(a, b) < 0; };
    std::sort(want.begin(), want.end(), key);
    std::sort(have.begin(), have.end(), key);
    r.final_ok = want == have;
    if (!r.final_ok) r.notes.push_back("final mutable set differs from phi_kl and k_ij");
    r.seed = s;
    return r;
}

inline nlohmann::json to_json(const TraceEntry& t) {
    return {{"step", t.index},     {"segment", t.segment}, {"vertex", t.vertex},    {"relation", t.relation},
            {"predicted", t.predicted}, {"match", t.match}, {"value_hash", t.value_hash}};
}

// ---------------------------------------------------------------- n = 4 lines

// old * new = a1 * a2 + b1 * b2 at the listed vertex
struct ExchangeLine {
    int vertex;
    Word old_, new_, a1, a2, b1, b2;
};

inline std::vector<ExchangeLine> exchange4_lines() {
    auto w = [](std::vector<int> k) { return word(std::move(k)); };
    auto b = [](std::vector<int> k) { return barword(std::move(k)); };
    return {{0, w({2, 2, 2}), b({1, 3}), b({1, 2, 2}), w({2, 3}), w({2, 2}), b({1, 3, 2})},
            {-1, b({1, 2, 2}), w({3}), b({1, 3}), w({2, 2}), w({3, 2}), b({1, 2})},
            {1, w({2, 3}), b({2, 2}), b({1, 3}), w({3, 2}), w({2, 2}), b({2, 3})},
            {2, w({3, 2}), b({3}), b({2, 2}), w({4}), w({3}), b({3, 2})},
            {-2, w({2, 2}), b({2}), w({3}), b({1, 2}), b({2, 2}), w({2})}};
}

struct LineResult {
    int vertex;
    bool identity;   // the displayed relation holds
    bool old_match, new_match;
    bool terms_match;  // the two exchange monomials are the two displayed products
};

inline std::vector<LineResult> check_exchange4(const MatQ& X) {
    std::vector<LineResult> out;
    Seed s = main_seed(4);
    auto u = universal_numbering(4);
    Evaluator<Q> ev(X);
    for (auto& ln : exchange4_lines()) {
        int k = s.q.id(u.at(ln.vertex));
        Q o = word_X(ln.old_, X), nw = word_X(ln.new_, X);
        Q a = word_X(ln.a1, X) * word_X(ln.a2, X), b = word_X(ln.b1, X) * word_X(ln.b2, X);
        LineResult r{ln.vertex, o * nw == a + b, ev(s.x[k]) == o, false, false};
        Q t0 = ev(exchange_term(s, k, 0)), t1 = ev(exchange_term(s, k, 1));
        r.terms_match = (t0 == a && t1 == b) || (t0 == b && t1 == a);
        s = mutate_seed(s, k);
        r.new_match = ev(s.x[k]) == nw;
        out.push_back(r);
    }
    return out;
}

// mutations inside one tail column, run in both orders
inline bool tail_column_commutes(int n, int column, const MatQ& X) {
    WResult h = run_W(n, X, true);
    Seed s = h.seed;
    auto tail = build_T(n);
    std::vector<int> col;
    for (auto& t : tail) {
        int k = h.position_of.at(pos(t.i, t.j));
        if (t.i > column) s = mutate_seed(s, k);
        else if (t.i == column) col.push_back(k);
    }
    if (col.size() < 2) throw std::invalid_argument("column has fewer than two mutable vertices");
    Seed a = s, b = s;
    for (int k : col) a = mutate_seed(a, k);
    for (auto it = col.rbegin(); it != col.rend(); ++it) b = mutate_seed(b, *it);
    if (!(a.q == b.q)) return false;
    Evaluator<Q> ea(X), eb(X);
    for (int v = 0; v < a.q.size(); ++v)
        if (ea(a.x[v]) != eb(b.x[v])) return false;
    return true;
}

// ---------------------------------------------------------------- mu

struct MuResult {
    bool values_ok = true;       // (m,-) gives t_m^+ for m < N
    bool last_exact = true;      // (N,-) gives t_N^+/t_N^-
    bool last_signed = true;     // (N,-) gives (-1)^N t_N^+/t_N^-
    bool quiver_literal = true;  // restriction equals Q_N^T on the same labels
    bool quiver_swapped = true;  // restriction equals Q_N^T with (m,+) and (m,-) exchanged
    std::vector<std::string> notes;
    Seed seed;
};

// point: moment row hbar_0..hbar_{2N}
inline MuResult run_mu(int N, const MatQ& row) {
    MuResult r;
    Seed s = bar_toda_seed(N);
    Evaluator<Q> ev(row);
    auto h = moment_stream(row);
    for (int m = 1; m <= N; ++m) {
        int k = s.q.id(T(m, '-'));
        s = mutate_seed(s, k);
        Q got = ev(s.x[k]);
        if (m < N) {
            if (got != t_plus(h, m)) {
                r.values_ok = false;
                r.notes.push_back("(" + std::to_string(m) + ",-) is not t+" + std::to_string(m));
            }
        } else {
            Q want = t_plus(h, m) / t_minus(h, m);
            r.last_exact = got == want;
            r.last_signed = got == Q(sign_pow(N)) * want;
        }
    }
    Quiver t = toda_quiver(N);
    auto flip = [](std::string lab) {
        auto p = lab.find_first_of("+-");
        lab[p] = lab[p] == '+' ? '-' : '+';
        return lab;
    };
    for (int a = 0; a < t.size(); ++a)
        for (int b = 0; b < t.size(); ++b) {
            if (t.v[a].frozen && t.v[b].frozen) continue;
            const auto &la = t.v[a].label, &lb = t.v[b].label;
            if (s.q.c[s.q.id(la)][s.q.id(lb)] != t.c[a][b]) r.quiver_literal = false;
            if (s.q.c[s.q.id(flip(la))][s.q.id(flip(lb))] != t.c[a][b]) {
                r.quiver_swapped = false;
                r.notes.push_back("arrow " + flip(la) + "->" + flip(lb));
            }
        }
    r.seed = s;
    return r;
}

}  // namespace gcn
