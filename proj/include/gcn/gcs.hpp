#pragma once
// quivers with multiplicities, extended seeds, generalized mutation

#include "expr.hpp"

#include <json.hpp>

#include <map>
#include <set>
#include <sstream>

namespace gcn {

struct Vertex {
    std::string label;
    int d = 1;
    bool frozen = false;
    bool isolated = false;
};

struct Quiver {
    std::vector<Vertex> v;
    std::vector<std::vector<int>> c;          // net arrows, c[i][j] = -c[j][i]
    std::set<std::pair<int, int>> opposite;   // pair slots (min,max); a slot shows one arrow each way while c is 0 there

    int size() const { return int(v.size()); }

    int add(std::string label, int d = 1, bool frozen = false, bool isolated = false) {
        if (index_.count(label)) throw std::invalid_argument("duplicate vertex " + label);
        int id = size();
        v.push_back({label, d, frozen, isolated});
        for (auto& row : c) row.push_back(0);
        c.emplace_back(v.size(), 0);
        index_[label] = id;
        return id;
    }
    int id(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw std::out_of_range("no vertex " + label);
        return it->second;
    }
    bool has(const std::string& label) const { return index_.count(label) > 0; }

    void arrow(int i, int j, int mult = 1) {
        if (v[i].isolated || v[j].isolated) throw std::invalid_argument("arrow at isolated vertex");
        c[i][j] += mult;
        c[j][i] -= mult;
    }
    void arrow(const std::string& a, const std::string& b, int mult = 1) { arrow(id(a), id(b), mult); }
    void add_opposite(int i, int j) { opposite.insert({std::min(i, j), std::max(i, j)}); }
    bool is_opposite(int i, int j) const {
        return c[i][j] == 0 && opposite.count({std::min(i, j), std::max(i, j)}) > 0;
    }

    // number of arrows i -> j, opposite pairs included
    int arrows(int i, int j) const { return std::max(c[i][j], 0) + (is_opposite(i, j) ? 1 : 0); }

    bool mutable_at(int k) const { return !v[k].frozen; }

    bool operator==(const Quiver& o) const {
        if (size() != o.size() || opposite != o.opposite || c != o.c) return false;
        for (int i = 0; i < size(); ++i)
            if (v[i].label != o.v[i].label || v[i].d != o.v[i].d || v[i].frozen != o.v[i].frozen) return false;
        return true;
    }

    const std::map<std::string, int>& labels() const { return index_; }

  private:
    std::map<std::string, int> index_;
};

struct FrozenAtMutation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline Quiver mutate_quiver(const Quiver& q, int k) {
    if (q.v[k].frozen) throw FrozenAtMutation("mutation at frozen vertex " + q.v[k].label);
    Quiver r = q;
    int n = q.size();
    std::vector<std::vector<int>> added(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        int a = q.arrows(i, k);
        if (a == 0 || i == k) continue;
        for (int j = 0; j < n; ++j) {
            int b = q.arrows(k, j);
            if (b == 0 || j == k || j == i) continue;
            bool fi = q.v[i].frozen, fj = q.v[j].frozen;
            if (fi && fj) continue;
            int w = !fi && !fj ? q.v[k].d : fi ? q.v[j].d : q.v[i].d;
            added[i][j] += a * b * w;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (added[i][j]) {
                r.c[i][j] += added[i][j];
                r.c[j][i] -= added[i][j];
            }
    for (int i = 0; i < n; ++i) {
        if (i == k) continue;
        r.c[i][k] = -q.c[i][k];
        r.c[k][i] = -q.c[k][i];
    }
    return r;
}

struct Seed {
    Quiver q;
    std::vector<Expr> x;                       // per vertex
    std::map<int, std::vector<Expr>> strings;  // special vertices, length d+1
};

inline Expr monomial_(std::vector<std::pair<Expr, long>> f) {
    Expr r;
    for (auto& [e, p] : f) {
        if (p == 0) continue;
        Expr t = pow(e, p);
        r = r ? r * t : t;
    }
    return r ? r : constant(1);
}

// the r-th term of the generalized exchange relation at k (without p_kr)
inline Expr exchange_term(const Seed& s, int k, int r) {
    const Quiver& q = s.q;
    int d = q.v[k].d;
    std::vector<std::pair<Expr, long>> f;
    for (int i = 0; i < q.size(); ++i) {
        if (i == k) continue;
        int out = q.arrows(k, i), in = q.arrows(i, k);
        if (!out && !in) continue;
        if (!q.v[i].frozen) {
            f.push_back({s.x[i], long(r) * out + long(d - r) * in});
        } else {
            f.push_back({s.x[i], (long(r) * out) / d + (long(d - r) * in) / d});
        }
    }
    return monomial_(f);
}

inline Expr exchange_rhs(const Seed& s, int k) {
    int d = s.q.v[k].d;
    Expr sum;
    auto it = s.strings.find(k);
    for (int r = 0; r <= d; ++r) {
        Expr t = exchange_term(s, k, r);
        if (it != s.strings.end()) {
            const Expr& p = it->second.at(r);
            if (!(p->kind == Node::Const && p->c == 1)) t = p * t;
        } else if (d > 1) {
            throw std::invalid_argument("special vertex without string " + s.q.v[k].label);
        }
        sum = sum ? sum + t : t;
    }
    return sum;
}

inline Seed mutate_seed(const Seed& s, int k) {
    Seed r;
    r.q = mutate_quiver(s.q, k);
    r.x = s.x;
    r.strings = s.strings;
    r.x[k] = named(exchange_rhs(s, k) / s.x[k], s.q.v[k].label + "'");
    auto it = r.strings.find(k);
    if (it != r.strings.end()) std::reverse(it->second.begin(), it->second.end());
    return r;
}

// exponent vector of y_k: ratio of the last and first exchange terms
inline std::vector<long> y_exponents(const Quiver& q, int k) {
    std::vector<long> e(q.size(), 0);
    int d = q.v[k].d;
    for (int i = 0; i < q.size(); ++i) {
        if (i == k) continue;
        e[i] = (long(q.arrows(k, i)) - q.arrows(i, k)) * (q.v[i].frozen ? 1 : d);
    }
    return e;
}

inline Expr y_variable(const Seed& s, int k) {
    auto e = y_exponents(s.q, k);
    std::vector<std::pair<Expr, long>> f;
    for (int i = 0; i < s.q.size(); ++i)
        if (e[i]) f.push_back({s.x[i], e[i]});
    return named(monomial_(f), "y" + s.q.v[k].label);
}

// delta_pk for one distinguished factor p with exponents lambda per vertex
inline long discrepancy(const std::vector<long>& lambda, const Quiver& q, int k) {
    long s = 0;
    int d = q.v[k].d;
    for (int i = 0; i < q.size(); ++i) {
        if (i == k) continue;
        long w = (d > 1 && !q.v[i].frozen) ? d : 1;
        s += w * (long(q.arrows(i, k)) - q.arrows(k, i)) * lambda[i];
    }
    return s;
}

// ---------------------------------------------------------------- export

inline nlohmann::json to_json(const Quiver& q) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (auto& v : q.v)
        j["vertices"].push_back({{"label", v.label}, {"d", v.d}, {"frozen", v.frozen}, {"isolated", v.isolated}});
    j["arrows"] = nlohmann::json::array();
    for (int a = 0; a < q.size(); ++a)
        for (int b = 0; b < q.size(); ++b)
            if (q.c[a][b] > 0) j["arrows"].push_back({{"i", q.v[a].label}, {"j", q.v[b].label}, {"mult", q.c[a][b]}});
    j["opposite_pairs"] = nlohmann::json::array();
    for (auto& [a, b] : q.opposite)
        if (q.is_opposite(a, b)) j["opposite_pairs"].push_back({q.v[a].label, q.v[b].label});
    return j;
}

inline nlohmann::json to_json(const Seed& s) {
    nlohmann::json j = to_json(s.q);
    for (int i = 0; i < s.q.size(); ++i) j["vertices"][i]["variable"] = s.x[i]->name;
    j["strings"] = nlohmann::json::array();
    for (auto& [k, str] : s.strings) {
        nlohmann::json cs = nlohmann::json::array();
        for (auto& p : str) cs.push_back(p->name);
        j["strings"].push_back({{"vertex", s.q.v[k].label}, {"coefficients", cs}});
    }
    return j;
}

inline std::string dot_escape(const std::string& s) {
    std::string r;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') r += '\\';
        r += ch;
    }
    return r;
}

inline std::string to_dot(const Quiver& q, const std::string& name, const std::vector<std::string>& vars = {}) {
    std::ostringstream o;
    o << "digraph \"" << dot_escape(name) << "\" {\n";
    for (int i = 0; i < q.size(); ++i) {
        const auto& v = q.v[i];
        std::string lab = dot_escape(v.label);
        if (v.d > 1) lab += " [d=" + std::to_string(v.d) + "]";
        if (i < int(vars.size()) && !vars[i].empty()) lab += "\\n" + dot_escape(vars[i]);
        o << "  v" << i << " [label=\"" << lab << "\"";
        if (v.frozen) o << ", shape=box";
        if (v.isolated) o << ", style=dashed";
        o << "];\n";
    }
    for (int a = 0; a < q.size(); ++a)
        for (int b = 0; b < q.size(); ++b)
            if (q.c[a][b] > 0) {
                o << "  v" << a << " -> v" << b;
                if (q.c[a][b] > 1) o << " [label=\"" << q.c[a][b] << "\"]";
                o << ";\n";
            }
    for (auto& [a, b] : q.opposite)
        if (q.is_opposite(a, b)) o << "  v" << a << " -> v" << b << " [dir=both, style=bold];\n";
    o << "}\n";
    return o.str();
}

}  // namespace gcn
