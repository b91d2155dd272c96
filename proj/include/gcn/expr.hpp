#pragma once
// expression DAG over matrix-entry atoms, re-evaluable at any point

#include "core.hpp"

#include <functional>
#include <memory>
#include <string>
#include <unordered_map>

namespace gcn {

struct Node;
using Expr = std::shared_ptr<const Node>;

// degree bound of a rational function as (numerator, denominator)
struct Degree {
    int num = 0, den = 0;
    int total() const { return num + den; }
};

struct Node {
    enum Kind { Leaf, Const, Add, Sub, Mul, Div, Pow, Neg };
    Kind kind = Const;
    std::string name;
    Q c;        // Const
    long e = 0; // Pow
    std::vector<Expr> kids;
    std::function<Q(const MatQ&)> fq;
    std::function<Dual(const MatD&)> fd;
    Degree deg;
    bool polynomial = true;  // known to have constant denominator
};

// wrap a generic callable f(const Mat<T>&) -> T
template <class F>
Expr leaf(std::string name, Degree d, F f, bool polynomial = true) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Leaf;
    n->name = std::move(name);
    n->fq = [f](const MatQ& x) -> Q { return f(x); };
    n->fd = [f](const MatD& x) -> Dual { return f(x); };
    n->deg = d;
    n->polynomial = polynomial;
    return n;
}

inline Expr constant(const Q& c) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Const;
    n->c = c;
    n->name = c.get_str();
    return n;
}

inline Expr entry(int i, int j) {
    return leaf("x" + std::to_string(i) + "_" + std::to_string(j), {1, 0},
                [i, j](const auto& x) { return x(i, j); });
}

inline Expr binop(Node::Kind k, Expr a, Expr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    const char* op = k == Node::Add ? "+" : k == Node::Sub ? "-" : k == Node::Mul ? "*" : "/";
    n->name = "(" + a->name + op + b->name + ")";
    const Degree &x = a->deg, &y = b->deg;
    switch (k) {
        case Node::Add:
        case Node::Sub:
            n->deg = {std::max(x.num + y.den, y.num + x.den), x.den + y.den};
            n->polynomial = a->polynomial && b->polynomial;
            if (n->polynomial) n->deg = {std::max(x.num, y.num), 0};
            break;
        case Node::Mul:
            n->deg = {x.num + y.num, x.den + y.den};
            n->polynomial = a->polynomial && b->polynomial;
            break;
        default:
            n->deg = {x.num + y.den, x.den + y.num};
            n->polynomial = a->polynomial && b->kind == Node::Const;
            break;
    }
    n->kids = {std::move(a), std::move(b)};
    return n;
}

inline Expr operator+(Expr a, Expr b) { return binop(Node::Add, std::move(a), std::move(b)); }
inline Expr operator-(Expr a, Expr b) { return binop(Node::Sub, std::move(a), std::move(b)); }
inline Expr operator*(Expr a, Expr b) { return binop(Node::Mul, std::move(a), std::move(b)); }
inline Expr operator/(Expr a, Expr b) { return binop(Node::Div, std::move(a), std::move(b)); }
inline Expr operator-(Expr a) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Neg;
    n->name = "-" + a->name;
    n->deg = a->deg;
    n->polynomial = a->polynomial;
    n->kids = {std::move(a)};
    return n;
}
inline Expr pow(Expr a, long e) {
    if (e == 0) return constant(1);
    if (e == 1) return a;
    auto n = std::make_shared<Node>();
    n->kind = Node::Pow;
    n->e = e;
    n->name = a->name + "^" + std::to_string(e);
    long ae = e < 0 ? -e : e;
    n->deg = e > 0 ? Degree{int(a->deg.num * ae), int(a->deg.den * ae)}
                   : Degree{int(a->deg.den * ae), int(a->deg.num * ae)};
    n->polynomial = a->polynomial && e > 0;
    n->kids = {std::move(a)};
    return n;
}
inline Expr named(Expr a, std::string nm) {
    // renaming wrapper; keeps the DAG shared
    auto n = std::make_shared<Node>(*a);
    n->name = std::move(nm);
    return n;
}

// memoized evaluation, one cache per point
template <class T>
struct Evaluator {
    const Mat<T>& x;
    std::unordered_map<const Node*, std::pair<Expr, T>> memo;  // holds e so the key stays valid
    explicit Evaluator(const Mat<T>& pt) : x(pt) {}

    T operator()(const Expr& e) {
        auto it = memo.find(e.get());
        if (it != memo.end()) return it->second.second;
        T v = compute(*e);
        memo.emplace(e.get(), std::pair<Expr, T>{e, v});
        return v;
    }

  private:
    T compute(const Node& n) {
        switch (n.kind) {
            case Node::Const: return T(n.c);
            case Node::Leaf:
                if constexpr (std::is_same_v<T, Q>) return n.fq(x);
                else return n.fd(x);
            case Node::Add: return (*this)(n.kids[0]) + (*this)(n.kids[1]);
            case Node::Sub: return (*this)(n.kids[0]) - (*this)(n.kids[1]);
            case Node::Mul: return (*this)(n.kids[0]) * (*this)(n.kids[1]);
            case Node::Div: return qdiv((*this)(n.kids[0]), (*this)(n.kids[1]));
            case Node::Neg: return -(*this)(n.kids[0]);
            case Node::Pow: return ipow((*this)(n.kids[0]), n.e);
        }
        return T(0);
    }
};

template <class T>
T eval(const Expr& e, const Mat<T>& x) {
    Evaluator<T> ev(x);
    return ev(e);
}

// value and gradient; nabla(i,j) = d f / d x_{ji}
struct Grad {
    Q value;
    MatQ nabla;
};

inline Grad grad(const Expr& f, const MatQ& x) {
    MatD d = atoms(x);
    Dual v = eval(f, d);
    Grad g{v.v, MatQ(x.c, x.r)};
    for (int i = 1; i <= x.r; ++i)
        for (int j = 1; j <= x.c; ++j) g.nabla(j, i) = v.partial(std::size_t(i - 1) * x.c + (j - 1));
    return g;
}

}  // namespace gcn
