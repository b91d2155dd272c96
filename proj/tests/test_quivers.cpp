#include "gcn/verify.hpp"

#include <doctest.h>

using namespace gcn;

namespace {
int count(const Quiver& q, bool frozen, bool isolated) {
    int c = 0;
    for (auto& v : q.v) c += v.frozen == frozen && v.isolated == isolated;
    return c;
}
}  // namespace

TEST_CASE("dual quiver for m = 5: two triangles, (0,0) frozen, isolated c's") {
    Quiver q = dagger_quiver(5);
    int left = 0, right = 0;
    for (auto& v : q.v) {
        if (v.label[0] == '(' && v.label != "(0,0)") ++left;
        if (v.label[0] == '<') ++right;
    }
    CHECK(left == 10);
    CHECK(right == 10);
    CHECK(q.v[q.id("(0,0)")].frozen);
    int iso = 0;
    for (auto& v : q.v) iso += v.isolated;
    CHECK(iso == 4);
}

TEST_CASE("Q_n has A, B, C frozen and D mutable") {
    for (int n = 4; n <= 6; ++n) {
        Quiver q = main_quiver(n);
        for (auto f : {"A", "B", "C"}) CHECK(q.v[q.id(f)].frozen);
        CHECK_FALSE(q.v[q.id("D")].frozen);
        CHECK(q.v[q.id("(1,1)")].d == n - 1);
        CHECK(count(q, false, true) == 0);
    }
}

TEST_CASE("hat quiver: opposite pair between (1,1) and B") {
    Quiver q = hat_quiver(5);
    int a = q.id("(1,1)"), b = q.id("B");
    CHECK(q.is_opposite(a, b));
    CHECK(q.arrows(a, b) == 1);
    CHECK(q.arrows(b, a) == 1);
    CHECK_FALSE(main_quiver(5).is_opposite(a, b));
}

TEST_CASE("hat quiver mutation rules") {
    int n = 5;
    Quiver q = hat_quiver(n);
    int v11 = q.id("(1,1)"), B = q.id("B"), v21 = q.id("(2,1)"), v12 = q.id("(1,2)");
    Quiver p = mutate_quiver(q, v11);
    CHECK(p.is_opposite(v11, B));
    CHECK(p.c[B][v21] == 1);
    CHECK(p.c[v12][B] == 1);
    Quiver r = mutate_quiver(p, v21);
    CHECK_FALSE(r.is_opposite(v11, B));
    CHECK(r.c[B][v11] == n - 1);
}

TEST_CASE("quiver mutation is an involution") {
    for (int n = 4; n <= 6; ++n)
        for (bool hat : {false, true}) {
            Quiver q = hat ? hat_quiver(n) : main_quiver(n);
            for (int k = 0; k < q.size(); ++k)
                if (!q.v[k].frozen) CHECK(mutate_quiver(mutate_quiver(q, k), k) == q);
        }
}

TEST_CASE("mutation at a frozen vertex throws") {
    Quiver q = main_quiver(4);
    CHECK_THROWS_AS(mutate_quiver(q, q.id("B")), FrozenAtMutation);
}

TEST_CASE("dot and json exports mention every vertex") {
    Seed s = main_seed(4);
    auto js = to_json(s);
    CHECK(js["vertices"].size() == std::size_t(s.q.size()));
    std::string dot = to_dot(s.q, "Q4");
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("v" + std::to_string(s.q.size() - 1) + " [label") != std::string::npos);
}

TEST_CASE("trivial sign products at every mutable dual vertex") {
    for (int n = 4; n <= 6; ++n) CHECK(trivialsign_failures(n).empty());
}
