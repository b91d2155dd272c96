#include "gcn/verify.hpp"

#include <doctest.h>

using namespace gcn;

namespace {
MatQ point(int n, const char* job) {
    Sampler s{stream(0, job)};
    for (;;) {
        MatQ x = s.matrix(n, n);
        bool ok = true;
        for (int i = 1; i <= n; ++i) ok &= sgn(x(i, 1)) != 0 && sgn(x(1, i)) != 0;
        if (ok && sgn(det(x)) != 0) return x;
    }
}
}  // namespace

TEST_CASE("H_n steps and the boomerang checkpoint") {
    for (int n = 4; n <= 6; ++n) {
        auto r = run_W(n, point(n, "H"), true);
        CHECK(r.steps_ok);
        CHECK(r.checkpoint_ok);
        CHECK(r.position_of.size() == boomerang_positions(n).size());
    }
}

TEST_CASE("W_4 and W_5 end at the phi / k set") {
    for (int n : {4, 5}) {
        auto r = run_W(n, point(n, "W"));
        INFO("n = " << n);
        CHECK(r.steps_ok);
        CHECK(r.final_ok);
        for (auto& t : r.trace) CHECK(t.value_hash.size() > 0);
    }
}

TEST_CASE("W_4 reproduces the five exchange4 relations") {
    for (auto& l : check_exchange4(point(4, "e4"))) {
        CHECK(l.identity);
        CHECK(l.old_match);
        CHECK(l.new_match);
        CHECK(l.terms_match);
    }
}

TEST_CASE("mu on the Toda quiver") {
    for (int N = 3; N <= 5; ++N) CHECK(mu_check(N, RunConfig{0, 2}).status == Status::Pass);
}

TEST_CASE("H iteration and reconstruction") {
    CHECK(h_stable_check(4, RunConfig{0, 3}).status == Status::Pass);
    auto rs = suite_maps(4, RunConfig{0, 2});
    for (auto& r : rs) {
        INFO(r.name << ": " << r.detail);
        CHECK(r.status == Status::Pass);
    }
}

TEST_CASE("tail columns commute") {
    CHECK(tail_column_commutes(5, 4, point(5, "tail")));
}
