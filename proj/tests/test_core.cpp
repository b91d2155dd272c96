#include "gcn/verify.hpp"

#include <doctest.h>

using namespace gcn;

TEST_CASE("bareiss det against cofactor expansion") {
    MatQ a(3, 3);
    a.a = {2, -1, 0, 4, 3, 5, -2, 7, 1};
    // 2(3-35) + 1(4+10) + 0
    CHECK(det(a) == Q(-50));
    CHECK(inverse(a) * a == identity<Q>(3));
}

TEST_CASE("gauss factorization multiplies back") {
    Sampler s{stream(1, "gauss")};
    MatQ x = s.matrix(4, 4);
    auto [p, zm] = gauss_factorize(x);
    CHECK(p * zm == x);
    for (int i = 1; i <= 4; ++i) {
        CHECK(p(i, i) == 1);
        for (int j = 1; j < i; ++j) CHECK(p(i, j) == 0);
        for (int j = i + 1; j <= 4; ++j) CHECK(zm(i, j) == 0);
    }
}

TEST_CASE("fnv1a and job streams") {
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    auto a = stream(0, "x"), b = stream(0, "x"), c = stream(0, "y"), d = stream(1, "x");
    auto va = a();
    CHECK(va == b());
    CHECK(va != c());
    CHECK(va != d());
}

TEST_CASE("sampler stays in range") {
    Sampler s{stream(7, "range")};
    for (int i = 0; i < 2000; ++i) {
        Q v = s.coord();
        CHECK(v >= kLo);
        CHECK(v <= kHi);
    }
}

TEST_CASE("check: trivial identity passes and reports the bound") {
    RunConfig cfg{0, 5};
    auto r = check("zero", 4, 4, square(4), [](const MatQ&, Sampler&) { return expect_eq(Q(0), Q(0)); }, cfg);
    CHECK(r.status == Status::Pass);
    CHECK(r.trials == 5);
    CHECK(r.bound == doctest::Approx(std::pow(4.0 / 199, 5)));
}

TEST_CASE("check: persistent singularity is inconclusive, not a failure") {
    auto r = check("always singular", 4, 1, square(4),
                   [](const MatQ&, Sampler&) -> Verdict { throw Singular("x"); }, RunConfig{});
    CHECK(r.status == Status::Inconclusive);
    CHECK(r.resamples == kMaxResample);
}

TEST_CASE("check: occasional singularity is resampled") {
    auto r = check("x11 odd", 4, 1, square(4), [](const MatQ& x, Sampler&) -> Verdict {
        if (x(1, 1).get_num() % 2 == 0) throw Singular("even");
        return std::nullopt;
    }, RunConfig{});
    CHECK(r.status == Status::Pass);
    CHECK(r.resamples > 0);
}

TEST_CASE("check: a false identity fails and dumps the point") {
    auto r = check("x11 = x12", 4, 1, square(4),
                   [](const MatQ& x, Sampler&) { return expect_eq(x(1, 1), x(1, 2)); }, RunConfig{});
    CHECK(r.status == Status::Fail);
    CHECK(r.point.size() == 4);
    CHECK(to_json(r)["status"] == "fail");
}

TEST_CASE("reports are reproducible") {
    auto a = suite_row_brackets(4, RunConfig{3, 2});
    auto b = suite_row_brackets(4, RunConfig{3, 2});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_json(a[i]).dump() == to_json(b[i]).dump());
}
