#include "gcn/verify.hpp"

#include <doctest.h>

using namespace gcn;

namespace {
const RunConfig cfg{11, 3};

void all_pass(const std::vector<Report>& rs) {
    for (auto& r : rs) {
        INFO(r.name << " n=" << r.n << ": " << r.detail);
        CHECK(r.status == Status::Pass);
    }
}
}  // namespace

TEST_CASE("dexchange at n = 4, and its sign flip is caught") {
    CHECK(dexchange_check(4, cfg).status == Status::Pass);
    CHECK(dexchange_check(4, cfg, -1).status == Status::Fail);
}

TEST_CASE("badphi (1,1) at n = 4 by hand") {
    Sampler s{stream(5, "badphi")};
    MatQ x = s.matrix(4, 4);
    Q lhs = phi_dual(psi_prime(x), 1, 1);
    Q rhs = sign_phi(4, 1, 1) * phi_X(x, 1, 1) / ipow(Q(x(1, 4) * det(x)), 2);
    CHECK(lhs == rhs);
}

TEST_CASE("theorem expressions, n = 4") { all_pass(suite_theorem_expressions(4, cfg)); }
TEST_CASE("exchange relations, n = 4") { all_pass(suite_exchange(4, cfg)); }
TEST_CASE("Pluecker and DJ family, n = 4") { all_pass(suite_plucker_dj(4, cfg)); }
TEST_CASE("row brackets, n = 4") { all_pass(suite_row_brackets(4, cfg)); }
TEST_CASE("properties, n = 4") { all_pass(suite_properties(4, cfg)); }
TEST_CASE("golden layouts and signs") { all_pass(suite_golden()); }

TEST_CASE("closed-form phi weight is off by (n-1)s(s-1)/2") {
    // measured t-weight of phi_kl against both forms
    for (int n = 4; n <= 6; ++n) {
        Sampler s{stream(2, "w")};
        MatQ x = s.matrix(n, n);
        for (int k = 1; k <= n - 2; ++k)
            for (int l = 1; k + l <= n - 1; ++l) {
                Q v = phi_X(x, k, l);
                Q r = phi_X(torus_act(x, 2, 1), k, l) / v;
                auto closed = *weights_for(n, L(k, l));
                auto summed = *weights_for(n, L(k, l), true);
                int s_ = n - k - l;
                CHECK(r == ipow(Q(2), summed.xi.get_num().get_si()));
                CHECK(summed.xi - closed.xi == frac((n - 1) * s_ * (s_ - 1), 2));
                CHECK(closed.xibar == summed.xibar);
            }
    }
}

TEST_CASE("other weights match the closed forms") {
    auto rs = suite_homogeneity(4, cfg);
    for (auto& r : rs) {
        bool phi_closed = r.name.rfind("weights of (", 0) == 0;
        if (phi_closed) continue;
        INFO(r.name << ": " << r.detail);
        CHECK(r.status == Status::Pass);
    }
}
