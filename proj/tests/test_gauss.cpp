#include "doctest.h"

#include "varpi/gauss.hpp"

using namespace varpi;

TEST_CASE("digit sums and h indices") {
    // s(1) = 1, h_1 = f
    CHECK(digit_sum(1, 3, 9) == 1);
    CHECK(h_index(1, 3, 2, 9) == 2);
    // p=3, f=2: s(5) = 3 since 5 = 2 + 1*3
    CHECK(digit_sum(5, 3, 9) == 3);
    // p=3, f=2: h_3 = 1 since 3^{2-1} divides 3
    CHECK(h_index(3, 3, 2, 9) == 1);
    CHECK_THROWS_AS(digit_sum(0, 3, 9), domain_error);
    CHECK_THROWS_AS(digit_sum(9, 3, 9), domain_error);
    CHECK_THROWS_AS(h_index(-1, 3, 2, 9), domain_error);
}

TEST_CASE("gauss sums require cyclotomic data") {
    auto bare = Tower::make(3, {StepSpec::eisenstein({StepSpec::Coeff(-3), StepSpec::Coeff(1)})},
                            20);
    CHECK_THROWS_AS(GaussTable{*bare}, domain_error);
}

TEST_CASE("stickelberger valuations on all four grounds") {
    struct G {
        long long p;
        int f, e;
    };
    for (G g : {G{3, 1, 1}, G{5, 1, 1}, G{3, 2, 1}, G{3, 1, 2}}) {
        auto t = Tower::ground_with_gauss(g.p, g.f, g.e, 40);
        GaussTable tab(*t);
        for (long long i = 1; i <= t->q() - 1; ++i) {
            auto v = tab.gauss_sum(i).val();
            REQUIRE(v.certified);
            CHECK(v.v == Rational(digit_sum(i, g.p, t->q())) * Rational(g.e) /
                             Rational(g.p - 1));
        }
    }
}

TEST_CASE("prop 3.7 anchor: val g(chi_1) = e/(p-1) at (3,1,1)") {
    auto t = Tower::ground_with_gauss(3, 1, 1, 40);
    GaussTable tab(*t);
    CHECK(tab.gauss_sum(1).valuation() == Rational(1, 2));
}

TEST_CASE("trivial-character slot: plain sum is -1, table value is -q") {
    for (auto [p, f] : {std::pair<long long, int>{3, 1}, {5, 1}, {3, 2}}) {
        auto t = Tower::ground_with_gauss(p, f, 1, 40);
        GaussTable tab(*t);
        long long q = t->q();
        // direct summation oracle: the plain sum over kappa^* of Psi is -1
        CHECK(tab.gauss_sum_plain(q - 1).eq_to_precision(t->from_int(-1)));
        // the group-algebra normalization shifts it to -q, which is what the
        // Raynaud constants need (and what makes criterion 1 hold at i = q-1)
        CHECK(tab.gauss_sum(q - 1).eq_to_precision(t->from_int(-q)));
    }
}

TEST_CASE("p=5: val g(chi_2) = 1/2 = s(2)/4 by direct summation") {
    auto t = Tower::ground_with_gauss(5, 1, 1, 40);
    GaussTable tab(*t);
    CHECK(digit_sum(2, 5, 5) == 2);
    CHECK(tab.gauss_sum(2).valuation() == Rational(1, 2));
}

TEST_CASE("raynaud constants: w_{p^k} = 1 and val(w) = e") {
    struct G {
        long long p;
        int f, e;
    };
    for (G g : {G{3, 1, 1}, G{5, 1, 1}, G{3, 2, 1}, G{3, 1, 2}}) {
        auto t = Tower::ground_with_gauss(g.p, g.f, g.e, 40);
        GaussTable tab(*t);
        long long pk = 1;
        for (int k = 0; k < g.f; ++k) {
            CHECK(tab.raynaud_w(pk).eq_to_precision(t->one()));
            pk *= g.p;
        }
        CHECK(tab.raynaud_w_total().valuation() == Rational(g.e));
        CHECK(tab.unit_u().valuation() == Rational(0));
        // all w_i are units
        for (long long i = 1; i <= t->q() - 1; ++i)
            CHECK(tab.raynaud_w(i).valuation() == Rational(0));
    }
}

TEST_CASE("w_2 at p=5 computed two ways") {
    auto t = Tower::ground_with_gauss(5, 1, 1, 40);
    GaussTable tab(*t);
    // independent route: both gauss sums by explicit summation over kappa^*
    // using teichmuller lifts directly, then the Jacobi-style quotient
    Element g1 = t->zero(), g2 = t->zero();
    for (long long z = 1; z <= 4; ++z) {
        Element tz = t->teichmuller(z);
        // Psi(z) = zeta^z for f = 1
        Element psi = t->zeta_p()->pow(z);
        g1 = g1 + tz.inverse() * psi;
        g2 = g2 + tz.inverse().pow(2) * psi;
    }
    Element w2_direct = g1 * g1 * (t->from_int(4) * g2).inverse();
    CHECK(tab.raynaud_w(2).eq_to_precision(w2_direct));
}

TEST_CASE("gauss-sum norm: oracle equality of valuations and products") {
    for (auto [p, f] : {std::pair<long long, int>{3, 1}, {5, 1}, {3, 2}}) {
        auto t = Tower::ground_with_gauss(p, f, 1, 40);
        GaussTable tab(*t);
        for (long long i = 1; i <= t->q() - 1; ++i) {
            Element gi = tab.gauss_sum(i);
            Element gc = tab.gauss_sum_conjugate(i);
            Element prod = gi * gc;
            auto vg = gi.val(), vc = gc.val(), vp = prod.val();
            if (!vp.certified) continue; // conjugate can cancel at i = q-1
            CHECK(vp.v == vg.v + vc.v);
        }
        // for nontrivial characters the product is chi(-1) q
        for (long long i = 1; i < t->q() - 1; ++i) {
            Element prod = tab.gauss_sum_plain(i) * tab.gauss_sum_conjugate(i);
            CHECK(prod.valuation() == Rational(t->e() * t->f()));
        }
    }
}

TEST_CASE("differential identity: w^f = -q w_{q-1} / (q-1)") {
    struct G {
        long long p;
        int f, e;
    };
    for (G g : {G{3, 1, 1}, G{5, 1, 1}, G{3, 2, 1}}) {
        auto t = Tower::ground_with_gauss(g.p, g.f, g.e, 40);
        GaussTable tab(*t);
        long long q = t->q();
        Element lhs = tab.raynaud_w_total().pow(g.f);
        Element rhs = tab.raynaud_w(q - 1).mul_int(-q).div_int(q - 1);
        CHECK(lhs.eq_to_precision(rhs));
    }
}
