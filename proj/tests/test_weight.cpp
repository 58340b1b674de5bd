#include "doctest.h"

#include <random>

#include "varpi/weight.hpp"

using namespace varpi;

TEST_CASE("accessibility inequality") {
    // p=5, e=1: val 0, r=1: 0 > 1/4 - 1
    CHECK(is_r_accessible(Rational(0), 1, 5, 1));
    // p=5, e=1: val -1, r=1 fails; minimal accessible r is 2
    CHECK(!is_r_accessible(Rational(-1), 1, 5, 1));
    CHECK(is_r_accessible(Rational(-1), 2, 5, 1));
    // p=3, e=2 = p-1: val 0, r=1 fails by strictness (0 > 1-1 is false)
    CHECK(!is_r_accessible(Rational(0), 1, 3, 2));
    CHECK(is_r_accessible(Rational(0), 2, 3, 2));
    // deeply ramified threshold: e > p-1 demands r >= e/(p-1)
    CHECK(min_accessibility_index(3, 5) == 3);
    CHECK_THROWS_AS(is_r_accessible(Rational(0), 2, 3, 5), domain_error);
}

TEST_CASE("disk thresholds") {
    // m_1 = e/(p-1)
    CHECK(disk_threshold(1, 3, 1, 1).m_r == Rational(1, 2));
    CHECK(disk_threshold(1, 5, 1, 1).m_r == Rational(1, 4));
    CHECK(disk_threshold(1, 3, 2, 1).m_r == Rational(1));
    // p=3, e=1, r=2: binding constraint j=1 gives m_2 = 1/6
    CHECK(disk_threshold(2, 3, 1, 1).m_r == Rational(1, 6));
    // strictly decreasing in r
    for (auto [p, e] : {std::pair<long long, int>{3, 1}, {5, 1}, {3, 2}}) {
        Rational prev = disk_threshold(1, p, e, 1).m_r;
        for (int r = 2; r <= 6; ++r) {
            Rational cur = disk_threshold(r, p, e, 1).m_r;
            CHECK(cur < prev);
            prev = cur;
        }
        CHECK(disk_threshold(1, p, e, 1).strict);
    }
}

TEST_CASE("disk threshold implication, sampled strictly inside") {
    // val(x-1) = v > m_r implies min_j (p^j v - j e) > e/(p-1) + 1 - r
    std::mt19937_64 rng(2718281);
    for (auto [p, e] : {std::pair<long long, int>{3, 1}, {5, 1}, {3, 2}}) {
        for (int r = 1; r <= 5; ++r) {
            auto cfg = disk_threshold(r, p, e, 1);
            Rational T = Rational(e, p - 1) + Rational(1) - Rational(r);
            for (int trial = 0; trial < 200; ++trial) {
                Rational eps(1 + (long long)(rng() % 40), 1 + (long long)(rng() % 12));
                Rational v = cfg.m_r + eps / Rational(100);
                CHECK(plog_valuation_bound(p, e, v) > T);
            }
        }
    }
}

TEST_CASE("any character inside the disk is accessible (lemma restated)") {
    // the disk coordinates are the values at level-1 generators u (so
    // val(u-1) = 1); if val(chi(u) - 1) >= m_r then s = log(chi(u))/log(u)
    // satisfies the accessibility inequality
    std::mt19937_64 rng(1618);
    for (auto [p, e] : {std::pair<long long, int>{3, 1}, {5, 1}, {3, 2}}) {
        Rational log_unif = plog_valuation_bound(p, e, Rational(1));
        for (int r = min_accessibility_index(p, e); r <= 5; ++r) {
            auto cfg = disk_threshold(r, p, e, 1);
            for (int trial = 0; trial < 200; ++trial) {
                Rational v = cfg.m_r + Rational(1 + (long long)(rng() % 50), 97);
                Rational val_s = plog_valuation_bound(p, e, v) - log_unif;
                CHECK(is_r_accessible(val_s, r, p, e));
            }
        }
    }
}

TEST_CASE("char_eval: trivial character, teichmuller points, integer weights") {
    std::mt19937_64 rng(31415);
    auto t = Tower::ground_with_gauss(5, 1, 1, 40);
    Character triv{t->zero(), 0, 1};

    // units of the O_P level: digits supported on the unramified block
    auto random_unit = [&](const Tower& tw) {
        for (;;) {
            std::vector<uint64_t> d(tw.absolute_degree(), 0);
            uint64_t pK = 1;
            for (int i = 0; i < tw.base_precision(); ++i) pK *= (uint64_t)tw.p();
            for (int i = 0; i < tw.f(); ++i) d[i] = rng() % pK;
            Element e = tw.from_digits(d, 0, Rational(1000000));
            auto v = e.val();
            if (v.certified && v.v == Rational(0)) return e;
        }
    };

    for (int i = 0; i < 20; ++i) {
        Element u = random_unit(*t);
        CHECK(char_eval(triv, u).eq_to_precision(t->one()));
    }

    // chi(teich(z)) = teich(z)^i since <t> = 1
    Character chi{t->from_int(7), 3, 1};
    for (long long z = 1; z < 5; ++z) {
        Element tz = t->teichmuller(z);
        CHECK(char_eval(chi, tz).eq_to_precision(tz.pow(3)));
    }

    // integer weight k = 2 acts as t -> t^2 (50 random units)
    Character k2 = integer_weight(*t, 2);
    CHECK(k2.i == 2 % 4);
    for (int i = 0; i < 50; ++i) {
        Element u = random_unit(*t);
        CHECK(char_eval(k2, u).eq_to_precision(u * u));
    }

    // and k = 3 on the f = 2 ground
    auto t2 = Tower::ground_with_gauss(3, 2, 1, 40);
    Character k3 = integer_weight(*t2, 3);
    for (int i = 0; i < 20; ++i) {
        Element u = random_unit(*t2);
        CHECK(char_eval(k3, u).eq_to_precision(u * u * u));
    }

    // errors: non-unit argument
    CHECK_THROWS_AS(char_eval(k2, t->from_int(5)), domain_error);
}

TEST_CASE("char_eval is multiplicative") {
    std::mt19937_64 rng(999);
    auto t = Tower::ground_with_gauss(3, 2, 1, 40);
    Character chi{t->from_int(4), 5, 1};
    auto random_unit = [&]() {
        for (;;) {
            std::vector<uint64_t> d(t->absolute_degree(), 0);
            uint64_t pK = 1;
            for (int i = 0; i < t->base_precision(); ++i) pK *= (uint64_t)t->p();
            for (int i = 0; i < t->f(); ++i) d[i] = rng() % pK;
            Element e = t->from_digits(d, 0, Rational(1000000));
            auto v = e.val();
            if (v.certified && v.v == Rational(0)) return e;
        }
    };
    for (int i = 0; i < 30; ++i) {
        Element a = random_unit(), b = random_unit();
        Element lhs = char_eval(chi, a * b);
        Element rhs = char_eval(chi, a) * char_eval(chi, b);
        CHECK(lhs.eq_to_precision(rhs));
    }
}

TEST_CASE("max growth bound") {
    // p=3,e=1,f=1 (q=3), val(s)=0, r=1: min(1, 3/4, 3/4, 1/3) = 1/3 inclusive
    auto gb = max_growth_w(Rational(0), 1, 3, 1, 1);
    CHECK(gb.bound == Rational(1, 3));
    CHECK(gb.inclusive);
    // the limit val(s) -> e/(p-1) - 1: first term (q-1) eps
    auto gb2 = max_growth_w(Rational(1, 2) - Rational(1) + Rational(1, 1000), 1, 3, 1, 1);
    CHECK(gb2.bound == Rational(2, 1000));
    CHECK(!gb2.inclusive);
    // r=3, q=3: third term 1/(3*4) = 1/12
    auto gb3 = max_growth_w(Rational(0), 3, 3, 1, 1);
    CHECK(gb3.bound == Rational(1, 12));
    // non-accessible input is an error
    CHECK_THROWS_AS(max_growth_w(Rational(-2), 1, 3, 1, 1), domain_error);
}

TEST_CASE("max growth bound monotonicity") {
    // non-increasing in r, non-decreasing in val(s)
    for (long long num = -3; num <= 6; ++num) {
        Rational vs(num, 2);
        Rational prev;
        bool first = true;
        for (int r = 1; r <= 6; ++r) {
            if (!is_r_accessible(vs, r, 3, 1)) continue;
            auto gb = max_growth_w(vs, r, 3, 1, 1);
            if (!first) CHECK(gb.bound <= prev);
            prev = gb.bound;
            first = false;
        }
    }
    Rational prev;
    bool first = true;
    for (long long num = -1; num <= 8; ++num) {
        Rational vs(num, 2);
        if (!is_r_accessible(vs, 2, 3, 1)) continue;
        auto gb = max_growth_w(vs, 2, 3, 1, 1);
        if (!first) CHECK(gb.bound >= prev);
        prev = gb.bound;
        first = false;
    }
}

TEST_CASE("component index") {
    auto t = Tower::ground_with_gauss(3, 2, 1, 30);
    long long q = t->q();
    CHECK(component_index(integer_weight(*t, q - 1), q) == 0);
    Character chi{t->from_int(5), 0, 1};
    CHECK(component_index(chi, q) == 0);
    CHECK(component_index(integer_weight(*t, 1), q) == 1);
}
