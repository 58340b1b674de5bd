#include "doctest.h"

#include <random>

#include "varpi/tower.hpp"

using namespace varpi;

namespace {

// Independent valuation oracle: val(x) = e * vp(det(M_x)) / D where M_x is
// the multiplication-by-x matrix on the flat integral basis over Z/p^Kp.
// Gaussian elimination with p-valuation pivoting; only trustworthy while the
// accumulated pivot valuation stays well under the digit budget.
Rational det_val_oracle(const Tower& tw, const Element& x) {
    REQUIRE(x.pden() == 0);
    int n = tw.absolute_degree();
    uint64_t pK = 1;
    for (int i = 0; i < tw.base_precision(); ++i) pK *= (uint64_t)tw.p();
    std::vector<std::vector<uint64_t>> m(n, std::vector<uint64_t>(n));
    for (int j = 0; j < n; ++j) {
        Element col = x * tw.monomial((size_t)j);
        REQUIRE(col.pden() == 0);
        for (int i = 0; i < n; ++i) m[i][j] = col.digits()[i];
    }
    auto vp = [&](uint64_t d) {
        if (d == 0) return tw.base_precision();
        int v = 0;
        while (d % (uint64_t)tw.p() == 0) {
            d /= (uint64_t)tw.p();
            ++v;
        }
        return v;
    };
    auto modinv = [&](uint64_t a) {
        long long x0, y0;
        std::function<long long(long long, long long, long long&, long long&)> egcd =
            [&](long long aa, long long bb, long long& xx, long long& yy) -> long long {
            if (!bb) {
                xx = 1;
                yy = 0;
                return aa;
            }
            long long x1, y1, g = egcd(bb, aa % bb, x1, y1);
            xx = y1;
            yy = x1 - (aa / bb) * y1;
            return g;
        };
        egcd((long long)a, (long long)pK, x0, y0);
        long long r = x0 % (long long)pK;
        if (r < 0) r += (long long)pK;
        return (uint64_t)r;
    };
    long long acc = 0;
    for (int col = 0; col < n; ++col) {
        int best = -1, bv = tw.base_precision() + 1;
        for (int r = col; r < n; ++r) {
            int v = vp(m[r][col]);
            if (v < bv) {
                bv = v;
                best = r;
            }
        }
        REQUIRE(bv <= tw.base_precision() / 2); // oracle stays certified
        std::swap(m[best], m[col]);
        acc += bv;
        uint64_t ppow = 1;
        for (int i = 0; i < bv; ++i) ppow *= (uint64_t)tw.p();
        uint64_t unit = m[col][col] / ppow;
        uint64_t inv = modinv(unit);
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col] == 0) continue;
            uint64_t f =
                (uint64_t)((unsigned __int128)(m[r][col] / ppow) * inv % pK);
            for (int j = col; j < n; ++j) {
                uint64_t sub = (uint64_t)((unsigned __int128)f * m[col][j] % pK);
                m[r][j] = m[r][j] >= sub ? m[r][j] - sub : m[r][j] + pK - sub;
            }
        }
    }
    return Rational(acc) * Rational(tw.e()) / Rational(n);
}

Element random_element(const Tower& tw, std::mt19937_64& rng, bool sparse = false) {
    std::vector<uint64_t> d(tw.absolute_degree(), 0);
    uint64_t pK = 1;
    for (int i = 0; i < tw.base_precision(); ++i) pK *= (uint64_t)tw.p();
    for (auto& x : d) {
        if (sparse && rng() % 3) continue;
        x = rng() % pK;
    }
    return tw.from_digits(d, 0, Rational(1000000));
}

} // namespace

TEST_CASE("identity tower: Z_3 with a degree-1 eisenstein step") {
    auto t = Tower::make(3, {StepSpec::eisenstein({StepSpec::Coeff(-3), StepSpec::Coeff(1)})}, 20);
    CHECK(t->e() == 1);
    CHECK(t->f() == 1);
    CHECK(t->q() == 3);
    CHECK(t->absolute_degree() == 1);
    CHECK(t->varpi()->valuation() == Rational(1));
    CHECK(t->one().valuation() == Rational(0));
}

TEST_CASE("unramified quadratic over Q_3") {
    auto t = Tower::make(3, {Tower::default_unramified(3, 2),
                             StepSpec::eisenstein({StepSpec::Coeff(-3), StepSpec::Coeff(1)})},
                         20);
    CHECK(t->e() == 1);
    CHECK(t->f() == 2);
    CHECK(t->q() == 9);
    CHECK(t->absolute_degree() == 2);
    // the generator is a unit
    CHECK(t->gen(1).valuation() == Rational(0));
}

TEST_CASE("eisenstein x^2 - 3 over Q_3") {
    auto t = Tower::make(
        3, {StepSpec::eisenstein({StepSpec::Coeff(-3), StepSpec::Coeff(0), StepSpec::Coeff(1)})},
        20);
    CHECK(t->e() == 2);
    CHECK(t->f() == 1);
    // val normalized by val(varpi) = 1: the root has valuation 1, p has 2
    CHECK(t->gen(1).valuation() == Rational(1));
    CHECK(t->from_int(3).valuation() == Rational(2));
    CHECK(t->varpi()->valuation() == Rational(1));
    // varpi^2 = 3 exactly
    CHECK((t->gen(1) * t->gen(1)).eq_to_precision(t->from_int(3)));
}

TEST_CASE("make_tower error paths") {
    // non-eisenstein polynomial: constant term is a unit
    CHECK_THROWS_AS(
        Tower::make(3, {StepSpec::eisenstein(
                           {StepSpec::Coeff(-1), StepSpec::Coeff(0), StepSpec::Coeff(1)})},
                    20),
        domain_error);
    // reducible polynomial in an unramified step: x^2 - 1
    CHECK_THROWS_AS(
        Tower::make(3, {StepSpec::unramified_deg(
                           2, {StepSpec::Coeff(-1), StepSpec::Coeff(0), StepSpec::Coeff(1)})},
                    20),
        domain_error);
    // precision 0
    CHECK_THROWS_AS(Tower::make(3, {}, 0), domain_error);
}

TEST_CASE("gauss ground (3,1,1): designated elements") {
    auto t = Tower::ground_with_gauss(3, 1, 1, 40);
    CHECK(t->e() == 1);
    CHECK(t->q() == 3);
    CHECK(t->absolute_degree() == 2); // Q_3((-3)^{1/2})
    CHECK(t->varpi()->valuation() == Rational(1));
    // (-varpi)^{1/(q-1)} has valuation 1/(q-1)
    CHECK(t->neg_varpi_root()->valuation() == Rational(1, 2));
    Element root = *t->neg_varpi_root();
    CHECK((root * root).eq_to_precision(t->from_int(-3)));
    // zeta_p: primitive cube root of unity
    REQUIRE(t->zeta_p().has_value());
    Element z = *t->zeta_p();
    CHECK((z * z * z).eq_to_precision(t->one()));
    CHECK(!z.eq_to_precision(t->one()));
    CHECK((z * z + z + t->one()).is_zero_to_precision());
    // val(zeta_p - 1) = e/(p-1)
    CHECK((z - t->one()).valuation() == Rational(1, 2));
}

TEST_CASE("gauss ground (5,1,1) and (3,2,1): zeta_p relations") {
    for (auto [p, f] : {std::pair<long long, int>{5, 1}, {3, 2}}) {
        auto t = Tower::ground_with_gauss(p, f, 1, 40);
        Element z = *t->zeta_p();
        CHECK(z.pow(p).eq_to_precision(t->one()));
        CHECK(!z.eq_to_precision(t->one()));
        CHECK((z - t->one()).valuation() == Rational(1, p - 1));
        CHECK(t->neg_varpi_root()->valuation() == Rational(1, t->q() - 1));
    }
}

TEST_CASE("gauss ground (3,1,2): ramified base via designated uniformizer") {
    auto t = Tower::ground_with_gauss(3, 1, 2, 40);
    CHECK(t->e() == 2);
    CHECK(t->f() == 1);
    CHECK(t->q() == 3);
    Element w = *t->varpi();
    CHECK(w.valuation() == Rational(1));
    CHECK((w * w).eq_to_precision(t->from_int(3)));
    CHECK(t->from_int(3).valuation() == Rational(2));
    Element z = *t->zeta_p();
    CHECK((z * z * z).eq_to_precision(t->one()));
    CHECK((z - t->one()).valuation() == Rational(1)); // e/(p-1) = 1
}

TEST_CASE("teichmuller: boundary cases and the p=5 Hensel oracle") {
    auto t = Tower::ground_with_gauss(5, 1, 1, 40);
    CHECK(t->teichmuller(0).is_zero_to_precision());
    CHECK(t->teichmuller(1).eq_to_precision(t->one()));
    Element t2 = t->teichmuller(2);
    // oracle: iterate z -> z^5 mod 5^Kp from 2; the limit is the unique
    // 4th root of unity congruent to 2
    uint64_t pK = 1;
    for (int i = 0; i < t->base_precision(); ++i) pK *= 5;
    uint64_t z = 2, prev = 0;
    while (z != prev) {
        prev = z;
        uint64_t r = 1;
        for (int i = 0; i < 5; ++i) r = (uint64_t)((unsigned __int128)r * z % pK);
        z = r;
    }
    CHECK(t2.digits()[0] == z);
    CHECK(t2.pow(4).eq_to_precision(t->one()));
    CHECK(t2.digits()[0] % 5 == 2);
}

TEST_CASE("teichmuller is multiplicative at full precision") {
    auto t = Tower::ground_with_gauss(3, 2, 1, 40);
    const long long q = t->q();
    // kappa indices multiply through the GF tables
    const GF& gf = t->residue_field();
    for (long long a = 0; a < q; ++a)
        for (long long b = 0; b < q; ++b) {
            GFElem ra = t->kappa_embed(a), rb = t->kappa_embed(b);
            GFElem rab = gf.mul(ra, rb);
            Element lhs = t->teichmuller(a) * t->teichmuller(b);
            Element rhs = t->teichmuller_of(rab, q);
            CHECK(lhs.eq_to_precision(rhs));
        }
}

TEST_CASE("valuation is multiplicative on random certified pairs") {
    std::mt19937_64 rng(987654321);
    std::vector<std::unique_ptr<Tower>> towers;
    towers.push_back(Tower::ground_with_gauss(3, 1, 1, 40));
    towers.push_back(Tower::ground_with_gauss(3, 2, 1, 40));
    towers.push_back(Tower::ground_with_gauss(5, 1, 1, 30));
    towers.push_back(Tower::ground_with_gauss(3, 1, 2, 40));
    for (auto& t : towers) {
        for (int i = 0; i < 10000; ++i) {
            Element a = random_element(*t, rng, i % 2 == 0);
            Element b = random_element(*t, rng, i % 3 == 0);
            auto va = a.val(), vb = b.val();
            if (!va.certified || !vb.certified) continue;
            auto vab = (a * b).val();
            REQUIRE(vab.certified);
            CHECK(vab.v == va.v + vb.v);
        }
    }
}

TEST_CASE("valuation agrees with the determinant oracle") {
    std::mt19937_64 rng(13371337);
    std::vector<std::unique_ptr<Tower>> towers;
    towers.push_back(Tower::ground_with_gauss(3, 1, 1, 40));
    towers.push_back(Tower::ground_with_gauss(3, 1, 2, 40));
    towers.push_back(Tower::ground_with_gauss(5, 1, 1, 30));
    for (auto& t : towers) {
        for (int i = 0; i < 50; ++i) {
            Element a = random_element(*t, rng, true);
            auto va = a.val();
            if (!va.certified) continue;
            if (va.v > Rational(2)) continue; // keep the oracle certified
            CHECK(det_val_oracle(*t, a) == va.v);
        }
        // designated elements too
        CHECK(det_val_oracle(*t, *t->varpi()) == Rational(1));
        if (t->neg_varpi_root())
            CHECK(det_val_oracle(*t, *t->neg_varpi_root()) ==
                  t->neg_varpi_root()->valuation());
    }
}

TEST_CASE("inverse and division") {
    std::mt19937_64 rng(777);
    auto t = Tower::ground_with_gauss(3, 2, 1, 40);
    for (int i = 0; i < 200; ++i) {
        Element a = random_element(*t, rng);
        auto va = a.val();
        if (!va.certified || va.v > Rational(2)) continue;
        Element inv = a.inverse();
        CHECK((a * inv).eq_to_precision(t->one()));
        CHECK(inv.valuation() == -va.v);
    }
    // integer division is exact
    Element x = t->from_int(7);
    CHECK(x.div_int(7).eq_to_precision(t->one()));
    Element y = t->from_int(18).div_int(9); // strips 3^2
    CHECK(y.eq_to_precision(t->from_int(2)));
}

TEST_CASE("zero handling: +inf marker with annotation, no false inversions") {
    auto t = Tower::ground_with_gauss(3, 1, 1, 20);
    Element z = t->zero();
    auto v = z.val();
    CHECK(v.v.is_infinite());
    CHECK(!v.certified);
    CHECK(v.cap > Rational(0));
    CHECK_THROWS_AS(z.inverse(), precision_error);
    // an element that is zero only to precision is not invertible either
    Element tiny = t->varpi()->pow(3 * t->base_precision()); // above the cap
    CHECK(tiny.is_zero_to_precision());
    CHECK_THROWS_AS(tiny.inverse(), precision_error);
}

TEST_CASE("plog/pexp: boundary examples") {
    auto t = Tower::ground_with_gauss(3, 1, 1, 40);
    CHECK(plog(t->one()).is_zero_to_precision());
    CHECK(pexp(t->zero()).eq_to_precision(t->one()));
    // p=3, e=1: val 1 > 1/2 = e/(p-1), log preserves valuation
    Element x = t->one() + t->from_int(3);
    CHECK(plog(x).valuation() == Rational(1));
    CHECK(plog_valuation_bound(3, 1, Rational(1)) == Rational(1));
    // domain errors
    CHECK_THROWS_AS(plog(t->from_int(3)), domain_error);
    CHECK_THROWS_AS(pexp(t->from_int(1)), domain_error);
}

TEST_CASE("pexp inverts plog on the joint domain") {
    std::mt19937_64 rng(424242);
    auto t = Tower::ground_with_gauss(5, 1, 1, 30);
    int done = 0;
    for (int i = 0; i < 200 && done < 100; ++i) {
        // force val(u) >= 1/2 > 1/4 = e/(p-1)
        Element u = random_element(*t, rng) * t->val_shift(2);
        auto vu = u.val();
        if (!vu.certified || !(vu.v > Rational(1, 4))) continue;
        if (vu.v > Rational(3)) continue;
        Element x = t->one() + u;
        Element back = pexp(plog(x));
        CHECK(back.eq_to_precision(x));
        ++done;
    }
    CHECK(done >= 50);
}

TEST_CASE("plog valuation formula matches the computed series") {
    std::mt19937_64 rng(5150);
    auto t = Tower::ground_with_gauss(3, 1, 1, 40);
    int done = 0;
    for (int i = 0; i < 1000 && done < 100; ++i) {
        Element u = random_element(*t, rng);
        auto vu = u.val();
        if (!vu.certified || !(vu.v > Rational(0)) || vu.v > Rational(4)) continue;
        Rational formula = plog_valuation_bound(t->p(), t->e(), vu.v);
        // the formula is the generic minimum; equality requires a unique
        // minimizer, which holds away from ties
        long long p = t->p();
        bool tie = false;
        long long pj = 1;
        Rational best = vu.v;
        int argmin = 0;
        for (int j = 1; j <= 40 && pj < (1LL << 40); ++j) {
            pj *= p;
            Rational term = Rational(pj) * vu.v - Rational((long long)j * t->e());
            if (term < best) {
                best = term;
                argmin = j;
            } else if (term == best && j != argmin) {
                tie = true;
            }
        }
        Rational got = plog(t->one() + u).val().v;
        if (tie)
            CHECK(got >= formula);
        else
            CHECK(got == formula);
        ++done;
    }
    CHECK(done >= 60);
}
