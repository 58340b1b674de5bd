#include "varpi/tower.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace varpi {

namespace {
constexpr int kGuardDigits = 8;
constexpr uint64_t kMaxPK = (uint64_t)1 << 47; // digit products must fit __int128 sums

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// extended gcd over long long
long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// small F_p matrix inverse (Gauss-Jordan); returns empty on singular
std::vector<std::vector<uint32_t>> fp_invert(std::vector<std::vector<uint32_t>> m, long long p) {
    size_t n = m.size();
    std::vector<std::vector<uint32_t>> inv(n, std::vector<uint32_t>(n, 0));
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    auto inv_mod = [&](uint64_t a) {
        uint64_t r = 1, b = a % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return {};
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        uint64_t s = inv_mod(m[col][col]);
        for (size_t j = 0; j < n; ++j) {
            m[col][j] = (uint32_t)((uint64_t)m[col][j] * s % p);
            inv[col][j] = (uint32_t)((uint64_t)inv[col][j] * s % p);
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            uint64_t f = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] = (uint32_t)((m[r][j] + (p - f) * m[col][j]) % p);
                inv[r][j] = (uint32_t)((inv[r][j] + (p - f) * inv[col][j]) % p);
            }
        }
    }
    return inv;
}

} // namespace

StepSpec StepSpec::unramified_deg(int d, std::vector<Coeff> poly) {
    StepSpec s;
    s.kind = StepKind::unramified;
    s.degree = d;
    s.poly = std::move(poly);
    return s;
}
StepSpec StepSpec::eisenstein(std::vector<Coeff> poly) {
    StepSpec s;
    s.kind = StepKind::eisenstein;
    s.degree = (int)poly.size() - 1;
    s.poly = std::move(poly);
    return s;
}
StepSpec StepSpec::kummer(int m, Coeff base) {
    StepSpec s;
    s.kind = StepKind::kummer;
    s.degree = m;
    s.kummer_base = std::move(base);
    return s;
}
StepSpec StepSpec::cyclotomic(int order) {
    StepSpec s;
    s.kind = StepKind::cyclotomic;
    s.degree = order;
    return s;
}

// ---------------------------------------------------------------------------
// construction

void Tower::build_layout(long long p, const std::vector<StepSpec>& specs, int precision) {
    if (precision < 1) throw domain_error("make_tower: precision must be >= 1");
    p_ = p;
    N_ = precision;

    // O_P prefix rule: leading unramified steps give f, then eisenstein steps
    // give e; the prefix ends at the first kummer/cyclotomic step.
    {
        size_t i = 0;
        f_ = 1;
        e_ = 1;
        while (i < specs.size() && specs[i].kind == StepKind::unramified) f_ *= specs[i++].degree;
        while (i < specs.size() && specs[i].kind == StepKind::eisenstein) e_ *= specs[i++].degree;
        q_ = ipow(p_, f_);
    }

    // residue field degree: product of unramified step degrees
    f_tot_ = 1;
    for (const auto& s : specs)
        if (s.kind == StepKind::unramified) {
            if (s.degree < 1) throw domain_error("make_tower: bad unramified degree");
            f_tot_ *= s.degree;
        }
    gf_ = GF(p_, f_tot_);

    S_ = {1};
    steps_.clear();

    // The working precision is fixed before any validation arithmetic: a
    // first pass computes the value-group denominator in val(p)=1 units.
    // Valuations of step data depend only on step kinds and degrees for the
    // denominator bound, so we over-approximate with the product of
    // ramified degrees (exact value recomputed after validation).
    long long ram_bound = 1;
    for (const auto& s : specs)
        if (s.kind != StepKind::unramified)
            ram_bound *= (s.kind == StepKind::cyclotomic) ? (s.degree - 1) : s.degree;
    // precision digits count the minimal positive valuation unit
    long long denom_guess = ram_bound;
    long long kp = (precision + denom_guess - 1) / denom_guess + kGuardDigits;
    Kp_ = (int)kp;
    uint64_t pk = 1;
    for (int i = 0; i < Kp_; ++i) {
        if (pk > kMaxPK / (uint64_t)p_)
            throw domain_error("make_tower: requested precision exceeds the digit budget");
        pk *= (uint64_t)p_;
    }
    pK_ = pk;

    // embed a StepSpec::Coeff at the current top level (flat span)
    auto embed_coeff = [&](const StepSpec::Coeff& c) {
        std::vector<uint64_t> out(S_.back(), 0);
        if (c.digits.empty()) {
            long long v = c.scalar % (long long)pK_;
            if (v < 0) v += (long long)pK_;
            out[0] = (uint64_t)v;
        } else {
            if (c.digits.size() > out.size())
                throw domain_error("make_tower: coefficient digit vector too long for its level");
            for (size_t i = 0; i < c.digits.size(); ++i) {
                long long v = c.digits[i] % (long long)pK_;
                if (v < 0) v += (long long)pK_;
                out[i] = (uint64_t)v;
            }
        }
        return out;
    };

    // minimal positive valuation of the tower built so far, val(varpi)=1
    // units (e is fixed by the prefix rule before any step is processed)
    Rational m_cur(e_);
    int f_cur = 1;

    for (const auto& spec : specs) {
        StepSpec s = spec;
        if (s.kind == StepKind::cyclotomic) {
            // realized as the Eisenstein step of lambda = zeta_p - 1
            if (s.degree != (int)p_)
                throw domain_error("make_tower: cyclotomic step order must equal p");
            s.kind = StepKind::eisenstein;
            s.degree = (int)p_ - 1;
            s.poly.clear();
            for (int k = 0; k <= (int)p_ - 1; ++k) s.poly.emplace_back(binom((int)p_, k + 1));
        }

        if (s.degree == 1 && s.kind == StepKind::eisenstein) {
            // designation-only step: x + c0, root -c0; no basis growth
            if (s.poly.size() != 2) throw domain_error("make_tower: bad degree-1 step");
            std::vector<uint64_t> c0 = embed_coeff(s.poly[0]);
            Rational v = val_span((int)steps_.size(), c0.data());
            if (v != m_cur)
                throw domain_error(
                    "make_tower: degree-1 eisenstein step must have a uniformizer root");
            continue; // varpi defaults to p below; nothing to add to the layout
        }

        Step st;
        st.kind = spec.kind == StepKind::cyclotomic ? StepKind::cyclotomic : s.kind;
        st.d = s.degree;
        if (st.d < 2) throw domain_error("make_tower: step degree must be >= 1");
        int k = (int)steps_.size(); // current top level index (0-based count)
        int S = S_.back();

        switch (s.kind) {
        case StepKind::unramified: {
            if ((int)s.poly.size() != st.d + 1)
                throw domain_error("make_tower: unramified step needs a monic degree-d polynomial");
            if (!s.poly.back().digits.empty() || s.poly.back().scalar != 1)
                throw domain_error("make_tower: unramified polynomial must be monic");
            std::vector<std::vector<uint64_t>> coeffs;
            for (int i = 0; i < st.d; ++i) coeffs.push_back(embed_coeff(s.poly[i]));
            // residues of the coefficients; integrality required
            std::vector<GFElem> rpoly;
            for (int i = 0; i < st.d; ++i) {
                Rational v = val_span(k, coeffs[i].data());
                if (!v.is_infinite() && v.is_negative())
                    throw domain_error("make_tower: unramified coefficients must be integral");
                rpoly.push_back(res_span(k, coeffs[i].data()));
            }
            rpoly.push_back(gf_.one());
            // irreducibility over F_{p^{f_cur}} via root counts in subfields
            long long s_sub = ipow(p_, f_cur);
            auto in_subfield = [&](const GFElem& r, int m) {
                // r in F_{s^m} iff r^{s^m} = r
                long long e = 1;
                for (int i = 0; i < m; ++i) e *= s_sub;
                return gf_.pow(r, e) == r;
            };
            auto all_roots = gf_.roots(rpoly);
            long long nd = 0;
            for (const auto& r : all_roots)
                if (in_subfield(r, st.d)) ++nd;
            if (nd != st.d)
                throw domain_error("make_tower: unramified polynomial is not irreducible mod p");
            for (int m = 1; m < st.d; ++m) {
                if (st.d % m != 0) continue;
                for (const auto& r : all_roots)
                    if (in_subfield(r, m))
                        throw domain_error(
                            "make_tower: unramified polynomial is not irreducible mod p");
            }
            // canonical generator residue: smallest index root inside F_{s^d}
            GFElem best = gf_.zero();
            bool have = false;
            for (const auto& r : all_roots) {
                if (!in_subfield(r, st.d)) continue;
                if (!have || gf_.to_index(r) < gf_.to_index(best)) {
                    best = r;
                    have = true;
                }
            }
            st.gen_residue = best;
            st.gen_val = Rational(0);
            st.reduce_tail.assign((size_t)st.d * S, 0);
            for (int i = 0; i < st.d; ++i) {
                // x^d = -(c_i x^i + ...)
                for (int j = 0; j < S; ++j)
                    st.reduce_tail[(size_t)i * S + j] = submod(0, coeffs[i][j]);
            }
            f_cur *= st.d;
            break;
        }
        case StepKind::eisenstein: {
            if ((int)s.poly.size() != st.d + 1)
                throw domain_error("make_tower: eisenstein step needs a monic degree-d polynomial");
            if (!s.poly.back().digits.empty() || s.poly.back().scalar != 1)
                throw domain_error("make_tower: eisenstein polynomial must be monic");
            std::vector<std::vector<uint64_t>> coeffs;
            for (int i = 0; i < st.d; ++i) coeffs.push_back(embed_coeff(s.poly[i]));
            Rational v0 = val_span(k, coeffs[0].data());
            if (v0 != m_cur)
                throw domain_error("make_tower: not an eisenstein polynomial (constant term must "
                                   "have minimal positive valuation)");
            for (int i = 1; i < st.d; ++i) {
                Rational vi = val_span(k, coeffs[i].data());
                if (!(vi > Rational(0)))
                    throw domain_error("make_tower: not an eisenstein polynomial (middle "
                                       "coefficients must have positive valuation)");
            }
            st.gen_val = v0 / Rational(st.d);
            st.reduce_tail.assign((size_t)st.d * S, 0);
            for (int i = 0; i < st.d; ++i)
                for (int j = 0; j < S; ++j)
                    st.reduce_tail[(size_t)i * S + j] = submod(0, coeffs[i][j]);
            m_cur = m_cur / Rational(st.d);
            break;
        }
        case StepKind::kummer: {
            std::vector<uint64_t> c = embed_coeff(s.kummer_base);
            Rational vc = val_span(k, c.data());
            if (vc.is_infinite()) throw domain_error("make_tower: kummer base is zero");
            // valuation-split: gcd with the step degree of the base valuation
            // expressed in current-group units must be 1
            Rational scaled = vc / m_cur;
            if (!scaled.is_integer())
                throw domain_error("make_tower: kummer base valuation outside the value group");
            long long nc = scaled.num() % st.d;
            if (nc < 0) nc += st.d;
            if (std::gcd(nc, (long long)st.d) != 1)
                throw domain_error("make_tower: kummer step is not valuation-split (adjoin an "
                                   "unramified or eisenstein step instead)");
            st.gen_val = vc / Rational(st.d);
            st.reduce_tail.assign((size_t)st.d * S, 0);
            std::copy(c.begin(), c.end(), st.reduce_tail.begin());
            m_cur = m_cur / Rational(st.d);
            break;
        }
        default:
            throw domain_error("make_tower: unsupported step kind");
        }

        st.tail_nonzero.clear();
        for (int t = 0; t < st.d; ++t)
            if (!zero_span(k, st.reduce_tail.data() + (size_t)t * S)) st.tail_nonzero.push_back(t);
        steps_.push_back(std::move(st));
        S_.push_back(S * steps_.back().d);
        if (S_.back() > 4096) throw domain_error("make_tower: tower degree too large");
    }

    finalize_groups();

    // re-derive the digit budget now that the true value group is known:
    // precision counts digits of the minimal positive valuation 1/R_.
    {
        long long need = ((long long)N_ + R_ * e_ - 1) / (R_ * e_) + kGuardDigits;
        if (need < Kp_) {
            // shrink to what was asked (saves digit width, keeps the guard)
            Kp_ = (int)need;
            pK_ = 1;
            for (int i = 0; i < Kp_; ++i) pK_ *= (uint64_t)p_;
        }
    }

    std::ostringstream desc;
    desc << "p" << p_ << ":K" << Kp_;
    for (const auto& st : steps_) {
        switch (st.kind) {
        case StepKind::unramified: desc << ";unram" << st.d; break;
        case StepKind::eisenstein: desc << ";eis" << st.d; break;
        case StepKind::kummer: desc << ";kummer" << st.d; break;
        case StepKind::cyclotomic: desc << ";cyclo" << st.d + 1; break;
        }
    }
    basis_desc_ = desc.str();
}

void Tower::build_residue_tables() {
    unram_levels_.clear();
    for (size_t i = 0; i < steps_.size(); ++i)
        if (steps_[i].kind == StepKind::unramified) unram_levels_.push_back((int)i + 1);

    // residue basis monomials: products of unramified generators
    res_basis_flat_.clear();
    std::vector<GFElem> basis_res;
    std::vector<int> idx(unram_levels_.size(), 0);
    for (;;) {
        size_t flat = 0;
        GFElem r = gf_.one();
        for (size_t j = 0; j < unram_levels_.size(); ++j) {
            int lvl = unram_levels_[j];
            flat += (size_t)idx[j] * S_[lvl - 1];
            r = gf_.mul(r, gf_.pow(steps_[lvl - 1].gen_residue, idx[j]));
        }
        res_basis_flat_.push_back(flat);
        basis_res.push_back(r);
        // increment multi-index
        size_t j = 0;
        for (; j < idx.size(); ++j) {
            if (++idx[j] < steps_[unram_levels_[j] - 1].d) break;
            idx[j] = 0;
        }
        if (j == idx.size()) break;
        if (idx.empty()) break;
    }
    if ((int)res_basis_flat_.size() != f_tot_)
        throw domain_error("internal: residue basis size mismatch");

    // matrix columns = GF coordinates of the basis residues; invert over F_p
    std::vector<std::vector<uint32_t>> m(f_tot_, std::vector<uint32_t>(f_tot_, 0));
    for (int col = 0; col < f_tot_; ++col)
        for (int row = 0; row < f_tot_; ++row) m[row][col] = basis_res[col].c[row];
    res_lift_inv_ = fp_invert(std::move(m), p_);
    if (res_lift_inv_.empty()) throw domain_error("internal: residue basis is degenerate");

    // kappa = F_q embedding: a canonical element of degree exactly f over F_p
    if (f_ == 1) {
        kappa_emb_ = gf_.one();
    } else {
        if (f_tot_ % f_ != 0)
            throw domain_error("make_tower: declared f does not divide the residue degree");
        bool found = false;
        for (long long i = 1; i < gf_.order() && !found; ++i) {
            GFElem cand = gf_.from_index(i);
            if (!(gf_.pow(cand, ipow(p_, f_)) == cand)) continue;
            bool proper = false;
            for (int m = 1; m < f_; ++m)
                if (f_ % m == 0 && gf_.pow(cand, ipow(p_, m)) == cand) proper = true;
            if (!proper) {
                kappa_emb_ = cand;
                found = true;
            }
        }
        if (!found) throw domain_error("make_tower: no kappa generator in the residue field");
    }
}

void Tower::finalize_groups() {
    // For every prefix of levels: the value group (cyclic, generated by the
    // step generator valuations and val(p) = e) and a Bezout chain producing
    // an element of the minimal positive valuation. Everything in
    // val(varpi)=1 units.
    int L = (int)steps_.size();
    shift_unit_.assign(L + 1, Rational(0));
    bezout_upto_.assign(L + 1, {});
    for (int lvl = 0; lvl <= L; ++lvl) {
        struct Atom {
            int level; // -1 = p
            Rational v;
        };
        std::vector<Atom> atoms;
        atoms.push_back({-1, Rational(e_)});
        for (int j = 1; j <= lvl; ++j)
            if (steps_[j - 1].gen_val > Rational(0)) atoms.push_back({j, steps_[j - 1].gen_val});
        long long D = 1;
        for (const auto& a : atoms) D = std::lcm(D, a.v.den());
        std::vector<std::pair<int, long long>> chain;
        long long g = 0;
        for (const auto& a : atoms) {
            long long n = (a.v * Rational(D)).num();
            if (g == 0) {
                g = n;
                chain.push_back({a.level, 1});
                continue;
            }
            long long x, y;
            long long g2 = ext_gcd(g, n, x, y);
            for (auto& b : chain) b.second *= x;
            chain.push_back({a.level, y});
            g = g2;
        }
        assert(g > 0);
        shift_unit_[lvl] = Rational(g, D);
        bezout_upto_[lvl] = std::move(chain);
    }
    R_ = shift_unit_[L].den();
    if (shift_unit_[L].num() != 1)
        R_ = (Rational(1) / shift_unit_[L]).num(); // group coarser than 1/den
    eabs_ = (Rational(e_) / shift_unit_[L]).num();
}

std::unique_ptr<Tower> Tower::make(long long p, const std::vector<StepSpec>& steps,
                                   int precision) {
    if (p < 2) throw domain_error("make_tower: p must be a prime >= 2");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw domain_error("make_tower: p must be prime");
    auto t = std::unique_ptr<Tower>(new Tower());
    t->build_layout(p, steps, precision);
    t->build_residue_tables();
    t->varpi_ = t->from_int(p); // overwritten below when e > 1
    if (t->e_ > 1) {
        // O_P prefix uniformizer: generator of the last prefix eisenstein step
        int lvl = 0;
        for (size_t i = 0; i < steps.size(); ++i) {
            if (steps[i].kind == StepKind::unramified) continue;
            if (steps[i].kind == StepKind::eisenstein && steps[i].degree >= 2) {
                // count layout level
                int l = 0;
                for (size_t j = 0; j <= i; ++j)
                    if (!(steps[j].kind == StepKind::eisenstein && steps[j].degree == 1)) ++l;
                lvl = l;
                continue;
            }
            break;
        }
        if (lvl > 0) t->varpi_ = t->gen(lvl);
    }
    // designate zeta_p for explicit cyclotomic steps
    for (size_t i = 0, lvl = 0; i < steps.size(); ++i) {
        if (steps[i].kind == StepKind::eisenstein && steps[i].degree == 1) continue;
        ++lvl;
        if (steps[i].kind == StepKind::cyclotomic)
            t->zeta_p_ = t->gen((int)lvl) + t->one();
    }
    return t;
}

// route A: zeta_p by Hensel lifting inside a top Kummer step x^M = -p
void Tower::designate_zeta_p_kummer() {
    int top = (int)steps_.size();
    long long M = steps_[top - 1].d;
    if ((M % (p_ - 1)) != 0) throw domain_error("internal: (p-1) does not divide M");
    Element pi = gen_pow(top, M / (p_ - 1)); // pi^{p-1} = -p
    // H(mu) = 1 - mu^{p-1} + sum_{k=1}^{p-2} (C(p,k+1)/p) pi^k mu^k, simple
    // root with residue 1
    std::vector<Element> coeff; // coefficient of mu^k, k = 0..p-1
    coeff.push_back(one());
    Element pik = one();
    for (int k = 1; k <= (int)p_ - 2; ++k) {
        pik = pik * pi;
        coeff.push_back(pik.mul_int(binom((int)p_, k + 1) / p_));
    }
    coeff.push_back(-one());
    auto F = [&](const Element& x) {
        Element r = zero();
        for (size_t i = coeff.size(); i-- > 0;) r = r * x + coeff[i];
        return r;
    };
    auto dF = [&](const Element& x) {
        Element r = zero();
        for (size_t i = coeff.size(); i-- > 1;) r = r * x + coeff[i].mul_int((long long)i);
        return r;
    };
    Element mu = newton_root(F, dF, one());
    zeta_p_ = one() + pi * mu;
}

std::unique_ptr<Tower> Tower::ground_with_gauss(long long p, int f, int e, int precision) {
    if (f < 1 || e < 1) throw domain_error("ground: f and e must be >= 1");
    if (e == 1) {
        long long q = ipow(p, f);
        long long M = std::lcm(p - 1, q - 1);
        std::vector<StepSpec> steps;
        if (f > 1) steps.push_back(default_unramified(p, f));
        steps.push_back(StepSpec::kummer((int)M, StepSpec::Coeff(-p)));
        auto t = make(p, steps, precision);
        t->designate_zeta_p_kummer();
        t->neg_varpi_root_ = t->gen_pow((int)t->steps_.size(), M / (q - 1));
        return t;
    }
    if ((p - 1) % e != 0 || e % p == 0)
        throw domain_error("ground: e > 1 is supported only for e | p-1");
    // route B: unramified base large enough, cyclotomic step, designated
    // uniformizer lambda^{(p-1)/e} * c with c^e = -1/u_lambda
    int ftil = f;
    if (e % 2 == 0) {
        while ((ipow(p, ftil) - 1) % (2 * e) != 0) ftil += f;
    }
    std::vector<StepSpec> steps;
    if (ftil > 1) steps.push_back(default_unramified(p, ftil));
    steps.push_back(StepSpec::cyclotomic((int)p));
    auto t = make(p, steps, precision);
    // declared ground data: O_P has the requested (e, f), embedded via the
    // designated uniformizer rather than as a tower prefix
    t->e_ = e;
    t->f_ = f;
    t->q_ = ipow(p, f);
    // rebuild valuation normalization: construction assumed e = 1
    for (auto& st : t->steps_) st.gen_val = st.gen_val * Rational(e);
    t->finalize_groups();
    t->build_residue_tables(); // kappa embedding follows the overridden f
    int cyc_level = (int)t->steps_.size();
    Element lambda = t->gen(cyc_level);
    t->zeta_p_ = t->one() + lambda;
    // u_lambda = -lambda^{p-1}/p, a unit with residue 1
    Element ulam = -(lambda.pow(p - 1).div_p_pow(1));
    // c with c^e * u_lambda = -1
    GFElem target = t->gf_.neg(t->gf_.inv(t->residue(ulam)));
    GFElem croot = t->gf_.zero();
    bool found = false;
    for (long long i = 1; i < t->gf_.order() && !found; ++i) {
        GFElem cand = t->gf_.from_index(i);
        if (t->gf_.pow(cand, e) == target) {
            croot = cand;
            found = true;
        }
    }
    if (!found) throw domain_error("ground: no e-th root for the uniformizer unit");
    auto F = [&](const Element& x) { return x.pow(e) * ulam + t->one(); };
    auto dF = [&](const Element& x) { return x.pow(e - 1).mul_int(e) * ulam; };
    Element c = t->newton_root(F, dF, t->lift_residue(croot));
    t->varpi_ = lambda.pow((p - 1) / e) * c;
    // check varpi^e = p exactly (construction invariant)
    Element chk = t->varpi_->pow(e) - t->from_int(p);
    if (!chk.is_zero_to_precision()) throw domain_error("internal: varpi^e != p");
    return t;
}

std::unique_ptr<Tower> Tower::canonical_ground(long long p, int f, const Rational& w,
                                               int precision) {
    if (w.is_negative() || w.is_infinite()) throw domain_error("canonical ground: bad growth w");
    long long q = ipow(p, f);
    if (w >= Rational(q, q + 1))
        throw domain_error("canonical ground: w must satisfy 0 <= w < q/(q+1)");
    long long b = w.den();
    long long M = std::lcm(p - 1, (q - 1) * b);
    std::vector<StepSpec> steps;
    if (f > 1) steps.push_back(default_unramified(p, f));
    steps.push_back(StepSpec::kummer((int)M, StepSpec::Coeff(-p)));
    if (precision <= 0) precision = (int)(12 * M); // recommended default
    auto t = make(p, steps, precision);
    t->designate_zeta_p_kummer();
    t->neg_varpi_root_ = t->gen_pow((int)t->steps_.size(), M / (q - 1));
    t->growth_ = w;
    return t;
}

StepSpec Tower::default_unramified(long long p, int f) {
    // lift of the lexicographically first irreducible polynomial of degree f
    GF field(p, f);
    std::vector<StepSpec::Coeff> poly;
    for (int i = 0; i < f; ++i) poly.emplace_back((long long)field.modulus()[i]);
    poly.emplace_back(1);
    return StepSpec::unramified_deg(f, std::move(poly));
}

int Tower::top_kummer_exponent() const {
    if (steps_.empty() || steps_.back().kind != StepKind::kummer) return 0;
    return steps_.back().d;
}

std::string Tower::describe() const {
    std::ostringstream os;
    os << "Tower(p=" << p_ << ", e=" << e_ << ", f=" << f_ << ", q=" << q_ << ", deg="
       << S_.back() << ", R=" << R_ << ", Kp=" << Kp_ << ", basis=" << basis_desc_ << ")";
    return os.str();
}

} // namespace varpi
