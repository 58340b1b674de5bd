#include "varpi/canonical.hpp"

namespace varpi {

void MulSeries::validate() const {
    if (!tw) throw domain_error("series: empty");
    long long q = tw->q();
    for (const auto& [j, cj] : c) {
        if (j < 2) throw domain_error("series: tail indices start at j = 2");
        auto v = cj.val();
        if (v.v.is_infinite()) continue;
        if (v.v.is_negative()) throw domain_error("series: coefficients must be integral");
        if (j % q != 1 && v.v < Rational(1))
            throw domain_error("series: c_j must lie in varpi R unless j = 1 mod q");
    }
}

MulSeries standard_series(const Tower& tw, const Element& a, long long truncation) {
    MulSeries s;
    s.tw = &tw;
    s.a = a;
    s.c[tw.q() + 1] = tw.one();
    s.truncation = truncation;
    return s;
}

Classification classify(const MulSeries& s) {
    s.validate();
    long long q = s.tw->q();
    if (s.truncation < q * q) throw domain_error("classify: truncation degree below q^2");
    auto it = s.c.find(q + 1);
    if (it == s.c.end() || !(it->second.valuation() == Rational(0)))
        throw domain_error("classify: the x^{q^2} coefficient c_{q+1} must be a unit");
    auto va = s.a.val();
    if (va.v.is_infinite() || !va.certified)
        throw domain_error("classify: val(a) is uncertified (needs val in [0, q/(q+1)))");
    Rational w = va.v;
    if (w.is_negative() || !(w < Rational(q, q + 1)))
        throw domain_error("classify: val(a) out of [0, q/(q+1))");

    Classification out;
    out.polygon = NewtonPolygon::lower_hull({{0, Rational::infinity()},
                                             {1, Rational(1)},
                                             {q, w},
                                             {q * q, Rational(0)}});
    out.ordinary = w == Rational(0);
    out.root_valuations = out.polygon.root_valuations();
    return out;
}

DlogReport hodge_tate_report(const Rational& w, long long q) {
    if (w.is_negative() || w > Rational(1, q))
        throw domain_error("hodge_tate_report: w out of [0, 1/q]");
    DlogReport r;
    r.w = w;
    r.v = w / Rational(q - 1);
    r.exact = w == Rational(0);
    r.canonical_val = (Rational(1) - w) / Rational(q - 1);
    r.noncanonical_val = w / Rational(q * (q - 1));
    r.dual_measure = w;
    r.annihilator_exponent = r.v;
    return r;
}

Rational isogeny_measure_map(const Rational& w, IsogenyKind kind, long long q) {
    if (w.is_negative()) throw domain_error("isogeny map: negative growth");
    if (kind == IsogenyKind::quotient_by_canonical) {
        if (!(Rational(q) * w < Rational(q, q + 1)))
            throw domain_error("isogeny map: quotient by the canonical subgroup needs qw < q/(q+1)");
        return Rational(q) * w;
    }
    if (!(w < Rational(q, q + 1)))
        throw domain_error("isogeny map: growth out of [0, q/(q+1))");
    return w / Rational(q);
}

Rational higher_canonical_domain(int r, long long q) {
    if (r < 1) throw domain_error("higher_canonical_domain: r must be >= 1");
    if (r == 1) return Rational(q, q + 1);
    long long qr = 1;
    for (int i = 0; i < r - 2; ++i) qr *= q;
    return Rational(1, qr * (q + 1));
}

Rational gamma_prime_boundary_e(long long p, int f, const Rational& val_E) {
    long long q = 1;
    for (int i = 0; i < f; ++i) q *= p;
    long long pf1 = 1;
    for (int i = 0; i < f - 1; ++i) pf1 *= p;
    return Rational(p - 1) * (Rational(1) + Rational(pf1) * (Rational(1) - val_E) / Rational(q - 1));
}

bool gamma_prime_vanishes(long long p, int e, int f, const Rational& val_E) {
    if (val_E.is_negative() || val_E > Rational(1))
        throw domain_error("gamma_prime_vanishes: val(E) out of [0, 1]");
    long long q = 1;
    for (int i = 0; i < f; ++i) q *= p;
    long long pk = 1;
    for (int k = 0; k < f; ++k) {
        Rational beta_val =
            Rational(e, p - 1) + Rational(pk) * (val_E - Rational(1)) / Rational(q - 1);
        if (beta_val < Rational(1)) return false;
        pk *= p;
    }
    return true;
}

// ---------------------------------------------------------------------------

CanonicalModel CanonicalModel::build(long long p, int f, const Rational& w, long long unit_seed,
                                     int precision) {
    CanonicalModel m;
    m.tw_ = std::shared_ptr<const Tower>(Tower::canonical_ground(p, f, w, precision));
    const Tower& T = *m.tw_;
    const long long q = T.q();
    const int top = T.levels();
    const long long M = T.top_kummer_exponent();
    m.w_ = w;

    long long a = w.num(), b = w.den();
    if ((M * a) % ((q - 1) * b) != 0) throw domain_error("canonical model: exponent layout");
    long long a1 = (M * a) / ((q - 1) * b); // E_1 exponent
    long long b1 = M / (q - 1);             // (-varpi)^{1/(q-1)} exponent

    Element v = T.one();
    if (unit_seed != 0) v = T.one() + T.gen(top) * T.from_int(unit_seed);

    m.E1_ = T.gen_pow(top, a1) * v;
    m.alpha_ = T.gen_pow(top, b1 - a1) * v.inverse();
    m.E_ = m.E1_.pow(q - 1);

    // defining relations, verified at working precision
    if (!(m.E_.valuation() == w)) throw domain_error("canonical model: val(E) != w");
    if (!(m.alpha_.valuation() == (Rational(1) - w) / Rational(q - 1)))
        throw domain_error("canonical model: val(alpha) wrong");
    Element rel = m.alpha_.pow(q - 1) * m.E_ + *T.varpi();
    if (!rel.is_zero_to_precision())
        throw domain_error("canonical model: alpha^{q-1} != -varpi/E");
    if (!(m.E1_.valuation() == w / Rational(q - 1)))
        throw domain_error("canonical model: val(E_1) wrong");

    m.gauss_ = std::make_unique<GaussTable>(T);
    m.u_ = m.gauss_->unit_u();

    m.ctx_.tw = &T;
    m.ctx_.q = q;
    m.ctx_.redc = m.alpha_.pow(q - 1); // -varpi/E, integral of valuation 1-w

    // comultiplication table
    m.comult_ = hopf::t2_zero(m.ctx_);
    m.comult_[(size_t)1 * q + 0] = T.one();
    m.comult_[(size_t)0 * q + 1] = T.one();
    Element head = -(T.varpi()->pow(T.e() - 1) * m.u_ * m.E_);
    const Element& wt = m.gauss_->raynaud_w_total();
    for (long long i = 1; i <= q - 1; ++i) {
        int hi = h_index(i, p, f, q);
        Element coeff = head * wt.pow(hi - 1) *
                        (m.gauss_->raynaud_w(i) * m.gauss_->raynaud_w(q - i)).inverse();
        m.comult_[(size_t)i * q + (q - i)] = coeff;
    }

    // powers of c(x)
    m.cpow_.clear();
    hopf::Tensor2 unit = hopf::t2_zero(m.ctx_);
    unit[0] = T.one();
    m.cpow_.push_back(std::move(unit));
    m.cpow_.push_back(m.comult_);
    for (long long i = 2; i <= q - 1; ++i)
        m.cpow_.push_back(hopf::t2_mul(m.ctx_, m.cpow_.back(), m.comult_));

    // eta(y)
    Element alpha_inv = T.gen_pow(top, a1 - b1) * v;
    m.beta_.clear();
    long long pk = 1;
    for (int k = 0; k < f; ++k) {
        m.beta_.push_back(m.gauss_->gauss_sum(1) * alpha_inv.pow(pk));
        pk *= p;
    }
    m.eta_ = hopf::poly_zero(m.ctx_);
    m.eta_[0] = T.one();
    for (long long i = 1; i <= q - 1; ++i) {
        int si = digit_sum(i, p, q);
        long long den = 1;
        for (int k = 0; k < si; ++k) den *= (q - 1);
        Element coeff = m.gauss_->raynaud_w(i).inverse().div_int(den);
        long long digits = i;
        for (int k = 0; k < f; ++k) {
            long long dk = digits % p;
            digits /= p;
            if (dk) coeff = coeff * m.beta_[k].pow(dk);
        }
        m.eta_[i] = coeff;
    }
    return m;
}

bool CanonicalModel::counit_ok() const {
    const long long q = ctx_.q;
    for (long long i = 0; i < q; ++i) {
        const Element& e = comult_[(size_t)i * q + 0];
        if (i == 1) {
            if (!e.eq_to_precision(tw_->one())) return false;
        } else {
            if (!e.is_zero_to_precision()) return false;
        }
    }
    return true;
}

Rational CanonicalModel::coassociativity_margin(Rational* cap) const {
    const long long q = ctx_.q;
    hopf::Tensor3 L = hopf::t3_zero(ctx_), R = hopf::t3_zero(ctx_);
    for (long long i = 0; i < q; ++i)
        for (long long j = 0; j < q; ++j) {
            const Element& cij = comult_[(size_t)i * q + j];
            bool any = false;
            for (uint64_t d : cij.digits()) any |= d != 0;
            if (!any) continue;
            const hopf::Tensor2& PI = cpow_[i];
            const hopf::Tensor2& PJ = cpow_[j];
            for (long long k = 0; k < q; ++k)
                for (long long l = 0; l < q; ++l) {
                    const Element& pikl = PI[(size_t)k * q + l];
                    bool nz = false;
                    for (uint64_t d : pikl.digits()) nz |= d != 0;
                    if (nz) {
                        size_t idx = ((size_t)k * q + l) * q + j;
                        L[idx] = L[idx] + cij * pikl;
                    }
                    const Element& pjkl = PJ[(size_t)k * q + l];
                    nz = false;
                    for (uint64_t d : pjkl.digits()) nz |= d != 0;
                    if (nz) {
                        size_t idx = ((size_t)i * q + k) * q + l;
                        R[idx] = R[idx] + cij * pjkl;
                    }
                }
        }
    return hopf::t3_difference_valuation(ctx_, L, R, cap);
}

Rational CanonicalModel::eta_grouplike_margin(Rational* cap) const {
    const long long q = ctx_.q;
    hopf::Tensor2 L = hopf::t2_zero(ctx_);
    for (long long i = 0; i < q; ++i) {
        bool nz = false;
        for (uint64_t d : eta_[i].digits()) nz |= d != 0;
        if (!nz) continue;
        for (size_t s = 0; s < L.size(); ++s) {
            bool pz = false;
            for (uint64_t d : cpow_[i][s].digits()) pz |= d != 0;
            if (pz) L[s] = L[s] + eta_[i] * cpow_[i][s];
        }
    }
    hopf::Tensor2 R = hopf::outer(ctx_, eta_, eta_);
    return hopf::t2_difference_valuation(ctx_, L, R, cap);
}

Rational CanonicalModel::eta_order_p_margin(Rational* cap) const {
    hopf::Poly pw = hopf::poly_pow(ctx_, eta_, tw_->p());
    return hopf::poly_difference_valuation(ctx_, pw, hopf::poly_one(ctx_), cap);
}

bool CanonicalModel::eta_integral() const {
    for (const auto& c : eta_) {
        auto v = c.val();
        if (v.v.is_infinite()) continue;
        if (v.v.is_negative()) return false;
    }
    return true;
}

std::vector<Rational> CanonicalModel::beta_valuations() const {
    std::vector<Rational> out;
    for (const auto& b : beta_) out.push_back(b.valuation());
    return out;
}

CanonicalModel::Differential CanonicalModel::differential_pullback() const {
    const Tower& T = *tw_;
    const long long q = ctx_.q;
    Differential d;
    d.Q = T.varpi()->pow(T.e() - 1) * u_ * E_ *
          gauss_->raynaud_w_total().pow(T.f() - 1) * gauss_->raynaud_w(q - 1).inverse();
    Element denom = T.one() - d.Q * ctx_.redc; // 1 + Q varpi/E
    d.f = hopf::poly_zero(ctx_);
    d.f[0] = T.one();
    d.f[q - 1] = d.Q * denom.inverse();
    // construction check: f (1 - Q x^{q-1}) = 1 in A
    hopf::Poly g = hopf::poly_zero(ctx_);
    g[0] = T.one();
    g[q - 1] = -d.Q;
    hopf::Poly prod = hopf::poly_mul(ctx_, d.f, g);
    if (!hopf::poly_difference_valuation(ctx_, prod, hopf::poly_one(ctx_)).is_infinite())
        throw precision_error("differential: ring inverse failed");
    return d;
}

Rational CanonicalModel::differential_unit_identity_margin(Rational* cap) const {
    const Tower& T = *tw_;
    const long long q = ctx_.q;
    Differential d = differential_pullback();
    hopf::Poly g1 = hopf::poly_zero(ctx_), g2 = hopf::poly_zero(ctx_);
    g1[0] = T.one();
    g1[q - 1] = -(d.Q.mul_int(q - 1));
    g2[0] = T.one();
    g2[q - 1] = -d.Q;
    hopf::Poly prod = hopf::poly_mul(ctx_, g1, g2);
    return hopf::poly_difference_valuation(ctx_, prod, hopf::poly_one(ctx_), cap);
}

Rational CanonicalModel::differential_invariance_margin(Rational* cap) const {
    const Tower& T = *tw_;
    const long long q = ctx_.q;
    Differential d = differential_pullback();
    // LHS: f(X) (x) 1 + 1 (x) f(Y)
    hopf::Tensor2 L = hopf::t2_zero(ctx_);
    for (long long i = 0; i < q; ++i) {
        L[(size_t)i * q + 0] = L[(size_t)i * q + 0] + d.f[i];
        L[(size_t)0 * q + i] = L[(size_t)0 * q + i] + d.f[i];
    }
    // RHS: f(F) (d_X F + d_Y F)
    hopf::Tensor2 D = hopf::t2_zero(ctx_);
    for (long long i = 0; i < q; ++i)
        for (long long j = 0; j < q; ++j) {
            const Element& cij = comult_[(size_t)i * q + j];
            bool nz = false;
            for (uint64_t dd : cij.digits()) nz |= dd != 0;
            if (!nz) continue;
            if (i >= 1) {
                size_t idx = (size_t)(i - 1) * q + j;
                D[idx] = D[idx] + cij.mul_int(i);
            }
            if (j >= 1) {
                size_t idx = (size_t)i * q + (j - 1);
                D[idx] = D[idx] + cij.mul_int(j);
            }
        }
    hopf::Tensor2 fF = hopf::t2_zero(ctx_);
    for (long long k = 0; k < q; ++k) {
        bool nz = false;
        for (uint64_t dd : d.f[k].digits()) nz |= dd != 0;
        if (!nz) continue;
        for (size_t s = 0; s < fF.size(); ++s) {
            bool pz = false;
            for (uint64_t dd : cpow_[k][s].digits()) pz |= dd != 0;
            if (pz) fF[s] = fF[s] + d.f[k] * cpow_[k][s];
        }
    }
    hopf::Tensor2 R = hopf::t2_mul(ctx_, fF, D);
    return hopf::t2_difference_valuation(ctx_, L, R, cap);
}

CanonicalModel::DlogCongruence CanonicalModel::dlog_gamma_congruence() const {
    const Tower& T = *tw_;
    const long long q = ctx_.q;
    const int top = T.levels();
    const long long M = T.top_kummer_exponent();
    long long a1 = (M * w_.num()) / ((q - 1) * w_.den());
    // independent route to E^{1/(q-1)}: Hensel on the unit part of E
    Element uE = E_ * T.gen_pow(top, -(q - 1) * a1);
    GFElem branch = T.residue(E1_ * T.gen_pow(top, -a1));
    auto F = [&](const Element& x) { return x.pow(q - 1) - uE; };
    auto dF = [&](const Element& x) { return x.pow(q - 2).mul_int(q - 1); };
    Element U = T.newton_root(F, dF, T.lift_residue(branch));
    Element rep = T.gen_pow(top, a1) * U;
    Element diff = E1_ - rep;
    DlogCongruence out;
    auto dv = diff.val();
    if (dv.v.is_infinite() || !dv.certified)
        out.exponent = diff.cap();
    else
        out.exponent = dv.v;
    out.meets_bound = out.exponent >= Rational(1) - w_;
    return out;
}

} // namespace varpi
