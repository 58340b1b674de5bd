#include <algorithm>
#include <cassert>
#include <sstream>

#include "varpi/tower.hpp"

namespace varpi {

// ---------------------------------------------------------------------------
// raw span helpers

bool Tower::zero_span(int k, const uint64_t* a) const {
    int S = S_[k];
    for (int i = 0; i < S; ++i)
        if (a[i] != 0) return false;
    return true;
}

void Tower::add_span(int k, const uint64_t* a, const uint64_t* b, uint64_t* out) const {
    int S = S_[k];
    for (int i = 0; i < S; ++i) out[i] = addmod(a[i], b[i]);
}

void Tower::sub_span(int k, const uint64_t* a, const uint64_t* b, uint64_t* out) const {
    int S = S_[k];
    for (int i = 0; i < S; ++i) out[i] = submod(a[i], b[i]);
}

void Tower::scal_span(int k, const uint64_t* a, uint64_t c, uint64_t* out) const {
    int S = S_[k];
    for (int i = 0; i < S; ++i) out[i] = mulmod(a[i], c);
}

void Tower::mul_span(int k, const uint64_t* a, const uint64_t* b, uint64_t* out,
                     std::vector<uint64_t>& scratch) const {
    if (k == 0) {
        out[0] = mulmod(a[0], b[0]);
        return;
    }
    const Step& st = steps_[k - 1];
    const int d = st.d;
    const int S = S_[k - 1];
    // per-level scratch region: tmp[(2d-1)*S] then prod[S]
    size_t off = 0;
    for (int j = 1; j < k; ++j) off += (size_t)(2 * steps_[j - 1].d) * S_[j - 1];
    if (scratch.size() < off + (size_t)(2 * d) * S) scratch.resize(off + (size_t)(2 * d) * S);
    uint64_t* tmp = scratch.data() + off;
    uint64_t* prod = tmp + (size_t)(2 * d - 1) * S;
    std::fill(tmp, tmp + (size_t)(2 * d - 1) * S, 0);

    for (int i = 0; i < d; ++i) {
        const uint64_t* ai = a + (size_t)i * S;
        if (zero_span(k - 1, ai)) continue;
        for (int j = 0; j < d; ++j) {
            const uint64_t* bj = b + (size_t)j * S;
            if (zero_span(k - 1, bj)) continue;
            mul_span(k - 1, ai, bj, prod, scratch);
            add_span(k - 1, tmp + (size_t)(i + j) * S, prod, tmp + (size_t)(i + j) * S);
        }
    }
    for (int deg = 2 * d - 2; deg >= d; --deg) {
        uint64_t* c = tmp + (size_t)deg * S;
        if (zero_span(k - 1, c)) continue;
        for (int t : st.tail_nonzero) {
            mul_span(k - 1, c, st.reduce_tail.data() + (size_t)t * S, prod, scratch);
            int dst = deg - d + t;
            add_span(k - 1, tmp + (size_t)dst * S, prod, tmp + (size_t)dst * S);
        }
    }
    std::copy(tmp, tmp + (size_t)d * S, out);
}

int Tower::vp_digit(uint64_t d) const {
    if (d == 0) return Kp_;
    int v = 0;
    while (d % (uint64_t)p_ == 0) {
        d /= (uint64_t)p_;
        ++v;
    }
    return v;
}

// valuation of a span in val(p)=e units (i.e. the final val(varpi)=1
// normalization); +inf if the span is zero
Rational Tower::val_span(int k, const uint64_t* a) const {
    if (k == 0) {
        int v = vp_digit(a[0]);
        if (v >= Kp_) return Rational::infinity();
        return Rational(v) * Rational(e_);
    }
    const Step& st = steps_[k - 1];
    const int S = S_[k - 1];
    Rational best = Rational::infinity();
    for (int i = 0; i < st.d; ++i) {
        Rational vi = val_span(k - 1, a + (size_t)i * S);
        if (vi.is_infinite()) continue;
        vi = vi + st.gen_val * Rational(i);
        best = min(best, vi);
    }
    return best;
}

GFElem Tower::res_span(int k, const uint64_t* a) const {
    if (k == 0) return gf_.from_int((long long)(a[0] % (uint64_t)p_));
    const Step& st = steps_[k - 1];
    const int S = S_[k - 1];
    if (st.kind == StepKind::unramified) {
        GFElem r = gf_.zero();
        for (int i = 0; i < st.d; ++i)
            r = gf_.add(r, gf_.mul(res_span(k - 1, a + (size_t)i * S),
                                   gf_.pow(st.gen_residue, i)));
        return r;
    }
    return res_span(k - 1, a); // ramified generator has residue 0
}

// ---------------------------------------------------------------------------
// element constructors

Element Tower::finish(std::vector<uint64_t> digits, int pden, Rational cap) const {
    cap = min(cap, Rational((long long)(Kp_ - pden)) * Rational(e_));
    Element e(this, std::move(digits), pden, cap);
    e.normalize();
    if (!(e.cap_ > Rational(0)))
        throw precision_error("operation left no certified digits (tower " + basis_desc_ + ")");
    return e;
}

Element Tower::zero() const {
    return Element(this, std::vector<uint64_t>(S_.back(), 0), 0,
                   Rational((long long)Kp_) * Rational(e_));
}

Element Tower::one() const { return from_int(1); }

Element Tower::from_int(long long v) const {
    std::vector<uint64_t> d(S_.back(), 0);
    long long m = v % (long long)pK_;
    if (m < 0) m += (long long)pK_;
    d[0] = (uint64_t)m;
    return finish(std::move(d), 0, Rational((long long)Kp_) * Rational(e_));
}

Element Tower::monomial(size_t flat_index) const {
    if (flat_index >= (size_t)S_.back()) throw domain_error("monomial: index out of range");
    std::vector<uint64_t> d(S_.back(), 0);
    d[flat_index] = 1;
    return finish(std::move(d), 0, Rational((long long)Kp_) * Rational(e_));
}

Element Tower::from_digits(const std::vector<uint64_t>& digits, int pden, Rational cap) const {
    if (digits.size() != (size_t)S_.back()) throw domain_error("from_digits: wrong length");
    std::vector<uint64_t> d = digits;
    for (auto& x : d) x %= pK_;
    return finish(std::move(d), pden, cap);
}

Element Tower::gen(int level) const {
    if (level < 1 || level > (int)steps_.size()) throw domain_error("gen: bad level");
    return monomial((size_t)S_[level - 1]);
}

Element Tower::gen_pow(int level, long long k) const {
    if (level < 1 || level > (int)steps_.size()) throw domain_error("gen_pow: bad level");
    const Step& st = steps_[level - 1];
    if (st.kind == StepKind::kummer) {
        long long m = st.d;
        long long r = ((k % m) + m) % m;
        long long s = (k - r) / m;
        // gen^k = c^s * gen^r with c the kummer base (a lower-level element)
        Element base = monomial((size_t)r * S_[level - 1]);
        if (s == 0) return base;
        std::vector<uint64_t> cd(S_.back(), 0);
        std::copy(st.reduce_tail.begin(), st.reduce_tail.begin() + S_[level - 1], cd.begin());
        Element c = finish(std::move(cd), 0, Rational((long long)Kp_) * Rational(e_));
        Element cs = (s > 0) ? c.pow(s) : inverse_level(c, level - 1).pow(-s);
        return base * cs;
    }
    if (k >= 0) return gen(level).pow(k);
    // negative powers of an eisenstein/unramified generator
    if (st.kind == StepKind::unramified) return unit_inverse(gen(level)).pow(-k);
    // eisenstein: gen^{-1} = -(gen^{d-1} + c_{d-1} gen^{d-2} + ... + c_1)/c_0
    // from the monic relation; reduce_tail holds -c_i.
    int S = S_[level - 1];
    Element acc = monomial((size_t)(st.d - 1) * S);
    for (int i = 1; i < st.d; ++i) {
        std::vector<uint64_t> cd(S_.back(), 0);
        for (int j = 0; j < S; ++j) cd[j] = submod(0, st.reduce_tail[(size_t)i * S + j]);
        Element ci = finish(std::move(cd), 0, Rational((long long)Kp_) * Rational(e_));
        acc = acc + ci * monomial((size_t)(i - 1) * S);
    }
    std::vector<uint64_t> c0d(S_.back(), 0);
    for (int j = 0; j < S; ++j) c0d[j] = st.reduce_tail[j]; // -c_0
    Element negc0 = finish(std::move(c0d), 0, Rational((long long)Kp_) * Rational(e_));
    Element inv = acc * inverse_level(negc0, level - 1);
    return inv.pow(-k);
}

Element Tower::val_shift_level(int level, long long k) const {
    Element r = one();
    if (k == 0) return r;
    for (const auto& [lvl, coeff] : bezout_upto_[level]) {
        long long ex = coeff * k;
        if (ex == 0) continue;
        if (lvl == -1) {
            if (ex > 0)
                r = r * from_int(p_).pow(ex);
            else
                r = r.div_p_pow((int)(-ex));
        } else {
            r = r * gen_pow(lvl, ex);
        }
    }
    return r;
}

Element Tower::val_shift(long long k) const { return val_shift_level((int)steps_.size(), k); }

Element Tower::inverse_level(const Element& x, int level) const {
    ValuationResult vr = x.val();
    if (vr.v.is_infinite() || !vr.certified)
        throw precision_error("inverse: no certified valuation (zero to precision?)");
    Rational scaled = vr.v / shift_unit_[level];
    if (!scaled.is_integer())
        throw domain_error("inverse: valuation outside the level's value group");
    long long k = scaled.num();
    Element u = x * val_shift_level(level, -k);
    Element ui = unit_inverse(u);
    return ui * val_shift_level(level, -k);
}

// ---------------------------------------------------------------------------
// residue field interface

GFElem Tower::residue(const Element& x) const {
    Element y = x;
    y.normalize();
    if (y.pden() != 0) throw domain_error("residue: element is not integral");
    return res_span((int)steps_.size(), y.digits().data());
}

Element Tower::lift_residue(const GFElem& r) const {
    std::vector<uint64_t> d(S_.back(), 0);
    // coordinates in the residue monomial basis: res_lift_inv_ * r
    for (int row = 0; row < f_tot_; ++row) {
        uint64_t acc = 0;
        for (int col = 0; col < f_tot_; ++col)
            acc = (acc + (uint64_t)res_lift_inv_[row][col] * r.c[col]) % (uint64_t)p_;
        d[res_basis_flat_[row]] = acc;
    }
    return finish(std::move(d), 0, Rational((long long)Kp_) * Rational(e_));
}

GFElem Tower::kappa_embed(long long z_index) const {
    if (z_index < 0 || z_index >= q_) throw domain_error("kappa_embed: index out of range");
    GFElem r = gf_.zero();
    GFElem gp = gf_.one();
    for (int k = 0; k < f_; ++k) {
        long long digit = z_index % p_;
        z_index /= p_;
        r = gf_.add(r, gf_.mul(gf_.from_int(digit), gp));
        gp = gf_.mul(gp, kappa_emb_);
    }
    return r;
}

long long Tower::kappa_trace(const GFElem& z) const {
    GFElem acc = gf_.zero();
    GFElem cur = z;
    for (int k = 0; k < f_; ++k) {
        acc = gf_.add(acc, cur);
        cur = gf_.pow(cur, p_);
    }
    for (int i = 1; i < f_tot_; ++i)
        if (acc.c[i] != 0) throw domain_error("kappa_trace: trace left the prime field");
    return acc.c[0];
}

// ---------------------------------------------------------------------------
// higher operations

Element Tower::unit_inverse(const Element& u) const {
    GFElem r = residue(u);
    if (gf_.is_zero(r)) throw domain_error("unit_inverse: residue is zero");
    Element z = lift_residue(gf_.inv(r));
    Element two = from_int(2);
    for (int it = 0; it < 64; ++it) {
        Element err = one() - u * z;
        if (err.is_zero_to_precision()) break;
        z = z * (two - u * z);
    }
    return z;
}

Element Tower::teichmuller(long long z_index) const {
    if (z_index < 0 || z_index >= q_) throw domain_error("teichmuller: index out of range");
    if (z_index == 0) return zero();
    return teichmuller_of(kappa_embed(z_index), q_);
}

Element Tower::teichmuller_of(const GFElem& r, long long order) const {
    if (gf_.is_zero(r)) return zero();
    auto F = [&](const Element& x) { return x.pow(order) - x; };
    auto dF = [&](const Element& x) { return x.pow(order - 1).mul_int(order) - one(); };
    return newton_root(F, dF, lift_residue(r));
}

Element Tower::newton_root(const std::function<Element(const Element&)>& F,
                           const std::function<Element(const Element&)>& dF, Element x0) const {
    Element x = std::move(x0);
    Rational last = Rational(-1000000);
    for (int it = 0; it < 200; ++it) {
        Element fx = F(x);
        if (fx.is_zero_to_precision()) return x;
        Element step = fx * dF(x).inverse();
        Rational v = fx.val().v;
        if (!(v > last)) throw precision_error("newton_root: no progress (bad starting point?)");
        last = v;
        x = x - step;
    }
    throw precision_error("newton_root: did not converge");
}

// ---------------------------------------------------------------------------
// Element methods

void Element::normalize() {
    if (!tw_) return;
    bool all_zero = true;
    int g = tw_->Kp_;
    for (uint64_t d : digits_) {
        if (d != 0) {
            all_zero = false;
            g = std::min(g, tw_->vp_digit(d));
            if (g == 0) break;
        }
    }
    if (all_zero) {
        pden_ = 0;
        return;
    }
    g = std::min(g, pden_);
    if (g > 0) {
        uint64_t pg = 1;
        for (int i = 0; i < g; ++i) pg *= (uint64_t)tw_->p_;
        for (auto& d : digits_) d /= pg;
        pden_ -= g;
    }
    vcache_.reset();
}

Rational Element::storage_cap() const {
    return Rational((long long)(tw_->Kp_ - pden_)) * Rational(tw_->e_);
}

Rational Element::val_lower_bound() const {
    if (vcache_) return *vcache_;
    return Rational(-(long long)pden_) * Rational(tw_->e_);
}

ValuationResult Element::val() const {
    if (!tw_) throw domain_error("val: empty element");
    Rational shift = Rational(-(long long)pden_) * Rational(tw_->e_);
    if (vcache_) return {*vcache_, *vcache_ < cap_, cap_};
    Rational raw = tw_->val_span((int)tw_->steps_.size(), digits_.data());
    if (raw.is_infinite()) return {Rational::infinity(), false, cap_};
    Rational v = raw + shift;
    bool cert = v < cap_;
    if (cert) vcache_ = v;
    return {v, cert, cap_};
}

bool Element::is_zero_to_precision() const {
    ValuationResult r = val();
    if (r.v.is_infinite()) return true;
    return !(r.v < cap_);
}

Element Element::operator+(const Element& o) const {
    if (tw_ != o.tw_) throw domain_error("add: mixed towers");
    int pd = std::max(pden_, o.pden_);
    std::vector<uint64_t> out(digits_.size());
    uint64_t sa = 1, sb = 1;
    for (int i = 0; i < pd - pden_; ++i) sa *= (uint64_t)tw_->p_;
    for (int i = 0; i < pd - o.pden_; ++i) sb *= (uint64_t)tw_->p_;
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = tw_->addmod(tw_->mulmod(digits_[i], sa), tw_->mulmod(o.digits_[i], sb));
    return tw_->finish(std::move(out), pd, min(cap_, o.cap_));
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const {
    std::vector<uint64_t> out(digits_.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = tw_->submod(0, digits_[i]);
    return tw_->finish(std::move(out), pden_, cap_);
}

Element Element::operator*(const Element& o) const {
    if (tw_ != o.tw_) throw domain_error("mul: mixed towers");
    std::vector<uint64_t> out(digits_.size(), 0);
    std::vector<uint64_t> scratch;
    tw_->mul_span((int)tw_->steps_.size(), digits_.data(), o.digits_.data(), out.data(), scratch);
    Rational c = min(cap_ + o.val_lower_bound(), o.cap_ + val_lower_bound());
    return tw_->finish(std::move(out), pden_ + o.pden_, c);
}

Element Element::mul_int(long long c) const {
    long long m = c % (long long)tw_->pK_;
    if (m < 0) m += (long long)tw_->pK_;
    std::vector<uint64_t> out(digits_.size());
    tw_->scal_span((int)tw_->steps_.size(), digits_.data(), (uint64_t)m, out.data());
    // val_p(c) only raises the cap; ignore it (conservative)
    return tw_->finish(std::move(out), pden_, cap_);
}

Element Element::div_p_pow(int k) const {
    if (k < 0) throw domain_error("div_p_pow: negative exponent");
    return tw_->finish(digits_, pden_ + k, cap_ - Rational((long long)k) * Rational(tw_->e_));
}

Element Element::div_int(long long c) const {
    if (c == 0) throw domain_error("div_int: division by zero");
    bool neg = c < 0;
    unsigned long long a = neg ? (unsigned long long)(-(c + 1)) + 1 : (unsigned long long)c;
    int s = 0;
    while (a % (unsigned long long)tw_->p_ == 0) {
        a /= (unsigned long long)tw_->p_;
        ++s;
    }
    // modular inverse of the unit part mod p^Kp
    uint64_t u = (uint64_t)(a % tw_->pK_);
    long long x, y;
    auto egcd = [](long long aa, long long bb, long long& xx, long long& yy, auto&& self) -> long long {
        if (bb == 0) {
            xx = 1;
            yy = 0;
            return aa;
        }
        long long x1, y1;
        long long g = self(bb, aa % bb, x1, y1, self);
        xx = y1;
        yy = x1 - (aa / bb) * y1;
        return g;
    };
    long long g = egcd((long long)u, (long long)tw_->pK_, x, y, egcd);
    if (g != 1) throw domain_error("div_int: not a unit after stripping p");
    long long inv = x % (long long)tw_->pK_;
    if (inv < 0) inv += (long long)tw_->pK_;
    Element r = mul_int(inv);
    if (neg) r = -r;
    return tw_->finish(r.digits_, r.pden_ + s,
                       r.cap_ - Rational((long long)s) * Rational(tw_->e_));
}

Element Element::inverse() const {
    return tw_->inverse_level(*this, (int)tw_->steps_.size());
}

Element Element::operator/(const Element& o) const { return *this * o.inverse(); }

Element Element::pow(long long k) const {
    if (k < 0) return inverse().pow(-k);
    Element r = tw_->one();
    Element b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        if ((k >>= 1)) b = b * b;
    }
    return r;
}

bool Element::eq_to_precision(const Element& o) const {
    return (*this - o).is_zero_to_precision();
}

Rational Element::difference_valuation(const Element& o) const {
    Element d = *this - o;
    ValuationResult r = d.val();
    if (r.v.is_infinite() || !r.certified) return Rational::infinity();
    return r.v;
}

std::string Element::str() const {
    if (!tw_) return "<empty>";
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < digits_.size(); ++i) {
        if (i) os << ",";
        os << digits_[i];
    }
    os << "]";
    if (pden_) os << "/p^" << pden_;
    os << " cap=" << cap_.str();
    return os.str();
}

// ---------------------------------------------------------------------------
// p-adic log / exp

Rational plog_valuation_bound(long long p, int e, const Rational& v) {
    if (!(v > Rational(0))) throw domain_error("plog bound: needs val > 0");
    Rational best = v;
    long long pj = 1;
    for (int j = 1; j <= 60; ++j) {
        if (pj > ((long long)1 << 50) / p) break; // later terms are huge and positive
        pj *= p;
        Rational term = Rational(pj) * v - Rational((long long)j * e);
        best = min(best, term);
    }
    return best;
}

namespace {
// smallest K with k*v - e*(floor(log_p k) + 1) >= cap for all k >= K
long long series_term_count(long long p, int e, const Rational& v, const Rational& cap) {
    long long k = 1;
    for (;;) {
        Rational logs(0);
        long long kk = k;
        while (kk >= p) {
            kk /= p;
            logs = logs + Rational(e);
        }
        Rational lb = Rational(k) * v - logs - Rational(e);
        // past the turning point of k*v - e*log_p(k) and clearing the cap
        if (lb >= cap && Rational(k) * v > Rational(2 * e)) return k;
        ++k;
        if (k > 1 << 20) throw precision_error("p-adic series: term bound explosion");
    }
}
} // namespace

Element plog(const Element& x) {
    const Tower* tw = x.tower();
    if (!tw) throw domain_error("plog: empty element");
    Element y = x - tw->one();
    ValuationResult vy = y.val();
    if (vy.v.is_infinite()) return tw->zero();
    if (!vy.certified || !(vy.v > Rational(0)))
        throw domain_error("plog: requires val(x-1) > 0");
    long long kmax = series_term_count(tw->p(), tw->e(), vy.v, y.cap());
    // sum_{k>=1} (-1)^{k+1} y^k / k
    Element acc = tw->zero();
    Element yk = tw->one();
    for (long long k = 1; k <= kmax; ++k) {
        yk = yk * y;
        Element term = yk.div_int(k);
        if (k % 2 == 0) term = -term;
        acc = acc + term;
    }
    return acc;
}

Element pexp(const Element& y) {
    const Tower* tw = y.tower();
    if (!tw) throw domain_error("pexp: empty element");
    ValuationResult vy = y.val();
    if (vy.v.is_infinite()) return tw->one();
    Rational bound = Rational(tw->e()) / Rational(tw->p() - 1);
    if (!vy.certified || !(vy.v > bound))
        throw domain_error("pexp: requires val(y) > e/(p-1)");
    // val(y^k/k!) >= k (v - e/(p-1)) and that lower bound is increasing,
    // so the tail past kmax sits above the certified cap
    Rational margin = vy.v - bound;
    Rational capr = y.cap();
    long long kmax = (capr / margin).ceil() + 1;
    Element acc = tw->one();
    Element term = tw->one();
    for (long long k = 1; k <= kmax; ++k) {
        term = (term * y).div_int(k);
        acc = acc + term;
        if (term.is_zero_to_precision() && Rational(k) * margin >= capr) break;
    }
    return acc;
}

} // namespace varpi
