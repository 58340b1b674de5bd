#include "varpi/gf.hpp"

#include <algorithm>

namespace varpi {

namespace {

// dense polynomial arithmetic over F_p, low degree first, trailing zeros trimmed
using Poly = std::vector<uint32_t>;

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul(long long p, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (uint32_t)(((uint64_t)a[i] * b[j] + r[i + j]) % (uint64_t)p);
    return trim(r);
}

// a mod f, f monic
Poly poly_mod(long long p, Poly a, const Poly& f) {
    a = trim(a);
    while (a.size() >= f.size()) {
        uint64_t lead = a.back();
        size_t shift = a.size() - f.size();
        for (size_t i = 0; i < f.size(); ++i) {
            uint64_t sub = lead * f[i] % (uint64_t)p;
            uint64_t cur = a[i + shift];
            a[i + shift] = (uint32_t)((cur + (uint64_t)p - sub) % (uint64_t)p);
        }
        a = trim(a);
    }
    return a;
}

Poly poly_powmod(long long p, Poly base, long long k, const Poly& f) {
    Poly r{1};
    base = poly_mod(p, std::move(base), f);
    while (k > 0) {
        if (k & 1) r = poly_mod(p, poly_mul(p, r, base), f);
        base = poly_mod(p, poly_mul(p, base, base), f);
        k >>= 1;
    }
    return r;
}

Poly poly_gcd(long long p, Poly a, Poly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        // make b monic for the mod step
        uint64_t lc = b.back();
        if (lc != 1) {
            // invert lc mod p
            uint64_t inv = 1, base = lc, e = (uint64_t)p - 2;
            while (e) {
                if (e & 1) inv = inv * base % (uint64_t)p;
                base = base * base % (uint64_t)p;
                e >>= 1;
            }
            for (auto& c : b) c = (uint32_t)((uint64_t)c * inv % (uint64_t)p);
        }
        Poly r = poly_mod(p, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<long long> prime_divisors(long long n) {
    std::vector<long long> out;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

} // namespace

bool GF::poly_irreducible(long long p, const Poly& f) {
    int n = (int)f.size() - 1;
    // x^{p^n} == x mod f, and gcd(x^{p^{n/d}} - x, f) == 1 for prime d | n
    long long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    Poly x{0, 1};
    Poly xq = poly_powmod(p, x, pn, f);
    Poly diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = (uint32_t)((diff[1] + (uint64_t)p - 1) % (uint64_t)p);
    if (!trim(diff).empty()) return false;
    for (long long d : prime_divisors(n)) {
        long long pm = 1;
        for (int i = 0; i < n / d; ++i) pm *= p;
        Poly xm = poly_powmod(p, x, pm, f);
        Poly g = xm;
        g.resize(std::max<size_t>(g.size(), 2), 0);
        g[1] = (uint32_t)((g[1] + (uint64_t)p - 1) % (uint64_t)p);
        Poly gg = poly_gcd(p, f, trim(g));
        if ((int)trim(gg).size() - 1 != 0) return false;
    }
    return true;
}

GF::GF(long long p, int n) : p_(p), n_(n) {
    if (p < 2 || n < 1 || n > 16) throw domain_error("gf: bad parameters");
    if (n == 1) {
        mod_ = {0, 1};
        return;
    }
    // brute-force search for a monic irreducible of degree n
    long long count = 1;
    for (int i = 0; i < n; ++i) count *= p;
    for (long long tail = 0; tail < count; ++tail) {
        Poly f(n + 1, 0);
        f[n] = 1;
        long long t = tail;
        for (int i = 0; i < n; ++i) {
            f[i] = (uint32_t)(t % p);
            t /= p;
        }
        if (f[0] == 0) continue;
        if (poly_irreducible(p, f)) {
            mod_ = f;
            return;
        }
    }
    throw domain_error("gf: no irreducible found"); // unreachable
}

GF::GF(long long p, int n, std::vector<uint32_t> modulus) : p_(p), n_(n), mod_(std::move(modulus)) {
    if ((int)mod_.size() != n + 1 || mod_.back() != 1)
        throw domain_error("gf: modulus must be monic of the stated degree");
    if (n > 1 && !poly_irreducible(p, mod_)) throw domain_error("gf: reducible modulus");
}

long long GF::order() const {
    long long o = 1;
    for (int i = 0; i < n_; ++i) o *= p_;
    return o;
}

GFElem GF::from_int(long long v) const {
    GFElem a = zero();
    long long m = v % p_;
    if (m < 0) m += p_;
    a.c[0] = (uint32_t)m;
    return a;
}

GFElem GF::gen() const {
    GFElem a = zero();
    if (n_ == 1) throw domain_error("gf: prime field has no generator element");
    a.c[1] = 1;
    return a;
}

bool GF::is_zero(const GFElem& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](uint32_t x) { return x == 0; });
}

GFElem GF::add(const GFElem& a, const GFElem& b) const {
    GFElem r = zero();
    for (int i = 0; i < n_; ++i) r.c[i] = (uint32_t)(((uint64_t)a.c[i] + b.c[i]) % (uint64_t)p_);
    return r;
}

GFElem GF::sub(const GFElem& a, const GFElem& b) const {
    GFElem r = zero();
    for (int i = 0; i < n_; ++i)
        r.c[i] = (uint32_t)(((uint64_t)a.c[i] + (uint64_t)p_ - b.c[i]) % (uint64_t)p_);
    return r;
}

GFElem GF::neg(const GFElem& a) const { return sub(zero(), a); }

GFElem GF::mul(const GFElem& a, const GFElem& b) const {
    Poly prod = poly_mul(p_, a.c, b.c);
    Poly red = poly_mod(p_, std::move(prod), mod_);
    GFElem r = zero();
    for (size_t i = 0; i < red.size(); ++i) r.c[i] = red[i];
    return r;
}

GFElem GF::pow(GFElem a, long long k) const {
    GFElem r = one();
    while (k > 0) {
        if (k & 1) r = mul(r, a);
        a = mul(a, a);
        k >>= 1;
    }
    return r;
}

GFElem GF::inv(const GFElem& a) const {
    if (is_zero(a)) throw domain_error("gf: inverse of zero");
    return pow(a, order() - 2);
}

GFElem GF::from_index(long long i) const {
    GFElem a = zero();
    for (int k = 0; k < n_; ++k) {
        a.c[k] = (uint32_t)(i % p_);
        i /= p_;
    }
    return a;
}

long long GF::to_index(const GFElem& a) const {
    long long i = 0;
    for (int k = n_ - 1; k >= 0; --k) i = i * p_ + a.c[k];
    return i;
}

GFElem GF::multiplicative_generator() const {
    long long o = order() - 1;
    auto divs = prime_divisors(o);
    for (long long i = 1; i < order(); ++i) {
        GFElem g = from_index(i);
        bool ok = true;
        for (long long d : divs)
            if (pow(g, o / d) == one()) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw domain_error("gf: no multiplicative generator"); // unreachable
}

GFElem GF::eval(const std::vector<GFElem>& poly, const GFElem& x) const {
    GFElem r = zero();
    for (size_t i = poly.size(); i-- > 0;) r = add(mul(r, x), poly[i]);
    return r;
}

std::vector<GFElem> GF::roots(const std::vector<GFElem>& poly) const {
    std::vector<GFElem> out;
    for (long long i = 0; i < order(); ++i) {
        GFElem x = from_index(i);
        if (is_zero(eval(poly, x))) out.push_back(x);
    }
    return out;
}

std::string GF::str(const GFElem& a) const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
        if (i) s += ",";
        s += std::to_string(a.c[i]);
    }
    return s + "]";
}

} // namespace varpi
