#include "varpi/hopf.hpp"

#ifdef VARPI_HAVE_OPENMP
#include <omp.h>
#endif

namespace varpi {
namespace hopf {

namespace {
bool g_parallel = true;

bool nonzero(const Element& e) {
    for (uint64_t d : e.digits())
        if (d) return true;
    return false;
}
} // namespace

void set_parallel(bool on) { g_parallel = on; }
bool parallel_enabled() { return g_parallel; }

Poly poly_zero(const Context& cx) { return Poly((size_t)cx.q, cx.tw->zero()); }

Poly poly_one(const Context& cx) {
    Poly p = poly_zero(cx);
    p[0] = cx.tw->one();
    return p;
}

Tensor2 t2_zero(const Context& cx) {
    return Tensor2((size_t)cx.q * cx.q, cx.tw->zero());
}

Tensor3 t3_zero(const Context& cx) {
    return Tensor3((size_t)cx.q * cx.q * cx.q, cx.tw->zero());
}

Poly poly_mul(const Context& cx, const Poly& a, const Poly& b) {
    const long long q = cx.q;
    std::vector<Element> tmp((size_t)(2 * q - 1), cx.tw->zero());
    for (long long i = 0; i < q; ++i) {
        if (!nonzero(a[i])) continue;
        for (long long j = 0; j < q; ++j) {
            if (!nonzero(b[j])) continue;
            tmp[i + j] = tmp[i + j] + a[i] * b[j];
        }
    }
    // x^{q+t} = redc x^{t+1}
    for (long long d = 2 * q - 2; d >= q; --d) {
        if (!nonzero(tmp[d])) continue;
        tmp[d - q + 1] = tmp[d - q + 1] + cx.redc * tmp[d];
    }
    return Poly(tmp.begin(), tmp.begin() + q);
}

Poly poly_pow(const Context& cx, Poly a, long long k) {
    Poly r = poly_one(cx);
    while (k > 0) {
        if (k & 1) r = poly_mul(cx, r, a);
        if ((k >>= 1)) a = poly_mul(cx, a, a);
    }
    return r;
}

namespace {

// shared by the serial and parallel kernels: reduce both axes of the
// pre-reduction (2q-1) x (2q-1) convolution table
Tensor2 reduce_t2(const Context& cx, std::vector<Element>& big) {
    const long long q = cx.q;
    const long long w = 2 * q - 1;
    // rows (first slot)
    for (long long u = w - 1; u >= q; --u)
        for (long long v = 0; v < w; ++v) {
            Element& src = big[(size_t)u * w + v];
            if (!nonzero(src)) continue;
            size_t dst = (size_t)(u - q + 1) * w + v;
            big[dst] = big[dst] + cx.redc * src;
        }
    // columns (second slot)
    for (long long v = w - 1; v >= q; --v)
        for (long long u = 0; u < q; ++u) {
            Element& src = big[(size_t)u * w + v];
            if (!nonzero(src)) continue;
            size_t dst = (size_t)u * w + (v - q + 1);
            big[dst] = big[dst] + cx.redc * src;
        }
    Tensor2 out = t2_zero(cx);
    for (long long u = 0; u < q; ++u)
        for (long long v = 0; v < q; ++v) out[(size_t)u * q + v] = big[(size_t)u * w + v];
    return out;
}

} // namespace

Tensor2 t2_mul_serial(const Context& cx, const Tensor2& a, const Tensor2& b) {
    const long long q = cx.q;
    const long long w = 2 * q - 1;
    std::vector<Element> big((size_t)w * w, cx.tw->zero());
    for (long long i = 0; i < q; ++i)
        for (long long j = 0; j < q; ++j) {
            const Element& aij = a[(size_t)i * q + j];
            if (!nonzero(aij)) continue;
            for (long long k = 0; k < q; ++k)
                for (long long l = 0; l < q; ++l) {
                    const Element& bkl = b[(size_t)k * q + l];
                    if (!nonzero(bkl)) continue;
                    size_t idx = (size_t)(i + k) * w + (j + l);
                    big[idx] = big[idx] + aij * bkl;
                }
        }
    return reduce_t2(cx, big);
}

#ifdef VARPI_HAVE_OPENMP
Tensor2 t2_mul_parallel(const Context& cx, const Tensor2& a, const Tensor2& b) {
    const long long q = cx.q;
    const long long w = 2 * q - 1;
    std::vector<Element> big((size_t)w * w, cx.tw->zero());
    // output-indexed accumulation: each pre-reduction slot is independent
#pragma omp parallel for collapse(2) schedule(dynamic)
    for (long long u = 0; u < w; ++u)
        for (long long v = 0; v < w; ++v) {
            Element acc = cx.tw->zero();
            bool any = false;
            for (long long i = std::max(0LL, u - q + 1); i <= std::min(u, q - 1); ++i)
                for (long long j = std::max(0LL, v - q + 1); j <= std::min(v, q - 1); ++j) {
                    const Element& aij = a[(size_t)i * q + j];
                    if (!nonzero(aij)) continue;
                    const Element& bkl = b[(size_t)(u - i) * q + (v - j)];
                    if (!nonzero(bkl)) continue;
                    acc = any ? acc + aij * bkl : aij * bkl;
                    any = true;
                }
            if (any) big[(size_t)u * w + v] = std::move(acc);
        }
    return reduce_t2(cx, big);
}
#endif

Tensor2 t2_mul(const Context& cx, const Tensor2& a, const Tensor2& b) {
#ifdef VARPI_HAVE_OPENMP
    if (g_parallel) return t2_mul_parallel(cx, a, b);
#endif
    return t2_mul_serial(cx, a, b);
}

Tensor2 outer(const Context& cx, const Poly& a, const Poly& b) {
    const long long q = cx.q;
    Tensor2 out = t2_zero(cx);
    for (long long i = 0; i < q; ++i) {
        if (!nonzero(a[i])) continue;
        for (long long j = 0; j < q; ++j) {
            if (!nonzero(b[j])) continue;
            out[(size_t)i * q + j] = a[i] * b[j];
        }
    }
    return out;
}

namespace {
Rational diff_val(const std::vector<Element>& a, const std::vector<Element>& b,
                  Rational* cap_out) {
    Rational best = Rational::infinity();
    Rational cap = Rational::infinity();
    for (size_t i = 0; i < a.size(); ++i) {
        Element d = a[i] - b[i];
        cap = min(cap, d.cap());
        auto v = d.val();
        if (v.v.is_infinite() || !v.certified) continue; // equal to precision
        best = min(best, v.v);
    }
    if (cap_out) *cap_out = cap;
    return best;
}
} // namespace

Rational t2_difference_valuation(const Context&, const Tensor2& a, const Tensor2& b,
                                 Rational* cap_out) {
    return diff_val(a, b, cap_out);
}
Rational t3_difference_valuation(const Context&, const Tensor3& a, const Tensor3& b,
                                 Rational* cap_out) {
    return diff_val(a, b, cap_out);
}
Rational poly_difference_valuation(const Context&, const Poly& a, const Poly& b,
                                   Rational* cap_out) {
    return diff_val(a, b, cap_out);
}

} // namespace hopf
} // namespace varpi
