#ifndef VARPI_HOPF_HPP
#define VARPI_HOPF_HPP

#include <vector>

#include "varpi/tower.hpp"

namespace varpi {
namespace hopf {

/// The finite quotient algebra A = V'[x]/(x^q + (varpi/E) x), carried as the
/// reduction rule x^q = redc * x with redc = -varpi/E (an integral element).
struct Context {
    const Tower* tw = nullptr;
    long long q = 0;
    Element redc;
};

/// Element of A: coefficients of 1, x, ..., x^{q-1}.
using Poly = std::vector<Element>;
/// Element of A (x) A, row-major: entry(i,j) = coefficient of x^i (x) x^j.
using Tensor2 = std::vector<Element>;
/// Element of A (x) A (x) A, index [i*q*q + j*q + k].
using Tensor3 = std::vector<Element>;

Poly poly_zero(const Context& cx);
Poly poly_one(const Context& cx);
Tensor2 t2_zero(const Context& cx);
Tensor3 t3_zero(const Context& cx);

Poly poly_mul(const Context& cx, const Poly& a, const Poly& b);
Poly poly_pow(const Context& cx, Poly a, long long k);

/// Default entry point: uses the OpenMP kernel when compiled in and enabled.
Tensor2 t2_mul(const Context& cx, const Tensor2& a, const Tensor2& b);
/// Reference implementation, kept serial for testing the parallel kernel.
Tensor2 t2_mul_serial(const Context& cx, const Tensor2& a, const Tensor2& b);
#ifdef VARPI_HAVE_OPENMP
Tensor2 t2_mul_parallel(const Context& cx, const Tensor2& a, const Tensor2& b);
#endif

/// a (x) b as a Tensor2.
Tensor2 outer(const Context& cx, const Poly& a, const Poly& b);

/// Largest certified lower bound v such that every entry of (a - b) has
/// valuation >= v; +inf when equal to the joint precision. `cap_out`
/// receives the smallest certification cap among the entries.
Rational t2_difference_valuation(const Context& cx, const Tensor2& a, const Tensor2& b,
                                 Rational* cap_out = nullptr);
Rational t3_difference_valuation(const Context& cx, const Tensor3& a, const Tensor3& b,
                                 Rational* cap_out = nullptr);
Rational poly_difference_valuation(const Context& cx, const Poly& a, const Poly& b,
                                   Rational* cap_out = nullptr);

/// Toggle for the parallel kernels (used by tests and the benchmark).
void set_parallel(bool on);
bool parallel_enabled();

} // namespace hopf
} // namespace varpi

#endif
