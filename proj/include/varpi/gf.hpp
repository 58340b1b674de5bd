#ifndef VARPI_GF_HPP
#define VARPI_GF_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "varpi/errors.hpp"

namespace varpi {

/// An element of a small finite field F_{p^n}; coefficients of a polynomial
/// in the field generator, low degree first, reduced mod p.
struct GFElem {
    std::vector<uint32_t> c;
    bool operator==(const GFElem& o) const { return c == o.c; }
    bool operator!=(const GFElem& o) const { return !(*this == o); }
};

/// Arithmetic in F_{p^n} for small p^n (residue fields of towers). The
/// modulus is a monic irreducible polynomial over F_p, found by brute force.
class GF {
  public:
    GF() = default;
    GF(long long p, int n);
    /// Build with an explicitly given monic modulus (degree n, low first,
    /// leading coefficient included and equal to 1).
    GF(long long p, int n, std::vector<uint32_t> modulus);

    long long p() const { return p_; }
    int degree() const { return n_; }
    long long order() const; // p^n
    const std::vector<uint32_t>& modulus() const { return mod_; }

    GFElem zero() const { return GFElem{std::vector<uint32_t>(n_, 0)}; }
    GFElem one() const { return from_int(1); }
    GFElem from_int(long long v) const;
    GFElem gen() const; // the class generator x (only meaningful for n > 1)

    bool is_zero(const GFElem& a) const;
    GFElem add(const GFElem& a, const GFElem& b) const;
    GFElem sub(const GFElem& a, const GFElem& b) const;
    GFElem neg(const GFElem& a) const;
    GFElem mul(const GFElem& a, const GFElem& b) const;
    GFElem pow(GFElem a, long long k) const; // k >= 0
    GFElem inv(const GFElem& a) const;

    /// Index <-> element: i has base-p digits i_0..i_{n-1}, the element is
    /// sum i_k gen^k. Enumerates the whole field as i runs over 0..p^n-1.
    GFElem from_index(long long i) const;
    long long to_index(const GFElem& a) const;

    /// A generator of the multiplicative group, by brute force.
    GFElem multiplicative_generator() const;

    /// All roots in the field of a polynomial with GF coefficients
    /// (low degree first), by exhaustive evaluation.
    std::vector<GFElem> roots(const std::vector<GFElem>& poly) const;

    GFElem eval(const std::vector<GFElem>& poly, const GFElem& x) const;

    std::string str(const GFElem& a) const;

  private:
    long long p_ = 0;
    int n_ = 0;
    std::vector<uint32_t> mod_; // monic, length n_+1

    static bool poly_irreducible(long long p, const std::vector<uint32_t>& f);
};

} // namespace varpi

#endif
