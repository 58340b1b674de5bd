#ifndef VARPI_GAUSS_HPP
#define VARPI_GAUSS_HPP

#include <vector>

#include "varpi/tower.hpp"

namespace varpi {

/// Sum of the base-p digits of i, for i in 1..q-1.
int digit_sum(long long i, long long p, long long q);

/// The smallest h with 0 < h <= f and p^{f-h} | i, for i in 1..q-1.
int h_index(long long i, long long p, int f, long long q);

/// Gauss sums g(chi_i) for the powers chi_i = [.]^i of the Teichmueller
/// character against the additive character Psi(z) = zeta_p^{tr(z)}, plus
/// the Raynaud constants w_i and w = p u derived from them.
///
/// Index convention: the nontrivial characters i = 1..q-2 use the plain sum
/// over kappa^*; the i = q-1 slot carries the group-algebra normalization
/// (the plain sum minus (q-1), i.e. -q), which is the value the w_i
/// formulas require.
class GaussTable {
  public:
    explicit GaussTable(const Tower& tower);

    const Tower& tower() const { return *tw_; }

    /// g(chi_i), 1 <= i <= q-1; val(g(chi_i)) = s(i) e/(p-1).
    const Element& gauss_sum(long long i) const;
    /// Direct sum with chi_i in place of chi_i^{-1} and Psi(-z); an oracle
    /// companion for norm identities, always the plain summation.
    Element gauss_sum_conjugate(long long i) const;
    /// Plain summation sum_{z in kappa^*} chi_i^{-1}(z) Psi(z) for any i
    /// (including the trivial-character slot i = q-1, where it equals -1).
    Element gauss_sum_plain(long long i) const;

    /// w_i = g(chi_1)^{s(i)} / ((q-1)^{s(i)-1} g(chi_i)); a unit.
    const Element& raynaud_w(long long i) const;
    /// w = g(chi_1)^{p-1} / (q-1)^{p-1} = varpi^e u.
    const Element& raynaud_w_total() const;
    /// The unit u with w = varpi^e u.
    const Element& unit_u() const;

  private:
    void check_index(long long i) const;

    const Tower* tw_;
    long long q_;
    std::vector<Element> teich_pow_;  // T^m, T = teichmuller lift of a kappa^* generator
    std::vector<long long> trace_;    // tr(g0^j) for j = 0..q-2
    std::vector<Element> zeta_pow_;   // zeta_p^r, r = 0..p-1
    std::vector<Element> gauss_;      // index i-1
    std::vector<Element> w_;          // index i-1
    Element w_total_;
    Element u_;
};

} // namespace varpi

#endif
