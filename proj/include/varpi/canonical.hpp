#ifndef VARPI_CANONICAL_HPP
#define VARPI_CANONICAL_HPP

#include <map>
#include <memory>

#include "varpi/gauss.hpp"
#include "varpi/hopf.hpp"
#include "varpi/newton_polygon.hpp"

namespace varpi {

/// Truncated multiplication-by-varpi series
///   varpi x + a x^q + sum_{j>=2} c_j x^{j(q-1)+1},
/// with the integrality constraint c_j in varpi R unless j = 1 mod q.
struct MulSeries {
    const Tower* tw = nullptr;
    Element a;
    std::map<long long, Element> c; // j -> c_j
    long long truncation = 0;       // highest exponent represented

    void validate() const;
};

/// The standard truncated series with c_{q+1} = 1 and no other tail terms.
MulSeries standard_series(const Tower& tw, const Element& a, long long truncation);

struct Classification {
    bool ordinary = false;
    NewtonPolygon polygon;
    // valuations of the nonzero varpi-torsion points, with multiplicities
    std::vector<std::pair<Rational, long long>> root_valuations;
};

/// Ordinary/supersingular classification through the Newton polygon of the
/// series on (0,inf), (1,1), (q,val(a)), (q^2,0).
Classification classify(const MulSeries& s);

/// Valuation invariants of the dlog / Hodge-Tate calculus at growth w.
struct DlogReport {
    Rational w;
    Rational v;                    // w/(q-1): the homology annihilator exponent
    bool exact = false;            // sequence exact iff ordinary (w = 0)
    Rational canonical_val;        // (1-w)/(q-1)
    Rational noncanonical_val;     // w/(q(q-1))
    Rational dual_measure;         // w' = w
    Rational annihilator_exponent; // = v
};
DlogReport hodge_tate_report(const Rational& w, long long q);

enum class IsogenyKind { quotient_by_canonical, quotient_by_disjoint };

/// Growth-measure dynamics under the two isogeny kinds: w -> qw for the
/// quotient by the canonical subgroup, w -> w/q for a disjoint subgroup.
Rational isogeny_measure_map(const Rational& w, IsogenyKind kind, long long q);

/// Domain bound for the rank-r canonical subgroup: 1/(q^{r-2}(q+1)),
/// which is q/(q+1) at r = 1.
Rational higher_canonical_domain(int r, long long q);

/// Sufficient condition for dlog(gamma') = 0: varpi divides every beta_k,
/// i.e. min_k (e/(p-1) + p^k (val_E - 1)/(q-1)) >= 1.
bool gamma_prime_vanishes(long long p, int e, int f, const Rational& val_E);
/// The exact flip point in e of the condition above.
Rational gamma_prime_boundary_e(long long p, int f, const Rational& val_E);

/// Valuation-level model of A[varpi] with its canonical subgroup
/// C = Sp(V'[x]/(x^q + (varpi/E) x)) over a concrete tower containing
/// zeta_p, (-varpi)^{1/(q-1)} and the canonical root alpha. E is pinned to
/// t^{(q-1)a'} v^{q-1} for a seedable unit v, so E_1 = t^{a'} v and
/// alpha = t^{b'-a'} / v satisfy their defining relations exactly.
class CanonicalModel {
  public:
    /// e = 1 grounds; w = val(E) in [0, q/(q+1)). unit_seed != 0 mixes a
    /// nontrivial unit into E. precision <= 0 picks the recommended default.
    static CanonicalModel build(long long p, int f, const Rational& w, long long unit_seed = 0,
                                int precision = 0);

    const Tower& tower() const { return *tw_; }
    const GaussTable& gauss() const { return *gauss_; }
    const hopf::Context& ctx() const { return ctx_; }
    const Rational& growth() const { return w_; }
    const Element& E() const { return E_; }
    const Element& alpha() const { return alpha_; }
    const Element& E1() const { return E1_; }
    const Element& unit_u() const { return u_; }

    /// Comultiplication table of Prop-level shape: c(x) = x(x)1 + 1(x)x -
    /// varpi^{e-1} u E sum_i (w^{h_i-1}/(w_i w_{q-i})) x^i (x) x^{q-i}.
    const hopf::Tensor2& comultiplication() const { return comult_; }
    /// The section eta(y) = 1 + sum_i x^i / ((q-1)^{s(i)} w_i) prod beta_k^{i_k}.
    const hopf::Poly& eta() const { return eta_; }
    /// beta_k = g(chi_1) alpha^{-p^k}, k = 0..f-1.
    const std::vector<Element>& beta() const { return beta_; }

    // --- checks (margins are certified valuation lower bounds of the
    // difference; +inf means equal to working precision, with `cap`
    // reporting that precision) ---
    bool counit_ok() const;
    Rational coassociativity_margin(Rational* cap = nullptr) const;
    Rational eta_grouplike_margin(Rational* cap = nullptr) const;
    Rational eta_order_p_margin(Rational* cap = nullptr) const;
    bool eta_integral() const;
    std::vector<Rational> beta_valuations() const;

    struct Differential {
        hopf::Poly f; // 1/(1 - Q x^{q-1}) expanded in the quotient ring
        Element Q;
    };
    Differential differential_pullback() const;
    /// (1 - (q-1) Q x^{q-1})(1 - Q x^{q-1}) = 1 in A.
    Rational differential_unit_identity_margin(Rational* cap = nullptr) const;
    /// f(X) + f(Y) = f(F(X,Y)) (d_X F + d_Y F) to valuation >= 1 - w.
    Rational differential_invariance_margin(Rational* cap = nullptr) const;

    struct DlogCongruence {
        Rational exponent; // certified congruence exponent
        bool meets_bound;  // exponent >= 1 - w
    };
    DlogCongruence dlog_gamma_congruence() const;

  private:
    CanonicalModel() = default;

    std::shared_ptr<const Tower> tw_;
    std::unique_ptr<GaussTable> gauss_;
    hopf::Context ctx_;
    Rational w_;
    Element E_, alpha_, E1_, u_;
    std::vector<Element> beta_;
    hopf::Tensor2 comult_;
    std::vector<hopf::Tensor2> cpow_; // c(x)^i for i = 0..q-1
    hopf::Poly eta_;
};

} // namespace varpi

#endif
