#ifndef VARPI_TOWER_HPP
#define VARPI_TOWER_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "varpi/gf.hpp"
#include "varpi/newton_polygon.hpp"
#include "varpi/rational.hpp"

namespace varpi {

class Tower;

/// Result of an exact valuation query. `v` is +inf when the element is zero
/// to the working precision; `cap` annotates how far that statement is
/// certified. For finite `v`, `certified` says v < cap.
struct ValuationResult {
    Rational v;
    bool certified;
    Rational cap;
};

/// One element of a tower, stored as a flat digit vector over Z/p^Kp with
/// respect to the integral monomial basis, divided by p^pden. Immutable
/// value semantics; every element carries its certified precision `cap`
/// (valuations >= cap are not determined by the representation).
class Element {
  public:
    Element() = default;

    const Tower* tower() const { return tw_; }
    bool valid() const { return tw_ != nullptr; }
    const std::vector<uint64_t>& digits() const { return digits_; }
    int pden() const { return pden_; }
    const Rational& cap() const { return cap_; }

    /// Exact valuation (normalized val(varpi) = 1).
    ValuationResult val() const;
    /// Valuation as a plain rational; +inf for zero-to-precision.
    Rational valuation() const { return val().v; }
    bool is_zero_to_precision() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element operator*(const Element& o) const;
    Element operator/(const Element& o) const;
    Element inverse() const;
    Element pow(long long k) const; // k may be negative

    Element mul_int(long long c) const;
    Element div_int(long long c) const; // exact: strips p-part, inverts the unit
    Element div_p_pow(int k) const;

    /// True when (*this - o) vanishes to the joint certified precision.
    bool eq_to_precision(const Element& o) const;
    /// Valuation of the difference (+inf if indistinguishable from equal).
    Rational difference_valuation(const Element& o) const;

    std::string str() const;

    friend class Tower;

  private:
    Element(const Tower* t, std::vector<uint64_t> d, int pd, Rational cap)
        : tw_(t), digits_(std::move(d)), pden_(pd), cap_(cap) {}
    void normalize();
    Rational val_lower_bound() const; // -pden*e, or the cached exact value
    Rational storage_cap() const;

    const Tower* tw_ = nullptr;
    std::vector<uint64_t> digits_;
    int pden_ = 0;
    Rational cap_;
    mutable std::optional<Rational> vcache_;
};

enum class StepKind { unramified, eisenstein, kummer, cyclotomic };

/// One extension step, as supplied to make_tower. Polynomial coefficients
/// are given at the previous level: each coefficient either a plain integer
/// (embedded scalar) or a full digit vector over the previous level's basis.
struct StepSpec {
    StepKind kind = StepKind::unramified;
    int degree = 0; // unramified/eisenstein: deg; kummer: root degree; cyclotomic: p

    struct Coeff {
        long long scalar = 0;
        std::vector<long long> digits; // empty = use scalar
        Coeff() = default;
        Coeff(long long s) : scalar(s) {}
        explicit Coeff(std::vector<long long> d) : digits(std::move(d)) {}
    };
    std::vector<Coeff> poly; // unram/eis: monic, low..high, length degree+1
    Coeff kummer_base;       // kummer: the element c of x^m - c

    static StepSpec unramified_deg(int d, std::vector<Coeff> poly);
    static StepSpec eisenstein(std::vector<Coeff> poly);
    static StepSpec kummer(int m, Coeff base);
    static StepSpec cyclotomic(int order);
};

/// A tower of extensions of Q_p, with exact valuation bookkeeping. After
/// construction everything is immutable and safe to share between threads.
///
/// Internal representation: quotient-ring arithmetic level by level over
/// Z/p^Kp; integral bases are chosen per step so that valuations are exact:
/// unramified steps have residue-independent bases, Eisenstein and
/// valuation-split Kummer steps have bases with pairwise distinct valuation
/// classes. Cyclotomic steps are realized as the Eisenstein step of
/// lambda = zeta_p - 1.
class Tower {
  public:
    /// Build a tower from explicit steps. `precision` is the number of
    /// retained digits of the minimal positive valuation (the top
    /// uniformizer); it must be >= 1.
    static std::unique_ptr<Tower> make(long long p, const std::vector<StepSpec>& steps,
                                       int precision);

    /// Ground field O_P with residue size q = p^f and ramification e, plus
    /// zeta_p and zeta_{q-1}, sized for Gauss-sum work. e = 1 uses a pure
    /// Kummer construction x^M = -p with (p-1) | M, (q-1) | M; e > 1 is
    /// supported for e | p-1 (the uniformizer is designated as a monomial in
    /// zeta_p - 1 over a large enough unramified base).
    static std::unique_ptr<Tower> ground_with_gauss(long long p, int f, int e, int precision);

    /// Ground for the canonical-subgroup model at growth w = a/b (e = 1):
    /// contains zeta_p, (-varpi)^{1/(q-1)}, and the canonical alpha with
    /// alpha^{q-1} = -varpi/E for E = t^{Ma/b}. precision <= 0 picks the
    /// recommended default.
    static std::unique_ptr<Tower> canonical_ground(long long p, int f, const Rational& w,
                                                   int precision = 0);

    /// Lift of the lexicographically first monic irreducible of degree f.
    static StepSpec default_unramified(long long p, int f);

    // --- ground data ---
    long long p() const { return p_; }
    int e() const { return e_; }
    int f() const { return f_; }
    long long q() const { return q_; }
    int precision_digits() const { return N_; }
    int base_precision() const { return Kp_; }       // digits mod p^Kp
    long long value_group_denominator() const { return R_; }
    /// Minimal positive valuation in the tower (the value group generator).
    Rational min_positive_val() const { return shift_unit_.back(); }
    int absolute_degree() const { return S_.back(); }
    int levels() const { return (int)steps_.size(); }
    /// Absolute ramification index over Q_p.
    long long absolute_e() const { return eabs_; }
    const GF& residue_field() const { return gf_; }
    std::string basis_description() const { return basis_desc_; }

    // --- element constructors ---
    Element zero() const;
    Element one() const;
    Element from_int(long long v) const;
    /// Element with the single basis monomial `flat_index` set to 1.
    Element monomial(size_t flat_index) const;
    Element from_digits(const std::vector<uint64_t>& digits, int pden, Rational cap) const;
    /// Some element of exact valuation k/R (a monomial combination).
    Element val_shift(long long k) const;
    /// Generator of step `level` (1-based over the widening steps).
    Element gen(int level) const;
    /// gen(level)^k, k may be negative; exact via the step relation.
    Element gen_pow(int level, long long k) const;

    // --- designated elements ---
    const std::optional<Element>& zeta_p() const { return zeta_p_; }
    const std::optional<Element>& varpi() const { return varpi_; }
    const std::optional<Element>& neg_varpi_root() const { return neg_varpi_root_; }
    /// Data of the canonical ground: w and the exponent layout.
    const std::optional<Rational>& growth() const { return growth_; }
    int top_kummer_exponent() const; // M of a top step x^M - c, or 0

    // --- residue field ---
    /// Residue of an integral element in F_{p^{f_tot}}.
    GFElem residue(const Element& x) const;
    /// An integral lift with the given residue (digits in {0..p-1} on the
    /// residue basis monomials).
    Element lift_residue(const GFElem& r) const;
    /// Embedding of kappa = F_q (the O_P residue field) into the tower's
    /// residue field; z given as base-p digit index in the kappa generator.
    GFElem kappa_embed(long long z_index) const;
    const GFElem& kappa_generator_image() const { return kappa_emb_; }
    /// Trace from kappa to F_p of a kappa element (given as its image).
    long long kappa_trace(const GFElem& z) const;

    // --- core operations ---
    /// Teichmueller lift: the unique root of x^q = x with the given kappa
    /// residue; teichmuller(0) = 0.
    Element teichmuller(long long z_index) const;
    Element teichmuller_of(const GFElem& residue_in_gf, long long order) const;

    /// Newton iteration for a simple root: requires val(F(x0)) > 2 val(dF(x0)).
    Element newton_root(const std::function<Element(const Element&)>& F,
                        const std::function<Element(const Element&)>& dF, Element x0) const;

    std::string describe() const;

    Tower(const Tower&) = delete;
    Tower& operator=(const Tower&) = delete;

    friend class Element;

  private:
    Tower() = default;

    struct Step {
        StepKind kind;
        int d;               // step degree (>= 2 in the layout)
        Rational gen_val;    // valuation of the generator, val(varpi)=1 units
        std::vector<uint64_t> reduce_tail; // x^d as flat level-(k-1) coeffs, d blocks
        std::vector<int> tail_nonzero;     // indices t with a nonzero block
        GFElem gen_residue;                // unramified steps: image in gf_
    };

    // raw span helpers (level k spans have size S_[k])
    void add_span(int k, const uint64_t* a, const uint64_t* b, uint64_t* out) const;
    void sub_span(int k, const uint64_t* a, const uint64_t* b, uint64_t* out) const;
    void mul_span(int k, const uint64_t* a, const uint64_t* b, uint64_t* out,
                  std::vector<uint64_t>& scratch) const;
    void scal_span(int k, const uint64_t* a, uint64_t c, uint64_t* out) const;
    bool zero_span(int k, const uint64_t* a) const;
    Rational val_span(int k, const uint64_t* a) const; // val(p)=e units, inf if zero
    GFElem res_span(int k, const uint64_t* a) const;

    uint64_t mulmod(uint64_t a, uint64_t b) const {
        return (uint64_t)((unsigned __int128)a * b % pK_);
    }
    uint64_t addmod(uint64_t a, uint64_t b) const {
        uint64_t s = a + b;
        return s >= pK_ ? s - pK_ : s;
    }
    uint64_t submod(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + pK_ - b; }
    int vp_digit(uint64_t d) const; // p-adic valuation of a digit, Kp_ if 0

    Element finish(std::vector<uint64_t> digits, int pden, Rational cap) const;
    Element unit_inverse(const Element& u) const;
    Element val_shift_level(int level, long long k) const;
    Element inverse_level(const Element& x, int level) const;

    void build_layout(long long p, const std::vector<StepSpec>& steps, int precision);
    void build_residue_tables();
    void finalize_groups();
    void designate_zeta_p_kummer(); // route A: Hensel inside x^M = -p

    long long p_ = 0;
    uint64_t pK_ = 0;
    int Kp_ = 0;
    int N_ = 0;
    int e_ = 1, f_ = 1;
    long long q_ = 0;
    long long R_ = 1;
    long long eabs_ = 1;
    std::vector<Step> steps_;
    std::vector<int> S_; // block sizes, S_[0] = 1
    GF gf_;
    int f_tot_ = 1;
    std::vector<int> unram_levels_;
    GFElem kappa_emb_;
    // per-prefix value groups: generator and a Bezout chain realizing it
    std::vector<Rational> shift_unit_;
    std::vector<std::vector<std::pair<int, long long>>> bezout_upto_;
    // residue lift: inverse of the residue-basis matrix over F_p
    std::vector<size_t> res_basis_flat_;   // flat index per residue basis monomial
    std::vector<std::vector<uint32_t>> res_lift_inv_; // f_tot x f_tot over F_p
    std::optional<Element> zeta_p_, varpi_, neg_varpi_root_;
    std::optional<Rational> growth_;
    std::string basis_desc_;
};

// spec-level free functions
inline ValuationResult val(const Element& x) { return x.val(); }

/// p-adic logarithm: requires val(x - 1) > 0.
Element plog(const Element& x);
/// p-adic exponential: requires val(y) > e/(p-1).
Element pexp(const Element& y);
/// The generic valuation of log(1 + y) for val(y) = v > 0:
/// min over j >= 0 of (p^j v - j e). Exact rational arithmetic.
Rational plog_valuation_bound(long long p, int e, const Rational& v);

} // namespace varpi

#endif
