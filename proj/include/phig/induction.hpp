#ifndef PHIG_INDUCTION_HPP
#define PHIG_INDUCTION_HPP

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "phig/limpsi.hpp"

namespace phig {

/// Homogeneous polynomial of degree r: coefficients of x^(r-i) y^i.
struct SymPoly {
    const FqField* F = nullptr;
    std::vector<uint32_t> c; // size r+1

    static SymPoly zero(const FqField& F, int r);
    static SymPoly monomial(const FqField& F, int r, int i, uint32_t coeff = 1);
    int r() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const;
    SymPoly scaled(uint32_t k) const;
    friend SymPoly operator+(const SymPoly& a, const SymPoly& b);
    friend bool operator==(const SymPoly& a, const SymPoly& b);
    /// P(a x, b x + d y) for an upper-triangular unit matrix mod p.
    SymPoly act_upper(uint32_t a, uint32_t b, uint32_t d) const;
    std::string pretty() const;
};

/// Representative b_{beta,delta} = [[1, beta], [0, p^delta]] with beta in the
/// exact set of p-power-denominator fractions mod Z_p.
struct CosetRep {
    uint64_t beta_num = 0; // 0 <= beta_num < p^beta_den_exp, coprime to p unless 0
    int beta_den_exp = 0;  // 0 means beta = 0
    int delta = 0;

    auto operator<=>(const CosetRep&) const = default;
    BorelElem matrix(int p) const;
    BorelElem inverse_matrix(int p) const;
    std::string to_string() const;
};

/// Finite-support function on the coset representatives with values in
/// Sym^r k^2, twisted by chi o det; the character data rides along.
struct IndVec {
    const PhiGammaModule* mod = nullptr; // carries (r, s, lambda) and the field
    std::map<CosetRep, SymPoly> supp;

    static IndVec zero(const PhiGammaModule& mod);
    /// [1, P]: support at the identity coset.
    static IndVec at_identity(const PhiGammaModule& mod, SymPoly P);
    bool is_zero() const { return supp.empty(); }
    IndVec scaled(uint32_t k) const;
    friend IndVec operator+(const IndVec& a, const IndVec& b);
    friend bool operator==(const IndVec& a, const IndVec& b);
    void add_term(const CosetRep& b, const SymPoly& P);
    std::string to_text() const; // one record per support point
};

/// g = b_{beta,delta} u with u in B cap KZ; returns both. SingularInput when a
/// diagonal entry vanishes, InsufficientPadicPrecision when the fractional
/// digits of beta are not all determined.
std::pair<CosetRep, BorelElem> coset_reduce(int p, const BorelElem& g);

/// Left translation by g: each [b, P] reduces g b = b' u and the value picks
/// up chi(det u) together with the Sym-action of p^-m u.
IndVec act_induction(const BorelElem& g, const IndVec& F);

/// The spherical operator via its values on [1, x^(r-i) y^i], extended
/// B-equivariantly and linearly; J supplies the lifts of F_p.
IndVec hecke_T(const IndVec& F, const std::vector<PadicScalar>& J);

/// Basis of the lambda-vectors with sum_i i^l lam_i = 0 for l < r.
std::vector<std::vector<FqElem>> moment_vectors(const FqField& F, int r);

/// The displayed generators of the Hecke-image intersection: for r = 0 the
/// single vector diag(1,p)[1,1] + sum_j [[p,j],[0,1]][1,1]; for r >= 1 the
/// sums sum_j (-j)^i [[p,j],[0,1]][1,x^r] for i < r, plus one vector per
/// supplied lambda (MomentConditionViolated when one fails the conditions).
std::vector<IndVec> kernel_generators(const PhiGammaModule& mod,
                                      const std::vector<PadicScalar>& J,
                                      const std::vector<std::vector<FqElem>>& lambdas);

/// Per-window memo of theta(b^-1 w) keyed by the representative.
using ThetaCache = std::map<CosetRep, FqElem>;

/// sum over the support of (x^r-coefficient) * theta(b^-1 w); every value must
/// lie on the line k x^r (ValueOutsideLine otherwise).
FqElem evaluate_pi(const IndVec& F, const PsiWindow& w, ThetaCache* cache = nullptr);

} // namespace phig

#endif
