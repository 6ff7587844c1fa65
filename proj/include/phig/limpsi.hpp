#ifndef PHIG_LIMPSI_HPP
#define PHIG_LIMPSI_HPP

#include <optional>
#include <random>
#include <vector>

#include "phig/phigamma.hpp"

namespace phig {

/// Finite window (y_0, ..., y_m) of a psi-compatible tower in the lattice:
/// psi(y_{i+1}) = y_i at the tracked precision. Actions consume headroom
/// explicitly; there is no silent re-lifting.
class PsiWindow {
public:
    PsiWindow(const PhiGammaModule& mod, std::vector<ModVec> entries, bool check = true);

    /// y_depth = top, lower entries by repeated psi.
    static PsiWindow build_down(const PhiGammaModule& mod, ModVec top, int depth);
    /// y_0 given, higher entries by seeded lifting; entry precisions are
    /// capped at prec_cap coefficients each.
    static PsiWindow build_up(const PhiGammaModule& mod, ModVec y0, int depth,
                              std::mt19937_64& rng, int prec_cap = -1);

    const PhiGammaModule& mod() const { return *mod_; }
    int depth() const { return static_cast<int>(entries_.size()) - 1; }
    const ModVec& entry(int i) const;
    const std::vector<ModVec>& entries() const { return entries_; }

    /// psi(y_{i+1}) = y_i on every link, at the shared precision.
    bool compatible() const;

private:
    const PhiGammaModule* mod_;
    std::vector<ModVec> entries_;
};

/// Upper-triangular element of the group, entries as truncated scalars.
struct BorelElem {
    PadicScalar a, b, d;

    static BorelElem identity(int p);
    static BorelElem diag(const PadicScalar& a, const PadicScalar& d);
    static BorelElem unipotent(const PadicScalar& z); // [[1, z], [0, 1]]
    static BorelElem central(const PadicScalar& x);
    BorelElem inverse() const;
    friend BorelElem operator*(const BorelElem& g, const BorelElem& h);
    bool in_bkz() const; // p-power scalar times integral with unit diagonal
};

/// The action on windows, built from the four generator families:
///   central x:        scales by (omega^r chi^2)^(-1)(x)
///   diag(1, p^j):     v_i -> psi^j(v_i) (index shift)
///   diag(1, u):       v_i -> gamma_{u^-1}(v_i)
///   [[1, z], [0, 1]]: v_i -> psi^j((1+X)^(p^(i+j) z) v_{i+j}), i+j >= -val(z)
/// g factors as central * unipotent * unit-diagonal * p-power-diagonal and the
/// factors act right-to-left. Raises InsufficientWindow when the headroom does
/// not cover the consumed indices.
PsiWindow borel_act(const BorelElem& g, const PsiWindow& w);

/// theta(w) = constant term of the e-coordinate of y_0.
FqElem theta(const PsiWindow& w);

/// theta(g * w) computed along the entry-0 path only; prec_hint bounds how
/// many output coefficients are carried through the psi chain.
FqElem theta_after(const BorelElem& g, const PsiWindow& w, int prec_hint = 4);

/// theta(g^-1 * w) == chi(ad) omega^r(a) theta(w) for g in B cap KZ.
bool check_acbormu(const BorelElem& g, const PsiWindow& w);

/// Representatives J = (j_0, ..., j_{p-1}) of F_p in Z_p with j_i = i mod p.
std::vector<PadicScalar> default_lifts(int p);
std::vector<PadicScalar> random_lifts(int p, std::mt19937_64& rng, int spread = 3);
void validate_lifts(int p, const std::vector<PadicScalar>& J);

/// The theta-value of the displayed combination for the given case:
///   1 (r = 0):  theta( diag(1,p)^-1 w + sum_j [[p,j],[0,1]]^-1 w )
///   2 (r >= 1): theta( sum_j (-j)^k [[p,j],[0,1]]^-1 w )
///   3 (r >= 1): theta( sum_i lam_i i^r w
///                 + sum_{i,j} (-j)^r lam_i ([[1,i],[0,1]] diag(1,p^-1) [[p,j],[0,1]])^-1 w )
/// No precondition on lam beyond its length; check_vanishing adds them.
FqElem vanishing_value(int which, int k, const std::vector<FqElem>& lam,
                       const std::vector<PadicScalar>& J, const PsiWindow& w);

/// Validated version: enforces the r-range and, for case 3, the moment
/// conditions on lam; returns true iff the value is exactly zero.
bool check_vanishing(int which, int k, const std::vector<FqElem>& lam,
                     const std::vector<PadicScalar>& J, const PsiWindow& w);

/// sum_i i^l lam_i = 0 for 0 <= l <= r-1.
bool moments_vanish(const std::vector<FqElem>& lam, int r);

} // namespace phig

#endif
