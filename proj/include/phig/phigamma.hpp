#ifndef PHIG_PHIGAMMA_HPP
#define PHIG_PHIGAMMA_HPP

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "phig/series.hpp"

namespace phig {

/// Coordinates of a module element in the fixed basis.
struct ModVec {
    std::vector<CharSeries> c;

    int rank() const { return static_cast<int>(c.size()); }
    ModVec scaled(const FqElem& k) const;
    ModVec mul(const CharSeries& f) const; // coordinatewise series multiplication
    ModVec truncated(int prec) const;
    friend ModVec operator+(const ModVec& a, const ModVec& b);
    friend ModVec operator-(const ModVec& a, const ModVec& b);
    bool agrees_with(const ModVec& o) const;
    int min_hi() const;
    int min_overlap(const ModVec& o) const;
};

/// An etale (phi,Gamma)-module given by explicit matrices: either the rank-n
/// module with phi(e_j) = e_{j+1}, phi(e_{n-1}) = (-1)^(n-1) X^(-h(p-1)) e_0
/// and diagonal Gamma-action with exponents h p^j (p-1)/(p^n-1), or the
/// rank-2 twist with parameters (r, s, lambda).
class PhiGammaModule {
public:
    enum class Kind { Ind, Rho };

    /// Requires 1 <= h <= p^n - 2 with a base-p digit word of exact period n.
    static PhiGammaModule ind(int p, int n, long long h, int prec_x, int prec_p);
    static PhiGammaModule rho(int p, int r, int s, FqElem lambda, int prec_x, int prec_p);

    Kind kind() const { return kind_; }
    const FqField& field() const { return *F_; }
    int p() const { return p_; }
    int rank() const { return rank_; }
    int n() const { return n_; }
    long long h() const { return h_; }
    int r() const { return r_; }
    int s() const { return s_; }
    FqElem lambda() const { return lambda_; }
    int prec_x() const { return prec_x_; }
    int prec_p() const { return prec_p_; }
    /// X^((r+1)(p-1)), the pole depth of the corner entry.
    int pole_exponent() const;

    const CharSeries& mat_phi(int i, int j) const { return mat_phi_[i * rank_ + j]; }
    CharSeries det_phi() const;
    PadicScalar gamma_exponent(int j) const;
    /// Diagonal of Mat(gamma_a) at precision px (cached by digit window).
    std::vector<CharSeries> gamma_diag(const PadicScalar& a, int px) const;

    ModVec apply_phi(const ModVec& v) const;
    ModVec apply_gamma(const ModVec& v, const PadicScalar& a, int px = -1) const;
    /// psi on the rank-2 module: (a e + b f) -> psi(lambda^-1 b) e -
    /// psi(lambda^-1 X^((r+1)(p-1)) a) f.
    ModVec apply_psi(const ModVec& v) const;

    bool dsharp_contains(const ModVec& v) const;
    ModVec dsharp_random(int prec, std::mt19937_64& rng) const;
    /// Constructive surjectivity witness: w in D-sharp with psi(w) = v.
    ModVec psi_lift_dsharp(const ModVec& v, std::mt19937_64& rng) const;

    /// chi(x) = omega(x)^s lambda^val(x).
    FqElem chi(const PadicScalar& x) const;
    /// (omega^r chi^2)^(-1)(x), the inverse central character value.
    FqElem central_char_inv(const PadicScalar& x) const;

    std::string descriptor() const;

private:
    PhiGammaModule() = default;

    Kind kind_ = Kind::Rho;
    const FqField* F_ = nullptr;
    int p_ = 3, rank_ = 0;
    int n_ = 0;
    long long h_ = 0;
    int r_ = 0, s_ = 0;
    FqElem lambda_;
    int prec_x_ = 0, prec_p_ = 0;
    std::vector<CharSeries> mat_phi_;

    struct GammaKey {
        uint64_t digits;
        int nd;
        int px;
        auto operator<=>(const GammaKey&) const = default;
    };
    struct GammaCache {
        std::mutex mu;
        std::map<GammaKey, std::vector<CharSeries>> map;
    };
    std::shared_ptr<GammaCache> gamma_cache_ = std::make_shared<GammaCache>();
};

bool h_is_primitive(int p, int n, long long h);

/// Mat(gamma_a) gamma_a(Mat(phi)) = Mat(phi) phi(Mat(gamma_a)) at the shared
/// precision, for one unit a.
bool phi_gamma_commutes(const PhiGammaModule& M, const PadicScalar& a, int px);

/// Laurent series in Y over F_{p^(2n)} with X = Y^e, e = (p^n-1)/(p-1).
struct YRing {
    int p, n;
    long long e;
    const FqField* F; // F_{p^(2n)}

    static YRing make(int p, int n);
    /// Reinterpret an X-series as a Y-series (exponents scaled by e).
    CharSeries from_x(const CharSeries& fx) const;
    /// Coefficientwise Frobenius with Y -> Y^p.
    CharSeries frob(const CharSeries& u) const { return phi(u); }
};

/// Image of u under the ring map fixing coefficients and sending
/// Y -> c Y f_a(X)^(-(p-1)/(p^n-1)); requires c^e = omega(a).
CharSeries yon_action(const YRing& R, const CharSeries& u, const PadicScalar& a,
                      const FqElem& c, int prec);
/// The substitution series itself: the image of Y, modulo Y^prec.
CharSeries yon_image_of_y(const YRing& R, const PadicScalar& a, const FqElem& c, int prec);

struct IndStructureReport {
    bool wedge_phi_ok = false;
    bool wedge_gamma_ok = false;
    std::vector<bool> vj_phi_ok;
    bool all_ok() const {
        if (!wedge_phi_ok || !wedge_gamma_ok) return false;
        for (bool b : vj_phi_ok)
            if (!b) return false;
        return true;
    }
};

/// Structural checks for the rank-n module: the wedge X^h e_0 ^ ... ^ e_{n-1}
/// is phi-fixed and gamma_a-scales by omega(a)^h, and over the Y-ring the
/// product-ring vectors v_j (slot t of coordinate j+t mod n equal to
/// alpha^(p^t) Y^(p^t h)) are phi-fixed, phi acting on the product by a
/// coefficient shift.
IndStructureReport verify_ind_structure(int p, int n, long long h, int prec_x, int prec_p,
                                        int y_prec, const std::vector<PadicScalar>& gamma_samples);

} // namespace phig

#endif
