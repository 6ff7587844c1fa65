#ifndef PHIG_SERIES_HPP
#define PHIG_SERIES_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "phig/ffield.hpp"
#include "phig/padic.hpp"

namespace phig {

/// "Known modulo X^inf": marker precision of exact Laurent polynomials.
constexpr int kPrecInf = 1 << 28;
/// Hard floor on pole depth; operations that would go below it reject.
constexpr int kPoleFloor = -4096;

/// Truncated Laurent series over F_{p^m}.
///
/// Knowledge model: coefficients of X^d are known (and stored or implicitly
/// zero) for d < hi, unknown for d >= hi; lo is a certified lower bound for
/// the support, i.e. coeff(d) = 0 for d < lo. An exact polynomial carries
/// hi = kPrecInf. Every operation propagates the correct (lo, hi) window, so
/// a result never claims more coefficients than its inputs determine.
class CharSeries {
public:
    CharSeries() = default;
    /// Zero known modulo X^prec.
    static CharSeries zero(const FqField& F, int prec = kPrecInf);
    /// Exact monomial c*X^d.
    static CharSeries monomial(const FqField& F, uint32_t c, int d);
    static CharSeries one(const FqField& F) { return monomial(F, 1, 0); }
    static CharSeries x(const FqField& F) { return monomial(F, 1, 1); }
    static CharSeries one_plus_x(const FqField& F);
    /// Coefficients c[i] of X^(lo+i); exact (hi = inf) unless prec given.
    static CharSeries from_coeffs(const FqField& F, int lo, std::vector<uint32_t> c,
                                  int prec = kPrecInf);

    const FqField& field() const { return *F_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    bool exact() const { return hi_ >= kPrecInf; }
    /// No nonzero coefficient stored; the series is 0 mod X^hi.
    bool known_zero() const { return c_.empty(); }

    bool coeff_known(int d) const { return d < hi_; }
    uint32_t coeff(int d) const; // raises InsufficientPrecision past hi
    uint32_t coeff0() const { return coeff(0); }
    /// Stored support length; support lives in [lo, lo + support_len).
    int support_len() const { return static_cast<int>(c_.size()); }

    CharSeries truncated(int prec) const;
    CharSeries shifted(int k) const; // X^k * f

    friend CharSeries operator+(const CharSeries& a, const CharSeries& b);
    friend CharSeries operator-(const CharSeries& a, const CharSeries& b);
    friend CharSeries operator*(const CharSeries& a, const CharSeries& b);
    CharSeries operator-() const;
    CharSeries scaled(uint32_t c) const;
    /// Inverse of a series whose lowest coefficient is known and nonzero.
    CharSeries inverse() const;

    /// Agreement on the intersection of the known windows.
    bool agrees_with(const CharSeries& o) const;
    /// Number of coefficients both windows determine (hi overlap; may be <= 0).
    int overlap_with(const CharSeries& o) const;

    std::string to_text() const;
    static CharSeries from_text(const std::string& line);
    std::string pretty() const; // human-readable polynomial form

private:
    const FqField* F_ = nullptr;
    int lo_ = 0;
    int hi_ = 0;
    std::vector<uint32_t> c_; // coefficients of X^(lo_ .. lo_+len-1)

    void canon();
    friend CharSeries phi(const CharSeries&);
    friend CharSeries psi(const CharSeries&);
};

/// phi(f)(X) = f^(sigma)(X^p): Frobenius on coefficients, X -> X^p.
CharSeries phi(const CharSeries& f);
/// Left inverse of phi: the (1+X)^0-component of the unique decomposition
/// f = sum_{i<p} (1+X)^i phi(c_i). Output precision floor(hi/p).
CharSeries psi(const CharSeries& f);
/// f((1+X)^a - 1) for a a p-adic unit, computed modulo X^prec.
CharSeries gamma_subst(const CharSeries& f, const PadicScalar& a, int prec);
/// f^s = sum_k C(s,k) (f-1)^k for f = 1 + O(X) and s in Z_p, modulo X^prec.
CharSeries padic_pow(const CharSeries& f, const PadicScalar& s, int prec);
/// The cocycle series omega(a) X / ((1+X)^a - 1), in 1 + X k[[X]], mod X^prec.
CharSeries f_gamma(const FqField& F, const PadicScalar& a, int prec);
/// Substitute: f(g) for g with lo >= 1 and invertible linear coefficient.
CharSeries subst(const CharSeries& f, const CharSeries& g, int prec);

/// A witness u with X^divisibility | u and psi(u) = t on t's whole window.
/// Free coefficients are drawn from rng so repeated calls explore the fiber.
CharSeries psi_section(const CharSeries& t, int divisibility, std::mt19937_64& rng);

/// Uniform random series with support in [lo, prec).
CharSeries random_series(const FqField& F, int lo, int prec, std::mt19937_64& rng);

} // namespace phig

#endif
