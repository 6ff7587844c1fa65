#ifndef PHIG_FFIELD_HPP
#define PHIG_FFIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "phig/errors.hpp"

namespace phig {

/// Arithmetic in F_{p^m} for odd p in [3,13] and m in [1,4].
///
/// Elements are stored as indices in [0, p^m): the index encodes the
/// coordinate vector (c_0, ..., c_{m-1}) in base p, i.e. the residue of
/// c_0 + c_1 x + ... + c_{m-1} x^{m-1} modulo a fixed monic irreducible
/// modulus. The modulus is the first monic irreducible of degree m (in
/// base-p lexicographic order of its coefficient word) for which x is a
/// primitive root, so every field is reproducible from (p, m) alone.
/// Multiplication runs on discrete-log tables, addition digitwise.
class FqField {
public:
    static const FqField& get(int p, int m);

    int p() const { return p_; }
    int m() const { return m_; }
    uint32_t q() const { return q_; }

    uint32_t zero() const { return 0; }
    uint32_t one() const { return 1; }
    /// x (a primitive root by construction of the modulus); for m = 1 the
    /// smallest primitive root mod p.
    uint32_t generator() const { return gen_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow_ll(uint32_t a, long long e) const;
    uint32_t frob(uint32_t a) const;     // a^p
    uint32_t frob_inv(uint32_t a) const; // a^(p^(m-1))

    /// Embedding of Z: n mod p landed in the prime subfield.
    uint32_t from_int(long long n) const;
    bool in_prime_field(uint32_t a) const { return a < static_cast<uint32_t>(p_); }
    /// Value in [0,p) of a prime-subfield element.
    int to_prime_int(uint32_t a) const;

    long long mult_order(uint32_t a) const;

    /// Coefficient word as base-p digits, most significant first ("21" etc).
    std::string digits(uint32_t a) const;
    uint32_t from_digits(const std::string& s) const;
    /// Modulus as a readable polynomial in x, e.g. "x^2+2x+1".
    std::string modulus_string() const;
    const std::vector<int>& modulus_coeffs() const { return mod_; } // a_0..a_{m-1}

private:
    FqField(int p, int m);

    int p_, m_;
    uint32_t q_;
    uint32_t gen_;
    std::vector<int> mod_;       // monic modulus: x^m + mod_[m-1] x^{m-1} + ... + mod_[0]
    std::vector<uint32_t> exp_;  // exp_[i] = index of x^i, i in [0, q-1)
    std::vector<int32_t> log_;   // log_[idx], -1 for 0
};

/// Field element with its field attached; convenience wrapper over indices.
struct FqElem {
    const FqField* F = nullptr;
    uint32_t v = 0;

    FqElem() = default;
    FqElem(const FqField& f, uint32_t val) : F(&f), v(val) {}

    bool is_zero() const { return v == 0; }
    friend bool operator==(const FqElem& a, const FqElem& b) { return a.F == b.F && a.v == b.v; }
    friend FqElem operator+(const FqElem& a, const FqElem& b) { return {*a.F, a.F->add(a.v, b.v)}; }
    friend FqElem operator-(const FqElem& a, const FqElem& b) { return {*a.F, a.F->sub(a.v, b.v)}; }
    friend FqElem operator*(const FqElem& a, const FqElem& b) { return {*a.F, a.F->mul(a.v, b.v)}; }
    FqElem operator-() const { return {*F, F->neg(v)}; }
    FqElem inv() const { return {*F, F->inv(v)}; }
    FqElem pow(long long e) const { return {*F, F->pow_ll(v, e)}; }
};

inline FqElem frobenius(const FqElem& a) { return {*a.F, a.F->frob(a.v)}; }

/// Smallest element alpha (in index order) of F_{p^{2n}} with
/// alpha^(p^n - 1) = (-1)^(n-1).
FqElem solve_alpha(int p, int n);

bool is_small_odd_prime(int p);

} // namespace phig

#endif
