#ifndef PHIG_PADIC_HPP
#define PHIG_PADIC_HPP

#include <cstdint>
#include <string>

#include "phig/errors.hpp"
#include "phig/ffield.hpp"

namespace phig {

/// Truncated element of Q_p, stored as a window of base-p digits:
/// value = p^vmin * (digits + O(p^nd)) with 0 <= digits < p^nd.
///
/// The window is normalized so that digits is coprime to p or zero. A
/// digits-zero window means "0 mod p^(vmin+nd)": the valuation is only
/// bounded below. The exact zero is a distinguished value, never the
/// result of digit cancellation.
class PadicScalar {
public:
    PadicScalar() = default;

    static PadicScalar zero(int p);
    static PadicScalar from_int(int p, long long n);
    /// num/den with den coprime to p, the unit digits kept mod p^M.
    static PadicScalar ratio(int p, long long num, long long den, int M);
    /// p^k.
    static PadicScalar p_power(int p, int k);

    int p() const { return p_; }
    bool is_exact_zero() const { return exact_zero_; }
    bool digits_zero() const { return digits_ == 0; }

    /// Window start (lowest digit index covered).
    int vmin() const { return vmin_; }
    /// Number of known digits; knowledge is "mod p^(vmin+nd)".
    int known_digits() const { return nd_; }
    int window_end() const { return vmin_ + nd_; }

    /// Exact valuation; raises if the scalar is exact zero (ZeroArgument) or
    /// indeterminate because every known digit vanishes.
    int val() const;
    /// Lower bound on the valuation that is always available.
    int val_lower_bound() const;
    bool is_unit() const { return !exact_zero_ && digits_ != 0 && vmin_ == 0; }
    /// True when no known digit sits below index 0.
    bool is_integral() const;

    /// First nonzero digit (the reduction mod p of the unit part), in [1,p).
    int unit_digit() const;
    /// The value of p^-val * x mod p^L; raises when the window is too short.
    uint64_t unit_digits_mod(int L) const;
    /// Digit at absolute index i (index 0 = units digit of the unit part
    /// times p^val ... i.e. of the value itself).
    int digit_at(int i) const;

    PadicScalar operator-() const;
    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    PadicScalar inv() const;
    /// Multiply by p^k.
    PadicScalar shifted(int k) const;

    /// Same value as far as both windows reach (used by tests).
    bool agrees_with(const PadicScalar& o) const;

    std::string to_string() const;

private:
    int p_ = 3;
    int vmin_ = 0;
    int nd_ = 0;
    uint64_t digits_ = 0;
    bool exact_zero_ = true;

    void normalize();
    static int max_digits(int p);
    friend PadicScalar make_window(int p, int vmin, uint64_t digits, int nd);
};

PadicScalar make_window(int p, int vmin, uint64_t digits, int nd);

uint64_t pow_u64(int p, int e);

/// C(s, k) mod p via the digit product formula; requires s integral and the
/// digit window of s to cover p^L > k.
int binom_padic_int(const PadicScalar& s, long long k);
inline FqElem binom_padic(const FqField& F, const PadicScalar& s, long long k) {
    return {F, F.from_int(binom_padic_int(s, k))};
}

/// omega(a) = unit part of a mod p, as an element of the prime subfield of F.
FqElem omega_char(const FqField& F, const PadicScalar& a);
/// mu_lambda(a) = lambda^val(a).
FqElem mu_char(const PadicScalar& a, const FqElem& lambda);

} // namespace phig

#endif
