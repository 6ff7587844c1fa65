#include "phig/padic.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace phig {

namespace {

constexpr int kValInf = 1 << 28;

using u128 = unsigned __int128;

uint64_t modinv_ppow(uint64_t a, int p, int L) {
    // Hensel lift of the inverse mod p up to mod p^L.
    uint64_t pk = static_cast<uint64_t>(p);
    uint64_t inv = 0;
    uint64_t a0 = a % pk;
    for (uint64_t t = 1; t < pk; ++t)
        if (a0 * t % pk == 1) { inv = t; break; }
    uint64_t mod = pk;
    uint64_t target = pow_u64(p, L);
    while (mod < target) {
        u128 m2 = static_cast<u128>(mod) * mod;
        if (m2 > target) m2 = target;
        u128 prod = static_cast<u128>(a % static_cast<uint64_t>(m2)) * inv % m2;
        u128 corr = (2 + m2 - prod) % m2;
        inv = static_cast<uint64_t>(static_cast<u128>(inv) * corr % m2);
        mod = static_cast<uint64_t>(m2);
    }
    return inv % target;
}

int binom_digit(int a, int b, int p) {
    // C(a,b) mod p for 0 <= a,b < p.
    if (b > a) return 0;
    long long num = 1, den = 1;
    for (int i = 0; i < b; ++i) {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    for (int t = 1; t < p; ++t)
        if (den * t % p == 1) return static_cast<int>(num * t % p);
    return static_cast<int>(num % p);
}

} // namespace

uint64_t pow_u64(int p, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<uint64_t>(p);
    return r;
}

int PadicScalar::max_digits(int p) {
    uint64_t lim = uint64_t(1) << 62;
    int L = 0;
    uint64_t v = 1;
    while (v <= lim / static_cast<uint64_t>(p)) { v *= p; ++L; }
    return L;
}

void PadicScalar::normalize() {
    if (exact_zero_) { vmin_ = 0; nd_ = 0; digits_ = 0; return; }
    while (digits_ != 0 && digits_ % p_ == 0) {
        digits_ /= p_;
        ++vmin_;
        --nd_;
    }
}

PadicScalar make_window(int p, int vmin, uint64_t digits, int nd) {
    if (nd < 1) raise(errc::insufficient_padic_precision, "empty digit window");
    PadicScalar s;
    s.p_ = p;
    s.vmin_ = vmin;
    s.nd_ = nd;
    s.digits_ = digits % pow_u64(p, nd);
    s.exact_zero_ = false;
    s.normalize();
    return s;
}

PadicScalar PadicScalar::zero(int p) {
    PadicScalar s;
    s.p_ = p;
    return s;
}

PadicScalar PadicScalar::from_int(int p, long long n) {
    if (n == 0) return zero(p);
    int L = max_digits(p);
    uint64_t P = pow_u64(p, L);
    long long r = n % static_cast<long long>(P);
    if (r < 0) r += static_cast<long long>(P);
    return make_window(p, 0, static_cast<uint64_t>(r), L);
}

PadicScalar PadicScalar::ratio(int p, long long num, long long den, int M) {
    if (den == 0) raise(errc::invalid_argument, "zero denominator");
    if (den % p == 0) raise(errc::denominator_divisible_by_p, "denominator divisible by p");
    if (M < 1) raise(errc::invalid_argument, "precision M must be >= 1");
    if (num == 0) return zero(p);
    M = std::min(M, max_digits(p));
    int v = 0;
    while (num % p == 0) { num /= p; ++v; }
    uint64_t P = pow_u64(p, M);
    long long nr = num % static_cast<long long>(P);
    if (nr < 0) nr += static_cast<long long>(P);
    long long dr = den % static_cast<long long>(P);
    if (dr < 0) dr += static_cast<long long>(P);
    uint64_t u = static_cast<uint64_t>(
        static_cast<u128>(nr) * modinv_ppow(static_cast<uint64_t>(dr), p, M) % P);
    return make_window(p, v, u, M);
}

PadicScalar PadicScalar::p_power(int p, int k) {
    PadicScalar s = from_int(p, 1);
    s.vmin_ = k;
    return s;
}

int PadicScalar::val() const {
    if (exact_zero_) raise(errc::zero_argument, "valuation of exact zero");
    if (digits_ == 0)
        raise(errc::insufficient_padic_precision, "valuation indeterminate: all known digits vanish");
    return vmin_; // normalized: digits_ coprime to p
}

int PadicScalar::val_lower_bound() const {
    if (exact_zero_) return kValInf;
    if (digits_ == 0) return vmin_ + nd_;
    return vmin_;
}

bool PadicScalar::is_integral() const {
    if (exact_zero_) return true;
    return val_lower_bound() >= 0;
}

int PadicScalar::unit_digit() const {
    if (exact_zero_) raise(errc::zero_argument, "unit digit of exact zero");
    if (digits_ == 0)
        raise(errc::insufficient_padic_precision, "unit digit indeterminate");
    return static_cast<int>(digits_ % p_);
}

uint64_t PadicScalar::unit_digits_mod(int L) const {
    if (exact_zero_) raise(errc::zero_argument, "unit of exact zero");
    if (digits_ == 0) raise(errc::insufficient_padic_precision, "unit indeterminate");
    if (nd_ < L) raise(errc::insufficient_padic_precision, "digit window shorter than requested");
    return digits_ % pow_u64(p_, L);
}

int PadicScalar::digit_at(int i) const {
    if (exact_zero_) return 0;
    if (i < vmin_) return 0;
    if (i >= vmin_ + nd_)
        raise(errc::insufficient_padic_precision, "digit beyond known window");
    return static_cast<int>(digits_ / pow_u64(p_, i - vmin_) % p_);
}

PadicScalar PadicScalar::operator-() const {
    if (exact_zero_) return *this;
    PadicScalar s = *this;
    if (digits_ != 0) s.digits_ = pow_u64(p_, nd_) - digits_;
    s.normalize();
    return s;
}

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    if (a.p_ != b.p_) raise(errc::invalid_argument, "mixed primes");
    if (a.exact_zero_) return b;
    if (b.exact_zero_) return a;
    int vmin = std::min(a.vmin_, b.vmin_);
    int end = std::min(a.vmin_ + a.nd_, b.vmin_ + b.nd_);
    int nd = std::min(end - vmin, PadicScalar::max_digits(a.p_));
    uint64_t P = pow_u64(a.p_, nd);
    u128 sum = 0;
    if (a.vmin_ - vmin < nd) sum += static_cast<u128>(a.digits_) * pow_u64(a.p_, a.vmin_ - vmin);
    if (b.vmin_ - vmin < nd) sum += static_cast<u128>(b.digits_) * pow_u64(b.p_, b.vmin_ - vmin);
    return make_window(a.p_, vmin, static_cast<uint64_t>(sum % P), nd);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    if (a.p_ != b.p_) raise(errc::invalid_argument, "mixed primes");
    if (a.exact_zero_ || b.exact_zero_) return PadicScalar::zero(a.p_);
    int tza = a.digits_ == 0 ? a.nd_ : 0;
    int tzb = b.digits_ == 0 ? b.nd_ : 0;
    int nd = std::min({a.nd_ + tzb, b.nd_ + tza, PadicScalar::max_digits(a.p_)});
    uint64_t P = pow_u64(a.p_, nd);
    uint64_t d = static_cast<uint64_t>(static_cast<u128>(a.digits_ % P) * (b.digits_ % P) % P);
    return make_window(a.p_, a.vmin_ + b.vmin_, d, nd);
}

PadicScalar PadicScalar::inv() const {
    if (exact_zero_) raise(errc::zero_argument, "inverse of exact zero");
    if (digits_ == 0) raise(errc::insufficient_padic_precision, "inverse indeterminate");
    return make_window(p_, -vmin_, modinv_ppow(digits_, p_, nd_), nd_);
}

PadicScalar PadicScalar::shifted(int k) const {
    if (exact_zero_) return *this;
    PadicScalar s = *this;
    s.vmin_ += k;
    return s;
}

bool PadicScalar::agrees_with(const PadicScalar& o) const {
    if (p_ != o.p_) return false;
    int end_a = exact_zero_ ? kValInf : vmin_ + nd_;
    int end_b = o.exact_zero_ ? kValInf : o.vmin_ + o.nd_;
    int end = std::min(end_a, end_b);
    if (end >= kValInf) return exact_zero_ && o.exact_zero_;
    int start = std::min(exact_zero_ ? end : vmin_, o.exact_zero_ ? end : o.vmin_);
    for (int i = start; i < end; ++i)
        if (digit_at(i) != o.digit_at(i)) return false;
    return true;
}

std::string PadicScalar::to_string() const {
    if (exact_zero_) return "0";
    std::ostringstream os;
    os << p_ << "^" << vmin_ << "*" << digits_ << " [mod " << p_ << "^" << (vmin_ + nd_) << "]";
    return os.str();
}

int binom_padic_int(const PadicScalar& s, long long k) {
    if (k < 0) return 0;
    if (k == 0) return 1;
    if (s.is_exact_zero()) return 0;
    if (!s.is_integral())
        raise(errc::invalid_argument, "binomial exponent must have valuation >= 0");
    const int p = s.p();
    int L = 0;
    long long pk = 1;
    while (pk <= k) { pk *= p; ++L; } // smallest L with p^L > k
    int out = 1;
    long long kk = k;
    for (int i = 0; i < L; ++i) {
        int sd = s.digit_at(i); // raises InsufficientPadicPrecision when the window is short
        int kd = static_cast<int>(kk % p);
        kk /= p;
        out = out * binom_digit(sd, kd, p) % p;
        if (out == 0) {
            // remaining digits cannot resurrect a zero product, but we still
            // demand the precision precondition p^window > k
            for (int j = i + 1; j < L; ++j) s.digit_at(j);
            break;
        }
    }
    return out;
}

FqElem omega_char(const FqField& F, const PadicScalar& a) {
    if (a.is_exact_zero()) raise(errc::zero_argument, "omega of zero");
    return {F, F.from_int(a.unit_digit())};
}

FqElem mu_char(const PadicScalar& a, const FqElem& lambda) {
    if (a.is_exact_zero()) raise(errc::zero_argument, "mu of zero");
    if (lambda.is_zero()) raise(errc::zero_argument, "mu with lambda = 0");
    return lambda.pow(a.val());
}

} // namespace phig
