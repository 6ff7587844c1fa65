#include "phig/ffield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace phig {

bool is_small_odd_prime(int p) {
    return p == 3 || p == 5 || p == 7 || p == 11 || p == 13;
}

namespace {

using Poly = std::vector<int>; // coefficients mod p, low degree first

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, int p) {
    const int m = static_cast<int>(mod.size()) - 1; // mod is monic of degree m
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int d = static_cast<int>(prod.size()) - 1; d >= m; --d) {
        int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < m; ++i)
            prod[d - m + i] = ((prod[d - m + i] - c * mod[i]) % p + p) % p;
    }
    prod.resize(m);
    return prod;
}

Poly poly_pow_mod(Poly base, long long e, const Poly& mod, int p) {
    const int m = static_cast<int>(mod.size()) - 1;
    Poly r(m, 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = poly_mul_mod(r, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

bool poly_is_zero(const Poly& a) {
    return std::all_of(a.begin(), a.end(), [](int c) { return c == 0; });
}

Poly poly_mod_small(Poly a, const Poly& mod, int p) {
    const int m = static_cast<int>(mod.size()) - 1;
    for (int d = static_cast<int>(a.size()) - 1; d >= m; --d) {
        int c = a[d];
        if (c == 0) continue;
        a[d] = 0;
        for (int i = 0; i < m; ++i)
            a[d - m + i] = ((a[d - m + i] - c * mod[i]) % p + p) % p;
    }
    a.resize(std::max<size_t>(a.size(), m));
    a.resize(m);
    return a;
}

Poly poly_gcd(Poly a, Poly b, int p) {
    auto deg = [](const Poly& f) {
        for (int d = static_cast<int>(f.size()) - 1; d >= 0; --d)
            if (f[d] != 0) return d;
        return -1;
    };
    while (deg(b) >= 0) {
        // a mod b
        int db = deg(b);
        int lb = b[db];
        int lbinv = 1;
        for (int t = 1; t < p; ++t)
            if (lb * t % p == 1) { lbinv = t; break; }
        while (deg(a) >= db) {
            int da = deg(a);
            int c = a[da] * lbinv % p;
            for (int i = 0; i <= db; ++i)
                a[da - db + i] = ((a[da - db + i] - c * b[i]) % p + p) % p;
        }
        std::swap(a, b);
    }
    return a;
}

// f = x^m + word (word read as base-p digits a_0..a_{m-1}); irreducible over F_p?
bool is_irreducible(const Poly& mod, int p) {
    const int m = static_cast<int>(mod.size()) - 1;
    Poly x = {0, 1};
    if (m == 1) return true;
    // x^(p^m) == x mod f and gcd(x^(p^(m/l)) - x, f) = 1 for primes l | m
    long long pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    Poly xq = poly_pow_mod(x, pm, mod, p);
    Poly diff(xq);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    if (!poly_is_zero(diff)) return false;
    for (int l = 2; l <= m; ++l) {
        if (m % l != 0) continue;
        bool lprime = true;
        for (int d = 2; d * d <= l; ++d)
            if (l % d == 0) lprime = false;
        if (!lprime) continue;
        long long e = 1;
        for (int i = 0; i < m / l; ++i) e *= p;
        Poly xe = poly_pow_mod(x, e, mod, p);
        xe[1] = ((xe[1] - 1) % p + p) % p;
        Poly modpoly = mod;
        Poly g = poly_gcd(modpoly, xe, p);
        int dg = -1;
        for (int d = static_cast<int>(g.size()) - 1; d >= 0; --d)
            if (g[d] != 0) { dg = d; break; }
        if (dg != 0) return false;
    }
    return true;
}

std::vector<long long> prime_factors(long long n) {
    std::vector<long long> f;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            f.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) f.push_back(n);
    return f;
}

} // namespace

FqField::FqField(int p, int m) : p_(p), m_(m) {
    if (!is_small_odd_prime(p)) raise(errc::parameter_out_of_range, "p must be an odd prime in [3,13]");
    if (m < 1 || m > 4) raise(errc::parameter_out_of_range, "extension degree m must be in [1,4]");
    q_ = 1;
    for (int i = 0; i < m; ++i) q_ *= static_cast<uint32_t>(p);

    // Pick the modulus: smallest coefficient word such that the polynomial is
    // irreducible and x generates the multiplicative group.
    const long long qm1 = static_cast<long long>(q_) - 1;
    auto factors = prime_factors(qm1);
    mod_.assign(m, 0);
    bool found = false;
    for (uint32_t word = 0; word < q_ && !found; ++word) {
        Poly mod(m + 1, 0);
        uint32_t w = word;
        for (int i = 0; i < m; ++i) { mod[i] = static_cast<int>(w % p); w /= p; }
        mod[m] = 1;
        if (mod[0] == 0) continue; // x | f
        if (!is_irreducible(mod, p)) continue;
        // order of x modulo f
        bool primitive = true;
        for (long long l : factors) {
            Poly e = poly_pow_mod({0, 1}, qm1 / l, mod, p);
            Poly one(m, 0);
            one[0] = 1;
            if (e == one) { primitive = false; break; }
        }
        if (!primitive) continue;
        mod_.assign(mod.begin(), mod.end() - 1);
        found = true;
    }
    if (!found) raise(errc::parameter_out_of_range, "no primitive modulus found (unexpected)");

    // exp/log tables by iterated multiplication by x.
    exp_.resize(q_ - 1);
    log_.assign(q_, -1);
    Poly cur(m, 0);
    cur[0] = 1;
    Poly modfull(mod_);
    modfull.push_back(1);
    for (uint32_t i = 0; i < q_ - 1; ++i) {
        uint32_t idx = 0, base = 1;
        for (int j = 0; j < m; ++j) { idx += static_cast<uint32_t>(cur[j]) * base; base *= p; }
        exp_[i] = idx;
        log_[idx] = static_cast<int32_t>(i);
        // multiply by x
        Poly nxt(m + 1, 0);
        for (int j = 0; j < m; ++j) nxt[j + 1] = cur[j];
        cur = poly_mod_small(nxt, modfull, p);
    }
    gen_ = exp_[1 % (q_ - 1)];
}

const FqField& FqField::get(int p, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<FqField>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::unique_ptr<FqField>(new FqField(p, m))).first;
    return *it->second;
}

uint32_t FqField::add(uint32_t a, uint32_t b) const {
    uint32_t out = 0, base = 1;
    for (int i = 0; i < m_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a /= p_; b /= p_;
        out += ((da + db) % p_) * base;
        base *= p_;
    }
    return out;
}

uint32_t FqField::neg(uint32_t a) const {
    uint32_t out = 0, base = 1;
    for (int i = 0; i < m_; ++i) {
        uint32_t da = a % p_;
        a /= p_;
        out += ((p_ - da) % p_) * base;
        base *= p_;
    }
    return out;
}

uint32_t FqField::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t FqField::mul(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    int64_t s = log_[a] + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

uint32_t FqField::inv(uint32_t a) const {
    if (a == 0) raise(errc::zero_argument, "inverse of zero in F_q");
    int32_t l = log_[a];
    return exp_[l == 0 ? 0 : (q_ - 1 - l)];
}

uint32_t FqField::pow_ll(uint32_t a, long long e) const {
    if (a == 0) {
        if (e == 0) return 1;
        if (e < 0) raise(errc::zero_argument, "negative power of zero in F_q");
        return 0;
    }
    long long ord = q_ - 1;
    long long r = (static_cast<long long>(log_[a]) * (e % ord)) % ord;
    if (r < 0) r += ord;
    return exp_[r];
}

uint32_t FqField::frob(uint32_t a) const { return pow_ll(a, p_); }

uint32_t FqField::frob_inv(uint32_t a) const {
    long long e = 1;
    for (int i = 0; i < m_ - 1; ++i) e *= p_;
    return pow_ll(a, e);
}

uint32_t FqField::from_int(long long n) const {
    long long r = n % p_;
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
}

int FqField::to_prime_int(uint32_t a) const {
    if (!in_prime_field(a)) raise(errc::invalid_argument, "element not in the prime subfield");
    return static_cast<int>(a);
}

long long FqField::mult_order(uint32_t a) const {
    if (a == 0) raise(errc::zero_argument, "order of zero");
    long long ord = q_ - 1;
    for (long long l : prime_factors(static_cast<long long>(q_) - 1))
        while (ord % l == 0 && pow_ll(a, ord / l) == 1) ord /= l;
    return ord;
}

std::string FqField::digits(uint32_t a) const {
    std::string s(m_, '0');
    for (int i = 0; i < m_; ++i) {
        s[m_ - 1 - i] = static_cast<char>('0' + a % p_);
        a /= p_;
    }
    return s;
}

uint32_t FqField::from_digits(const std::string& s) const {
    if (static_cast<int>(s.size()) != m_) raise(errc::invalid_argument, "digit group length != m");
    uint32_t v = 0;
    for (char ch : s) {
        int d = ch - '0';
        if (d < 0 || d >= p_) raise(errc::invalid_argument, "digit out of range");
        v = v * p_ + static_cast<uint32_t>(d);
    }
    return v;
}

std::string FqField::modulus_string() const {
    std::string s = "x";
    if (m_ > 1) s += "^" + std::to_string(m_);
    for (int d = m_ - 1; d >= 0; --d) {
        int c = mod_[d];
        if (c == 0) continue;
        s += "+";
        if (c != 1 || d == 0) s += std::to_string(c);
        if (d >= 1) {
            s += "x";
            if (d > 1) s += "^" + std::to_string(d);
        }
    }
    return s;
}

FqElem solve_alpha(int p, int n) {
    if (n < 1 || n > 2) raise(errc::parameter_out_of_range, "solve_alpha needs n in [1,2]");
    const FqField& F = FqField::get(p, 2 * n);
    long long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    uint32_t target = (n % 2 == 1) ? F.one() : F.from_int(-1);
    for (uint32_t a = 1; a < F.q(); ++a)
        if (F.pow_ll(a, pn - 1) == target) return {F, a};
    raise(errc::parameter_out_of_range, "no alpha found (unexpected)");
}

} // namespace phig
