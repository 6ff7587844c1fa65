#include "phig/series.hpp"

#include <algorithm>
#include <sstream>

namespace phig {

namespace {

int floor_div(int a, int b) { // b > 0
    int q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) --q;
    return q;
}

int sat_add(int a, int b) {
    if (a >= kPrecInf || b >= kPrecInf) return kPrecInf;
    long long s = static_cast<long long>(a) + b;
    if (s >= kPrecInf) return kPrecInf;
    return static_cast<int>(s);
}

int sat_mul(int a, int m) {
    if (a >= kPrecInf) return kPrecInf;
    long long s = static_cast<long long>(a) * m;
    if (s >= kPrecInf) return kPrecInf;
    return static_cast<int>(s);
}

} // namespace

void CharSeries::canon() {
    size_t b = 0, e = c_.size();
    while (b < e && c_[b] == 0) ++b;
    while (e > b && c_[e - 1] == 0) --e;
    if (b > 0 || e < c_.size()) {
        c_ = std::vector<uint32_t>(c_.begin() + b, c_.begin() + e);
        lo_ += static_cast<int>(b);
    }
    if (c_.empty()) lo_ = std::min(hi_, kPrecInf);
    if (!c_.empty() && lo_ < kPoleFloor)
        raise(errc::pole_depth_exceeded, "pole deeper than the configured floor");
}

CharSeries CharSeries::zero(const FqField& F, int prec) {
    CharSeries s;
    s.F_ = &F;
    s.lo_ = std::min(prec, kPrecInf);
    s.hi_ = std::min(prec, kPrecInf);
    return s;
}

CharSeries CharSeries::monomial(const FqField& F, uint32_t c, int d) {
    if (c == 0) return zero(F);
    CharSeries s;
    s.F_ = &F;
    s.lo_ = d;
    s.hi_ = kPrecInf;
    s.c_ = {c};
    s.canon();
    return s;
}

CharSeries CharSeries::one_plus_x(const FqField& F) {
    return from_coeffs(F, 0, {1, 1});
}

CharSeries CharSeries::from_coeffs(const FqField& F, int lo, std::vector<uint32_t> c, int prec) {
    CharSeries s;
    s.F_ = &F;
    s.lo_ = lo;
    s.hi_ = std::min(prec, kPrecInf);
    s.c_ = std::move(c);
    if (s.hi_ < s.lo_ + static_cast<int>(s.c_.size()))
        raise(errc::invalid_argument, "coefficients extend past the precision bound");
    s.canon();
    return s;
}

uint32_t CharSeries::coeff(int d) const {
    if (d >= hi_) raise(errc::insufficient_precision, "coefficient beyond precision window");
    if (d < lo_ || d >= lo_ + static_cast<int>(c_.size())) return 0;
    return c_[d - lo_];
}

CharSeries CharSeries::truncated(int prec) const {
    if (prec >= hi_) return *this;
    CharSeries s = *this;
    s.hi_ = prec;
    int keep = prec - s.lo_;
    if (keep < 0) keep = 0;
    if (static_cast<int>(s.c_.size()) > keep) s.c_.resize(keep);
    s.canon();
    return s;
}

CharSeries CharSeries::shifted(int k) const {
    CharSeries s = *this;
    s.lo_ = sat_add(s.lo_, k);
    s.hi_ = sat_add(s.hi_, k);
    s.canon();
    return s;
}

CharSeries operator+(const CharSeries& a, const CharSeries& b) {
    if (a.field().p() != b.field().p() || a.field().m() != b.field().m())
        raise(errc::invalid_argument, "mixed fields");
    const FqField& F = a.field();
    int hi = std::min(a.hi(), b.hi());
    int alo = a.known_zero() ? hi : a.lo();
    int blo = b.known_zero() ? hi : b.lo();
    int lo = std::min(alo, blo);
    int end = std::min(hi, std::max(a.lo() + static_cast<int>(a.c_.size()),
                                    b.lo() + static_cast<int>(b.c_.size())));
    CharSeries s = CharSeries::zero(F, hi);
    if (end > lo) {
        s.lo_ = lo;
        s.c_.assign(end - lo, 0);
        for (int d = lo; d < end; ++d) {
            uint32_t va = (d < a.hi()) ? a.coeff(d) : 0;
            uint32_t vb = (d < b.hi()) ? b.coeff(d) : 0;
            s.c_[d - lo] = F.add(va, vb);
        }
    }
    s.canon();
    return s;
}

CharSeries CharSeries::operator-() const {
    CharSeries s = *this;
    for (auto& v : s.c_) v = F_->neg(v);
    return s;
}

CharSeries operator-(const CharSeries& a, const CharSeries& b) { return a + (-b); }

CharSeries CharSeries::scaled(uint32_t k) const {
    if (k == 0) return zero(*F_);
    CharSeries s = *this;
    for (auto& v : s.c_) v = F_->mul(v, k);
    s.canon();
    return s;
}

CharSeries operator*(const CharSeries& a, const CharSeries& b) {
    if (a.field().p() != b.field().p() || a.field().m() != b.field().m())
        raise(errc::invalid_argument, "mixed fields");
    const FqField& F = a.field();
    int alo = a.known_zero() ? a.hi() : a.lo();
    int blo = b.known_zero() ? b.hi() : b.lo();
    int hi = std::min(sat_add(a.hi(), blo), sat_add(b.hi(), alo));
    if (a.known_zero() || b.known_zero()) return CharSeries::zero(F, hi);
    int lo = a.lo() + b.lo();
    int end = std::min(hi, lo + static_cast<int>(a.c_.size() + b.c_.size()) - 1);
    CharSeries s = CharSeries::zero(F, hi);
    if (end > lo) {
        s.lo_ = lo;
        s.c_.assign(end - lo, 0);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            int da = a.lo() + static_cast<int>(i);
            for (size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                int d = da + b.lo() + static_cast<int>(j);
                if (d >= end) break;
                s.c_[d - lo] = F.add(s.c_[d - lo], F.mul(a.c_[i], b.c_[j]));
            }
        }
    }
    s.canon();
    return s;
}

CharSeries CharSeries::inverse() const {
    if (known_zero()) raise(errc::zero_argument, "inverse of a series with no known nonzero term");
    const int v = lo_;
    const uint32_t a0 = c_[0];
    if (exact() && c_.size() == 1)
        return monomial(*F_, F_->inv(a0), -v);
    if (exact())
        raise(errc::invalid_argument, "inverse of an exact non-monomial needs a truncation first");
    const int L = hi_ - v; // unit window length
    std::vector<uint32_t> u(L, 0);
    for (size_t i = 0; i < c_.size() && static_cast<int>(i) < L; ++i) u[i] = c_[i];
    std::vector<uint32_t> inv(L, 0);
    uint32_t a0i = F_->inv(a0);
    inv[0] = a0i;
    for (int n = 1; n < L; ++n) {
        uint32_t acc = 0;
        for (int i = 1; i <= n && i < L; ++i)
            if (u[i] != 0 && inv[n - i] != 0) acc = F_->add(acc, F_->mul(u[i], inv[n - i]));
        inv[n] = F_->mul(a0i, F_->neg(acc));
    }
    CharSeries s;
    s.F_ = F_;
    s.lo_ = -v;
    s.hi_ = hi_ - 2 * v;
    s.c_ = std::move(inv);
    s.canon();
    return s;
}

bool CharSeries::agrees_with(const CharSeries& o) const {
    int hi = std::min(hi_, o.hi_);
    int alo = known_zero() ? hi : lo_;
    int blo = o.known_zero() ? hi : o.lo_;
    for (int d = std::min(alo, blo); d < hi; ++d)
        if (coeff(d) != o.coeff(d)) return false;
    return true;
}

int CharSeries::overlap_with(const CharSeries& o) const {
    int hi = std::min(hi_, o.hi_);
    int alo = known_zero() ? hi : lo_;
    int blo = o.known_zero() ? hi : o.lo_;
    return hi - std::min(alo, blo);
}

CharSeries phi(const CharSeries& f) {
    const FqField& F = f.field();
    const int p = F.p();
    CharSeries s;
    s.F_ = &F;
    s.hi_ = sat_mul(f.hi_, p);
    if (f.known_zero()) {
        s.lo_ = s.hi_;
        return s;
    }
    s.lo_ = f.lo_ * p;
    s.c_.assign(static_cast<size_t>(p) * (f.c_.size() - 1) + 1, 0);
    for (size_t i = 0; i < f.c_.size(); ++i)
        if (f.c_[i] != 0) s.c_[p * i] = F.frob(f.c_[i]);
    s.canon();
    return s;
}

CharSeries psi(const CharSeries& f) {
    const FqField& F = f.field();
    const int p = F.p();
    CharSeries s;
    s.F_ = &F;
    s.hi_ = f.exact() ? kPrecInf : floor_div(f.hi_, p);
    if (f.known_zero()) {
        s.lo_ = s.hi_;
        return s;
    }
    int jlo = floor_div(f.lo_, p);
    int jend = floor_div(f.lo_ + static_cast<int>(f.c_.size()) - 1, p) + 1;
    jend = std::min(jend, s.hi_);
    if (jend <= jlo) {
        s.lo_ = s.hi_;
        return s;
    }
    s.lo_ = jlo;
    s.c_.assign(jend - jlo, 0);
    for (size_t i = 0; i < f.c_.size(); ++i) {
        if (f.c_[i] == 0) continue;
        int d = f.lo_ + static_cast<int>(i);
        int j = floor_div(d, p);
        if (j >= jend) break;
        int t = d - p * j; // 0 <= t < p
        uint32_t v = F.frob_inv(f.c_[i]);
        if (t % 2 == 1) v = F.neg(v);
        s.c_[j - jlo] = F.add(s.c_[j - jlo], v);
    }
    s.canon();
    return s;
}

CharSeries subst(const CharSeries& f, const CharSeries& g, int prec) {
    const FqField& F = f.field();
    if (g.known_zero() || g.lo() < 1)
        raise(errc::invalid_argument, "substitution series must have valuation >= 1");
    int Tg = g.hi();
    int flo = f.known_zero() ? f.hi() : f.lo();
    int H = std::min({prec, f.hi(), Tg >= kPrecInf ? kPrecInf : sat_add(flo, Tg - 1)});
    if (H >= kPrecInf && !(f.exact() && g.exact()))
        raise(errc::invalid_argument, "substitution needs a finite precision target");
    if (f.known_zero()) return CharSeries::zero(F, H);
    CharSeries acc = CharSeries::zero(F, H);
    int send = f.lo() + f.support_len();
    // nonnegative exponents
    if (send > 0) {
        CharSeries cur = CharSeries::one(F);
        for (int i = 0; i < send && i < H; ++i) {
            if (i >= f.lo()) {
                uint32_t a = f.coeff(i);
                if (a != 0) acc = acc + cur.scaled(a);
            }
            cur = (cur * g).truncated(H);
        }
    }
    // negative exponents through the inverse
    if (f.lo() < 0) {
        CharSeries gbase = g;
        if (g.exact() && g.support_len() > 1 && H < kPrecInf)
            gbase = g.truncated(sat_add(H, (2 - f.lo()) * g.lo()));
        CharSeries gi = gbase.inverse();
        CharSeries cur = gi;
        for (int i = -1; i >= f.lo(); --i) {
            uint32_t a = f.coeff(i);
            if (a != 0) acc = acc + cur.scaled(a);
            if (i > f.lo()) cur = (cur * gi).truncated(H);
        }
    }
    return acc.truncated(H);
}

CharSeries gamma_subst(const CharSeries& f, const PadicScalar& a, int prec) {
    const FqField& F = f.field();
    if (a.is_exact_zero() || a.val_lower_bound() > 0 || (!a.digits_zero() && a.val() != 0))
        raise(errc::invalid_argument, "gamma substitution needs a unit exponent");
    int H = std::min(prec, f.hi());
    if (f.known_zero()) return CharSeries::zero(F, H);
    if (H >= kPrecInf)
        raise(errc::invalid_argument, "gamma substitution of an exact series needs a finite precision");
    int flo = f.lo();
    int T = H - flo + 1; // window for (1+X)^a - 1
    if (T < 2) T = 2;
    std::vector<uint32_t> gc(T - 1, 0);
    for (int k = 1; k < T; ++k) gc[k - 1] = F.from_int(binom_padic_int(a, k));
    CharSeries g = CharSeries::from_coeffs(F, 1, std::move(gc), T);
    return subst(f, g, H);
}

CharSeries padic_pow(const CharSeries& f, const PadicScalar& s, int prec) {
    const FqField& F = f.field();
    if (!s.is_integral())
        raise(errc::invalid_argument, "padic power needs an exponent of valuation >= 0");
    if (f.known_zero() || f.lo() != 0 || f.coeff(0) != 1)
        raise(errc::not_one_unit, "padic power needs f = 1 + O(X)");
    int H = std::min(prec, f.hi());
    if (H >= kPrecInf)
        raise(errc::invalid_argument, "padic power needs a finite precision target");
    CharSeries g = (f - CharSeries::one(F)).truncated(H);
    CharSeries acc = CharSeries::one(F).truncated(H);
    if (g.known_zero()) return acc;
    CharSeries cur = CharSeries::one(F);
    for (int k = 1; static_cast<long long>(k) * g.lo() < H; ++k) {
        cur = (cur * g).truncated(H);
        int b = binom_padic_int(s, k);
        if (b != 0) acc = acc + cur.scaled(F.from_int(b));
        if (cur.known_zero()) break;
    }
    return acc.truncated(H);
}

CharSeries f_gamma(const FqField& F, const PadicScalar& a, int prec) {
    CharSeries g = gamma_subst(CharSeries::x(F), a, prec + 1);
    CharSeries f = (CharSeries::x(F) * g.inverse()).truncated(prec);
    return f.scaled(omega_char(F, a).v);
}

CharSeries psi_section(const CharSeries& t, int divisibility, std::mt19937_64& rng) {
    const FqField& F = t.field();
    const int p = F.p();
    const int s = divisibility;
    int block_hi; // blocks j < block_hi carry constraints
    bool exact_target = t.exact();
    if (exact_target) {
        int send = t.known_zero() ? 0 : t.lo() + t.support_len();
        block_hi = std::max(send, floor_div(s, p) + 1);
    } else {
        block_hi = t.hi();
    }
    int tlo = t.known_zero() ? block_hi : t.lo();
    int jlow = std::min(floor_div(s, p), tlo);
    if (jlow >= block_hi)
        return CharSeries::zero(F, exact_target ? kPrecInf : sat_mul(block_hi, p));
    std::vector<uint32_t> u(static_cast<size_t>(block_hi - jlow) * p, 0);
    std::uniform_int_distribution<uint32_t> draw(0, F.q() - 1);
    for (int j = jlow; j < block_hi; ++j) {
        uint32_t rhs = F.frob(t.coeff(j));
        int last_free = -1;
        uint32_t partial = 0;
        for (int tau = 0; tau < p; ++tau) {
            int pos = p * j + tau;
            if (pos < s) continue; // forced zero
            if (last_free >= 0) {
                // the previous free slot gets a random draw
                int prev = last_free;
                uint32_t v = draw(rng);
                u[(j - jlow) * p + prev] = v;
                uint32_t signedv = (prev % 2 == 1) ? F.neg(v) : v;
                partial = F.add(partial, signedv);
            }
            last_free = tau;
        }
        if (last_free < 0) {
            if (rhs != 0)
                raise(errc::no_solution_at_precision,
                      "divisibility forces a zero block against a nonzero target coefficient");
            continue;
        }
        uint32_t need = F.sub(rhs, partial);
        if (last_free % 2 == 1) need = F.neg(need);
        u[(j - jlow) * p + last_free] = need;
    }
    return CharSeries::from_coeffs(F, p * jlow, std::move(u),
                                   exact_target ? kPrecInf : sat_mul(block_hi, p));
}

CharSeries random_series(const FqField& F, int lo, int prec, std::mt19937_64& rng) {
    if (prec <= lo) return CharSeries::zero(F, prec);
    std::uniform_int_distribution<uint32_t> draw(0, F.q() - 1);
    std::vector<uint32_t> c(prec - lo);
    for (auto& v : c) v = draw(rng);
    return CharSeries::from_coeffs(F, lo, std::move(c), prec);
}

std::string CharSeries::to_text() const {
    std::ostringstream os;
    os << F_->p() << " " << F_->m() << " ";
    int lo = known_zero() ? 0 : lo_;
    os << lo << " " << (exact() ? std::string("inf") : std::to_string(hi_)) << " :";
    int end = known_zero() ? lo : lo_ + static_cast<int>(c_.size());
    for (int d = lo; d < end; ++d) os << " " << F_->digits(coeff(d));
    return os.str();
}

CharSeries CharSeries::from_text(const std::string& line) {
    std::istringstream is(line);
    int p, m, lo;
    std::string ntok, colon;
    if (!(is >> p >> m >> lo >> ntok >> colon) || colon != ":")
        raise(errc::invalid_argument, "malformed series record");
    const FqField& F = FqField::get(p, m);
    int hi = (ntok == "inf") ? kPrecInf : std::stoi(ntok);
    std::vector<uint32_t> c;
    std::string g;
    while (is >> g) c.push_back(F.from_digits(g));
    return from_coeffs(F, lo, std::move(c), hi);
}

std::string CharSeries::pretty() const {
    if (known_zero()) return exact() ? "0" : "O(X^" + std::to_string(hi_) + ")";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        int d = lo_ + static_cast<int>(i);
        if (!first) os << " + ";
        first = false;
        if (c_[i] != 1 || d == 0) os << (F_->m() == 1 ? std::to_string(c_[i]) : F_->digits(c_[i]));
        if (d != 0) {
            if (c_[i] != 1) os << "*";
            os << "X";
            if (d != 1) os << "^" << d;
        }
    }
    if (!exact()) os << " + O(X^" << hi_ << ")";
    return os.str();
}

} // namespace phig
