#include "phig/phigamma.hpp"

#include <algorithm>
#include <sstream>

namespace phig {

ModVec ModVec::scaled(const FqElem& k) const {
    ModVec o;
    o.c.reserve(c.size());
    for (const auto& s : c) o.c.push_back(s.scaled(k.v));
    return o;
}

ModVec ModVec::mul(const CharSeries& f) const {
    ModVec o;
    o.c.reserve(c.size());
    for (const auto& s : c) o.c.push_back(s * f);
    return o;
}

ModVec ModVec::truncated(int prec) const {
    ModVec o;
    o.c.reserve(c.size());
    for (const auto& s : c) o.c.push_back(s.truncated(prec));
    return o;
}

ModVec operator+(const ModVec& a, const ModVec& b) {
    if (a.c.size() != b.c.size()) raise(errc::invalid_argument, "rank mismatch");
    ModVec o;
    o.c.reserve(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) o.c.push_back(a.c[i] + b.c[i]);
    return o;
}

ModVec operator-(const ModVec& a, const ModVec& b) {
    if (a.c.size() != b.c.size()) raise(errc::invalid_argument, "rank mismatch");
    ModVec o;
    o.c.reserve(a.c.size());
    for (size_t i = 0; i < a.c.size(); ++i) o.c.push_back(a.c[i] - b.c[i]);
    return o;
}

bool ModVec::agrees_with(const ModVec& o) const {
    if (c.size() != o.c.size()) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].agrees_with(o.c[i])) return false;
    return true;
}

int ModVec::min_hi() const {
    int h = kPrecInf;
    for (const auto& s : c) h = std::min(h, s.hi());
    return h;
}

int ModVec::min_overlap(const ModVec& o) const {
    int v = kPrecInf;
    for (size_t i = 0; i < c.size(); ++i) v = std::min(v, c[i].overlap_with(o.c[i]));
    return v;
}

bool h_is_primitive(int p, int n, long long h) {
    std::vector<int> d(n);
    for (int i = 0; i < n; ++i) {
        d[i] = static_cast<int>(h % p);
        h /= p;
    }
    for (int per = 1; per < n; ++per) {
        if (n % per != 0) continue;
        bool periodic = true;
        for (int i = 0; i < n && periodic; ++i)
            if (d[i] != d[i % per]) periodic = false;
        if (periodic) return false;
    }
    return true;
}

PhiGammaModule PhiGammaModule::ind(int p, int n, long long h, int prec_x, int prec_p) {
    const FqField& F = FqField::get(p, 1);
    if (n < 1 || n > 3) raise(errc::parameter_out_of_range, "rank n must be in [1,3]");
    long long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    if (h < 1 || h > pn - 2) raise(errc::exponent_out_of_range, "need 1 <= h <= p^n - 2");
    if (!h_is_primitive(p, n, h))
        raise(errc::non_primitive_exponent, "digit word of h has period smaller than n");

    PhiGammaModule M;
    M.kind_ = Kind::Ind;
    M.F_ = &F;
    M.p_ = p;
    M.rank_ = n;
    M.n_ = n;
    M.h_ = h;
    M.prec_x_ = prec_x;
    M.prec_p_ = prec_p;
    M.mat_phi_.assign(static_cast<size_t>(n) * n, CharSeries::zero(F));
    for (int j = 0; j + 1 < n; ++j) M.mat_phi_[(j + 1) * n + j] = CharSeries::one(F);
    uint32_t sign = (n % 2 == 1) ? 1 : F.neg(1);
    M.mat_phi_[0 * n + (n - 1)] = CharSeries::monomial(F, sign, static_cast<int>(-h * (p - 1)));
    return M;
}

PhiGammaModule PhiGammaModule::rho(int p, int r, int s, FqElem lambda, int prec_x, int prec_p) {
    const FqField& F = *lambda.F;
    if (F.p() != p) raise(errc::invalid_argument, "lambda lives over a different prime");
    if (r < 0 || r > p - 1) raise(errc::parameter_out_of_range, "need 0 <= r <= p-1");
    if (lambda.is_zero()) raise(errc::parameter_out_of_range, "lambda must be nonzero");

    PhiGammaModule M;
    M.kind_ = Kind::Rho;
    M.F_ = &F;
    M.p_ = p;
    M.rank_ = 2;
    M.n_ = 2;
    M.r_ = r;
    M.s_ = ((s % (p - 1)) + (p - 1)) % (p - 1);
    M.lambda_ = lambda;
    M.prec_x_ = prec_x;
    M.prec_p_ = prec_p;
    M.mat_phi_.assign(4, CharSeries::zero(F));
    M.mat_phi_[0 * 2 + 1] = CharSeries::monomial(F, F.neg(lambda.v), -(r + 1) * (p - 1));
    M.mat_phi_[1 * 2 + 0] = CharSeries::monomial(F, lambda.v, 0);
    return M;
}

int PhiGammaModule::pole_exponent() const {
    if (kind_ == Kind::Rho) return (r_ + 1) * (p_ - 1);
    return static_cast<int>(h_ * (p_ - 1));
}

CharSeries PhiGammaModule::det_phi() const {
    std::vector<int> perm(rank_);
    for (int i = 0; i < rank_; ++i) perm[i] = i;
    CharSeries acc = CharSeries::zero(*F_);
    do {
        int inv = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = i + 1; j < rank_; ++j)
                if (perm[i] > perm[j]) ++inv;
        CharSeries term = CharSeries::one(*F_);
        for (int i = 0; i < rank_; ++i) term = term * mat_phi(i, perm[i]);
        acc = acc + (inv % 2 == 0 ? term : -term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

PadicScalar PhiGammaModule::gamma_exponent(int j) const {
    if (j < 0 || j >= rank_) raise(errc::invalid_argument, "basis index out of range");
    if (kind_ == Kind::Ind) {
        long long pn = 1;
        for (int i = 0; i < n_; ++i) pn *= p_;
        long long pj = 1;
        for (int i = 0; i < j; ++i) pj *= p_;
        return PadicScalar::ratio(p_, h_ * pj * (p_ - 1), pn - 1, prec_p_);
    }
    long long num = (j == 0) ? (r_ + 1) : static_cast<long long>(p_) * (r_ + 1);
    return PadicScalar::ratio(p_, num, p_ + 1, prec_p_);
}

std::vector<CharSeries> PhiGammaModule::gamma_diag(const PadicScalar& a, int px) const {
    if (px < 0) px = prec_x_;
    // the matrix depends on a only through a mod p^L with p^L > px
    int L = 1;
    for (long long pl = p_; pl <= px; pl *= p_) ++L;
    int nd = std::min(a.known_digits(), L);
    GammaKey key{a.unit_digits_mod(nd), nd, px};
    {
        std::lock_guard<std::mutex> lock(gamma_cache_->mu);
        auto it = gamma_cache_->map.find(key);
        if (it != gamma_cache_->map.end()) return it->second;
    }
    CharSeries fa = f_gamma(*F_, a, px);
    std::vector<CharSeries> diag;
    diag.reserve(rank_);
    uint32_t tw = (kind_ == Kind::Rho) ? omega_char(*F_, a).pow(s_).v : F_->one();
    for (int j = 0; j < rank_; ++j)
        diag.push_back(padic_pow(fa, gamma_exponent(j), px).scaled(tw));
    std::lock_guard<std::mutex> lock(gamma_cache_->mu);
    auto [it, inserted] = gamma_cache_->map.emplace(key, std::move(diag));
    return it->second;
}

ModVec PhiGammaModule::apply_phi(const ModVec& v) const {
    if (v.rank() != rank_) raise(errc::invalid_argument, "rank mismatch");
    ModVec out;
    out.c.assign(rank_, CharSeries::zero(*F_));
    for (int j = 0; j < rank_; ++j) {
        CharSeries pj = phi(v.c[j]);
        for (int i = 0; i < rank_; ++i) {
            const CharSeries& m = mat_phi(i, j);
            if (m.known_zero() && m.exact()) continue;
            out.c[i] = out.c[i] + m * pj;
        }
    }
    return out;
}

ModVec PhiGammaModule::apply_gamma(const ModVec& v, const PadicScalar& a, int px) const {
    if (v.rank() != rank_) raise(errc::invalid_argument, "rank mismatch");
    if (px < 0) px = prec_x_;
    auto diag = gamma_diag(a, px);
    ModVec out;
    out.c.reserve(rank_);
    for (int j = 0; j < rank_; ++j) out.c.push_back(diag[j] * gamma_subst(v.c[j], a, px));
    return out;
}

ModVec PhiGammaModule::apply_psi(const ModVec& v) const {
    if (kind_ != Kind::Rho) raise(errc::invalid_argument, "psi is implemented on the rank-2 family");
    if (v.rank() != 2) raise(errc::invalid_argument, "rank mismatch");
    uint32_t li = F_->inv(lambda_.v);
    ModVec out;
    out.c.push_back(psi(v.c[1].scaled(li)));
    out.c.push_back(-psi(v.c[0].scaled(li).shifted(pole_exponent())));
    return out;
}

bool PhiGammaModule::dsharp_contains(const ModVec& v) const {
    if (kind_ != Kind::Rho) raise(errc::invalid_argument, "lattice is defined on the rank-2 family");
    if (v.rank() != 2) return false;
    if (!v.c[0].known_zero() && v.c[0].lo() < 0) return false;
    if (!v.c[1].known_zero() && v.c[1].lo() < r_) return false;
    return true;
}

ModVec PhiGammaModule::dsharp_random(int prec, std::mt19937_64& rng) const {
    if (kind_ != Kind::Rho) raise(errc::invalid_argument, "lattice is defined on the rank-2 family");
    ModVec v;
    v.c.push_back(random_series(*F_, 0, prec, rng));
    v.c.push_back(random_series(*F_, r_, prec, rng));
    return v;
}

ModVec PhiGammaModule::psi_lift_dsharp(const ModVec& v, std::mt19937_64& rng) const {
    if (!dsharp_contains(v)) raise(errc::invalid_argument, "lift target must lie in the lattice");
    uint32_t slam = F_->frob_inv(lambda_.v);
    CharSeries beta = psi_section(v.c[0].scaled(slam), r_, rng);
    CharSeries u = psi_section((-v.c[1]).scaled(slam), pole_exponent(), rng);
    ModVec w;
    w.c.push_back(u.shifted(-pole_exponent()));
    w.c.push_back(std::move(beta));
    return w;
}

FqElem PhiGammaModule::chi(const PadicScalar& x) const {
    if (kind_ != Kind::Rho) raise(errc::invalid_argument, "chi is attached to the rank-2 family");
    return omega_char(*F_, x).pow(s_) * lambda_.pow(x.val());
}

FqElem PhiGammaModule::central_char_inv(const PadicScalar& x) const {
    if (kind_ != Kind::Rho) raise(errc::invalid_argument, "central character needs the rank-2 family");
    return omega_char(*F_, x).pow(-(r_ + 2 * s_)) * lambda_.pow(-2 * x.val());
}

std::string PhiGammaModule::descriptor() const {
    std::ostringstream os;
    if (kind_ == Kind::Ind) {
        os << "ind(p=" << p_ << ",n=" << n_ << ",h=" << h_ << ")";
    } else {
        os << "rho(p=" << p_ << ",r=" << r_ << ",s=" << s_ << ",lambda=" << F_->digits(lambda_.v)
           << ",k=F_" << F_->q() << ",modulus=" << F_->modulus_string() << ")";
    }
    return os.str();
}

bool phi_gamma_commutes(const PhiGammaModule& M, const PadicScalar& a, int px) {
    auto diag = M.gamma_diag(a, px);
    for (int i = 0; i < M.rank(); ++i) {
        for (int j = 0; j < M.rank(); ++j) {
            const CharSeries& m = M.mat_phi(i, j);
            CharSeries lhs = diag[i] * gamma_subst(m, a, px);
            CharSeries rhs = m * phi(diag[j]);
            if (lhs.known_zero() && rhs.known_zero()) continue;
            if (lhs.overlap_with(rhs) < 1) return false;
            if (!lhs.agrees_with(rhs)) return false;
        }
    }
    return true;
}

YRing YRing::make(int p, int n) {
    if (n < 1 || n > 2) raise(errc::parameter_out_of_range, "Y-ring needs n in [1,2]");
    YRing R;
    R.p = p;
    R.n = n;
    long long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    R.e = (pn - 1) / (p - 1);
    R.F = &FqField::get(p, 2 * n);
    return R;
}

CharSeries YRing::from_x(const CharSeries& fx) const {
    long long hi = fx.exact() ? kPrecInf : std::min<long long>(e * fx.hi(), kPrecInf);
    if (fx.known_zero()) return CharSeries::zero(*F, static_cast<int>(hi));
    std::vector<uint32_t> c(static_cast<size_t>(e) * (fx.support_len() - 1) + 1, 0);
    for (int i = 0; i < fx.support_len(); ++i) c[static_cast<size_t>(e) * i] = fx.coeff(fx.lo() + i);
    if (!fx.exact()) hi = std::min<long long>(e * (fx.hi() - 1) + 1, kPrecInf);
    return CharSeries::from_coeffs(*F, static_cast<int>(e * fx.lo()), std::move(c),
                                   static_cast<int>(hi));
}

CharSeries yon_image_of_y(const YRing& R, const PadicScalar& a, const FqElem& c, int prec) {
    const FqField& F = *R.F;
    if (c.is_zero()) raise(errc::inconsistent_omega_n, "slot scalar must be nonzero");
    if (F.pow_ll(c.v, R.e) != omega_char(F, a).v)
        raise(errc::inconsistent_omega_n, "c^e != omega(a)");
    long long pn = 1;
    for (int i = 0; i < R.n; ++i) pn *= R.p;
    int px = static_cast<int>((prec + R.e - 1) / R.e) + 2;
    PadicScalar s = PadicScalar::ratio(R.p, -(R.p - 1), pn - 1, 18);
    CharSeries fx = padic_pow(f_gamma(F, a, px), s, px);
    return R.from_x(fx).shifted(1).scaled(c.v).truncated(prec + 1);
}

CharSeries yon_action(const YRing& R, const CharSeries& u, const PadicScalar& a, const FqElem& c,
                      int prec) {
    CharSeries gy = yon_image_of_y(R, a, c, prec);
    return subst(u, gy, prec);
}

IndStructureReport verify_ind_structure(int p, int n, long long h, int prec_x, int prec_p,
                                        int y_prec, const std::vector<PadicScalar>& gamma_samples) {
    IndStructureReport rep;
    PhiGammaModule M = PhiGammaModule::ind(p, n, h, prec_x, prec_p);
    const FqField& F = M.field();

    // (a) the wedge X^h e_0 ^ ... ^ e_{n-1}: phi-fixed, exactly.
    CharSeries xh = CharSeries::monomial(F, 1, static_cast<int>(h));
    CharSeries det = M.det_phi();
    rep.wedge_phi_ok = det.exact() && (phi(xh) * det).agrees_with(xh);

    //     and gamma_a rescales it by omega(a)^h.
    rep.wedge_gamma_ok = true;
    for (const auto& a : gamma_samples) {
        auto diag = M.gamma_diag(a, prec_x);
        CharSeries prod = gamma_subst(xh, a, prec_x);
        for (const auto& d : diag) prod = prod * d;
        CharSeries expect = xh.scaled(omega_char(F, a).pow(h).v).truncated(prec_x);
        if (prod.overlap_with(expect) < 1 || !prod.agrees_with(expect)) {
            rep.wedge_gamma_ok = false;
            break;
        }
    }

    // (b) the product-ring vectors v_j are phi-fixed over the Y-ring.
    YRing R = YRing::make(p, n);
    const FqField& FY = *R.F;
    FqElem alpha = solve_alpha(p, n);
    long long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    long long pmax = 1;
    for (int i = 0; i < n - 1; ++i) pmax *= p;
    if (y_prec <= pmax * h + 1)
        raise(errc::invalid_config, "Y precision too small for the v_j support");

    std::vector<CharSeries> matY(static_cast<size_t>(n) * n, CharSeries::zero(FY));
    for (int j = 0; j + 1 < n; ++j) matY[(j + 1) * n + j] = CharSeries::one(FY);
    matY[0 * n + (n - 1)] =
        CharSeries::monomial(FY, n % 2 == 1 ? 1 : FY.neg(1), static_cast<int>(-h * (pn - 1)));

    using Tuple = std::vector<CharSeries>; // one slot per factor of the product ring
    auto tuple_zero = [&]() { return Tuple(n, CharSeries::zero(FY)); };

    for (int j = 0; j < n; ++j) {
        // v_j: coordinate t carries alpha^(p^t) Y^(p^t h) in slot (j+t) mod n.
        std::vector<Tuple> vj(n, tuple_zero());
        long long pt = 1;
        for (int t = 0; t < n; ++t) {
            uint32_t coeff = alpha.v;
            for (int q = 0; q < t; ++q) coeff = FY.frob(coeff);
            vj[t][(j + t) % n] = CharSeries::monomial(FY, coeff, static_cast<int>(pt * h));
            pt *= p;
        }
        // phi on the product ring shifts the slots cyclically.
        std::vector<Tuple> out(n, tuple_zero());
        for (int t = 0; t < n; ++t) {
            Tuple shifted = tuple_zero();
            for (int k = 0; k < n; ++k) shifted[k] = phi(vj[t][(k + n - 1) % n]);
            for (int i = 0; i < n; ++i) {
                const CharSeries& m = matY[i * n + t];
                if (m.known_zero() && m.exact()) continue;
                for (int k = 0; k < n; ++k) out[i][k] = out[i][k] + m * shifted[k];
            }
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int k = 0; k < n && ok; ++k)
                if (!out[i][k].exact() || !out[i][k].agrees_with(vj[i][k])) ok = false;
        rep.vj_phi_ok.push_back(ok);
    }
    return rep;
}

} // namespace phig
