#include "phig/limpsi.hpp"

#include <algorithm>
#include <string>

namespace phig {

namespace {

ModVec psi_pow(const PhiGammaModule& mod, ModVec v, int k) {
    for (int i = 0; i < k; ++i) v = mod.apply_psi(v);
    return v;
}

long long ipow(int p, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= p;
    return r;
}

bool scalar_is_one(const PadicScalar& u) {
    if (u.is_exact_zero() || u.digits_zero()) return false;
    PadicScalar diff = u - PadicScalar::from_int(u.p(), 1);
    if (diff.is_exact_zero()) return true;
    // "one" only when the agreement window reaches far past any series use
    return diff.digits_zero() && diff.window_end() >= 12;
}

} // namespace

PsiWindow::PsiWindow(const PhiGammaModule& mod, std::vector<ModVec> entries, bool check)
    : mod_(&mod), entries_(std::move(entries)) {
    if (entries_.empty()) raise(errc::invalid_argument, "window needs at least one entry");
    for (const auto& v : entries_)
        if (!mod.dsharp_contains(v)) raise(errc::invalid_argument, "window entry outside the lattice");
    if (check && !compatible())
        raise(errc::invalid_argument, "entries are not psi-compatible");
}

PsiWindow PsiWindow::build_down(const PhiGammaModule& mod, ModVec top, int depth) {
    if (depth < 0) raise(errc::invalid_argument, "negative depth");
    std::vector<ModVec> es(depth + 1, ModVec{});
    es[depth] = std::move(top);
    for (int i = depth; i > 0; --i) es[i - 1] = mod.apply_psi(es[i]);
    return PsiWindow(mod, std::move(es), false);
}

PsiWindow PsiWindow::build_up(const PhiGammaModule& mod, ModVec y0, int depth,
                              std::mt19937_64& rng, int prec_cap) {
    if (depth < 0) raise(errc::invalid_argument, "negative depth");
    std::vector<ModVec> es;
    es.reserve(depth + 1);
    es.push_back(std::move(y0));
    for (int i = 0; i < depth; ++i) {
        ModVec next = mod.psi_lift_dsharp(es.back(), rng);
        if (prec_cap > 0) next = next.truncated(prec_cap);
        es.push_back(std::move(next));
    }
    return PsiWindow(mod, std::move(es), false);
}

const ModVec& PsiWindow::entry(int i) const {
    if (i < 0 || i > depth())
        raise(errc::insufficient_window,
              "window index " + std::to_string(i) + " exceeds depth " + std::to_string(depth()));
    return entries_[i];
}

bool PsiWindow::compatible() const {
    for (int i = 0; i + 1 <= depth(); ++i)
        if (!mod_->apply_psi(entries_[i + 1]).agrees_with(entries_[i])) return false;
    return true;
}

BorelElem BorelElem::identity(int p) {
    return {PadicScalar::from_int(p, 1), PadicScalar::zero(p), PadicScalar::from_int(p, 1)};
}

BorelElem BorelElem::diag(const PadicScalar& a, const PadicScalar& d) {
    return {a, PadicScalar::zero(a.p()), d};
}

BorelElem BorelElem::unipotent(const PadicScalar& z) {
    return {PadicScalar::from_int(z.p(), 1), z, PadicScalar::from_int(z.p(), 1)};
}

BorelElem BorelElem::central(const PadicScalar& x) { return {x, PadicScalar::zero(x.p()), x}; }

BorelElem BorelElem::inverse() const {
    PadicScalar ai = a.inv(), di = d.inv();
    return {ai, -(b * ai * di), di};
}

BorelElem operator*(const BorelElem& g, const BorelElem& h) {
    return {g.a * h.a, g.a * h.b + g.b * h.d, g.d * h.d};
}

bool BorelElem::in_bkz() const {
    if (a.is_exact_zero() || d.is_exact_zero()) return false;
    int va = a.val(), vd = d.val();
    if (va != vd) return false;
    return b.val_lower_bound() >= va;
}

namespace {

struct BorelFactors {
    PadicScalar x; // central
    PadicScalar z; // unipotent entry, b/d
    PadicScalar u; // unit part of d/a
    int jp;        // val(d/a)
    int ju;        // indices consumed by the unipotent step
};

BorelFactors factor(const BorelElem& g) {
    if (g.a.is_exact_zero() || g.d.is_exact_zero())
        raise(errc::singular_input, "group element needs a d != 0");
    BorelFactors f;
    f.x = g.a;
    PadicScalar t = g.d * g.a.inv();
    f.jp = t.val();
    f.u = t.shifted(-f.jp);
    if (f.u.digits_zero() || f.u.val() != 0)
        raise(errc::non_unit_diagonal, "diagonal factor is not a unit after removing p-powers");
    f.z = g.b.is_exact_zero() ? PadicScalar::zero(g.a.p()) : g.b * g.d.inv();
    if (f.z.is_exact_zero()) {
        f.ju = 0;
    } else if (!f.z.digits_zero()) {
        f.ju = std::max(0, -f.z.val());
    } else {
        if (f.z.val_lower_bound() < 0)
            raise(errc::insufficient_padic_precision,
                  "unipotent entry valuation indeterminate below 0");
        f.ju = 0;
    }
    // re-multiplication guard: central*unipotent*unit-diag*p-power = g
    if (!(g.a * f.u.shifted(f.jp)).agrees_with(g.d) ||
        !(g.a * f.z * f.u.shifted(f.jp)).agrees_with(g.b))
        raise(errc::non_unit_diagonal, "factorization failed to recompose");
    return f;
}

// (1+X)^w modulo X^prec; w integral (possibly a digits-zero window).
CharSeries one_plus_x_pow(const FqField& F, const PadicScalar& w, int prec) {
    if (w.is_exact_zero()) return CharSeries::one(F).truncated(prec);
    if (w.digits_zero()) {
        int end = w.window_end();
        if (end >= 0 && (end > 20 || ipow(w.p(), end) >= prec))
            return CharSeries::one(F).truncated(prec);
        raise(errc::insufficient_padic_precision,
              "exponent known only as 0 mod p^" + std::to_string(end) +
                  " cannot reach X-precision " + std::to_string(prec));
    }
    return padic_pow(CharSeries::one_plus_x(F), w, prec);
}

} // namespace

PsiWindow borel_act(const BorelElem& g, const PsiWindow& w) {
    const PhiGammaModule& mod = w.mod();
    const FqField& F = mod.field();
    BorelFactors f = factor(g);
    int m = w.depth();

    // diag(1, p^jp)
    std::vector<ModVec> cur;
    if (f.jp >= 0) {
        for (int i = 0; i <= m; ++i)
            cur.push_back(i >= f.jp ? w.entry(i - f.jp) : psi_pow(mod, w.entry(0), f.jp - i));
    } else {
        int k = -f.jp;
        if (m < k)
            raise(errc::insufficient_window,
                  "p-power shift needs " + std::to_string(k - m) + " more indices");
        for (int i = 0; i + k <= m; ++i) cur.push_back(w.entry(i + k));
        m -= k;
    }

    // diag(1, u)
    if (!scalar_is_one(f.u)) {
        PadicScalar uinv = f.u.inv();
        for (auto& v : cur) {
            int px = v.min_hi();
            if (px >= kPrecInf) px = mod.prec_x();
            if (px > 0) v = mod.apply_gamma(v, uinv, px);
        }
    }

    // unipotent
    if (!f.z.is_exact_zero() && f.ju == 0) {
        for (int i = 0; i <= m; ++i) {
            int px = cur[i].min_hi();
            if (px >= kPrecInf) px = mod.prec_x();
            if (px > 0) cur[i] = cur[i].mul(one_plus_x_pow(F, f.z.shifted(i), px));
        }
    } else if (f.ju > 0) {
        if (m < f.ju)
            raise(errc::insufficient_window,
                  "unipotent action needs " + std::to_string(f.ju - m) + " more indices");
        std::vector<ModVec> nxt;
        for (int i = 0; i + f.ju <= m; ++i) {
            ModVec v = cur[i + f.ju];
            int px = v.min_hi();
            if (px >= kPrecInf) px = mod.prec_x();
            if (px > 0) v = v.mul(one_plus_x_pow(F, f.z.shifted(i + f.ju), px));
            nxt.push_back(psi_pow(mod, std::move(v), f.ju));
        }
        cur = std::move(nxt);
        m -= f.ju;
    }

    // central
    FqElem scale = mod.central_char_inv(f.x);
    if (scale.v != F.one())
        for (auto& v : cur) v = v.scaled(scale);
    return PsiWindow(mod, std::move(cur), false);
}

FqElem theta(const PsiWindow& w) {
    const CharSeries& e = w.entry(0).c[0];
    if (!e.coeff_known(0)) raise(errc::insufficient_precision, "entry 0 has no constant term");
    return {w.mod().field(), e.coeff(0)};
}

FqElem theta_after(const BorelElem& g, const PsiWindow& w, int prec_hint) {
    const PhiGammaModule& mod = w.mod();
    BorelFactors f = factor(g);

    int srcidx = f.ju - f.jp;
    int extra_psi = std::max(0, -srcidx);
    srcidx = std::max(0, srcidx);
    if (srcidx > w.depth())
        raise(errc::insufficient_window,
              "need entry " + std::to_string(srcidx) + " of a depth-" +
                  std::to_string(w.depth()) + " window");

    int need = std::max(1, prec_hint);
    long long blow = ipow(mod.p(), std::min(extra_psi + f.ju, 12));
    int pre = static_cast<int>(
        std::min<long long>(static_cast<long long>(need) * blow, kPrecInf / 2));
    ModVec v = w.entry(srcidx).truncated(pre);
    v = psi_pow(mod, std::move(v), extra_psi);

    if (!scalar_is_one(f.u)) {
        int px = v.min_hi();
        if (px >= kPrecInf) px = mod.prec_x();
        v = mod.apply_gamma(v, f.u.inv(), px);
    }
    if (!f.z.is_exact_zero()) {
        int mulneed = need;
        for (int q = 0; q < f.ju; ++q)
            mulneed = static_cast<int>(std::min<long long>(
                static_cast<long long>(mulneed) * mod.p(), kPrecInf / 2));
        v = v.truncated(mulneed);
        int px = std::min(v.min_hi(), mulneed);
        if (px > 0) v = v.mul(one_plus_x_pow(mod.field(), f.z.shifted(f.ju), px));
    }
    v = psi_pow(mod, std::move(v), f.ju);
    FqElem scale = mod.central_char_inv(f.x);
    const CharSeries& e = v.c[0];
    if (!e.coeff_known(0)) raise(errc::insufficient_precision, "result lost the constant term");
    return FqElem{mod.field(), e.coeff(0)} * scale;
}

bool check_acbormu(const BorelElem& g, const PsiWindow& w) {
    if (!g.in_bkz()) raise(errc::not_in_bkz, "element is not a p-power scalar times integral-unit");
    const PhiGammaModule& mod = w.mod();
    FqElem lhs = theta_after(g.inverse(), w);
    FqElem rhs = mod.chi(g.a * g.d) * omega_char(mod.field(), g.a).pow(mod.r()) * theta(w);
    return lhs == rhs;
}

std::vector<PadicScalar> default_lifts(int p) {
    std::vector<PadicScalar> J;
    for (int i = 0; i < p; ++i) J.push_back(PadicScalar::from_int(p, i));
    return J;
}

std::vector<PadicScalar> random_lifts(int p, std::mt19937_64& rng, int spread) {
    std::vector<PadicScalar> J;
    long long range = ipow(p, spread);
    for (int i = 0; i < p; ++i) {
        long long k = static_cast<long long>(rng() % static_cast<uint64_t>(range));
        J.push_back(PadicScalar::from_int(p, i + p * k));
    }
    return J;
}

void validate_lifts(int p, const std::vector<PadicScalar>& J) {
    if (static_cast<int>(J.size()) != p) raise(errc::invalid_argument, "need p representatives");
    for (int i = 0; i < p; ++i) {
        if (!J[i].is_integral()) raise(errc::invalid_argument, "lift is not integral");
        int d0 = J[i].is_exact_zero() ? 0 : J[i].digit_at(0);
        if (d0 != i % p) raise(errc::invalid_argument, "lift does not reduce to its residue");
    }
}

namespace {

BorelElem lower_hecke_inverse(int p, const PadicScalar& j) {
    // [[p, j], [0, 1]]^-1 = [[p^-1, -j p^-1], [0, 1]]
    PadicScalar pinv = PadicScalar::p_power(p, -1);
    return {pinv, -(j * pinv), PadicScalar::from_int(p, 1)};
}

} // namespace

FqElem vanishing_value(int which, int k, const std::vector<FqElem>& lam,
                       const std::vector<PadicScalar>& J, const PsiWindow& w) {
    const PhiGammaModule& mod = w.mod();
    const FqField& F = mod.field();
    const int p = mod.p();
    validate_lifts(p, J);
    FqElem acc{F, 0};

    if (which == 1) {
        BorelElem b1 = BorelElem::diag(PadicScalar::from_int(p, 1), PadicScalar::p_power(p, -1));
        acc = acc + theta_after(b1, w);
        for (const auto& j : J) acc = acc + theta_after(lower_hecke_inverse(p, j), w);
        return acc;
    }
    if (which == 2) {
        for (const auto& j : J) {
            int d0 = j.is_exact_zero() ? 0 : j.digit_at(0);
            FqElem cj = FqElem{F, F.from_int(-d0)}.pow(k);
            acc = acc + cj * theta_after(lower_hecke_inverse(p, j), w);
        }
        return acc;
    }
    if (which == 3) {
        if (static_cast<int>(lam.size()) != p)
            raise(errc::invalid_argument, "case 3 needs p coefficients");
        const int r = mod.r();
        BorelElem d1p = BorelElem::diag(PadicScalar::from_int(p, 1), PadicScalar::p_power(p, 1));
        for (int i = 0; i < p; ++i) {
            if (lam[i].is_zero()) continue;
            FqElem ir = FqElem{F, F.from_int(i)}.pow(r);
            acc = acc + lam[i] * ir * theta(w);
            BorelElem ui = BorelElem::unipotent(PadicScalar::from_int(p, -i));
            for (const auto& j : J) {
                int d0 = j.is_exact_zero() ? 0 : j.digit_at(0);
                FqElem cj = FqElem{F, F.from_int(-d0)}.pow(r);
                BorelElem gij = lower_hecke_inverse(p, j) * d1p * ui;
                acc = acc + lam[i] * cj * theta_after(gij, w);
            }
        }
        return acc;
    }
    raise(errc::invalid_argument, "case must be 1, 2 or 3");
}

bool moments_vanish(const std::vector<FqElem>& lam, int r) {
    if (lam.empty()) return false;
    const FqField& F = *lam[0].F;
    const int p = F.p();
    for (int l = 0; l <= r - 1; ++l) {
        FqElem s{F, 0};
        for (int i = 0; i < p && i < static_cast<int>(lam.size()); ++i)
            s = s + lam[i] * FqElem{F, F.from_int(i)}.pow(l);
        if (!s.is_zero()) return false;
    }
    return true;
}

bool check_vanishing(int which, int k, const std::vector<FqElem>& lam,
                     const std::vector<PadicScalar>& J, const PsiWindow& w) {
    const int r = w.mod().r();
    if (which == 1 && r != 0) raise(errc::invalid_config, "case 1 requires r = 0");
    if ((which == 2 || which == 3) && r < 1)
        raise(errc::invalid_config, "cases 2 and 3 require r >= 1");
    if (which == 2 && (k < 0 || k > r - 1))
        raise(errc::invalid_config, "case 2 needs 0 <= k <= r-1");
    if (which == 3 && !moments_vanish(lam, r))
        raise(errc::moment_condition_violated, "lambda vector fails a moment condition");
    return vanishing_value(which, k, lam, J, w).is_zero();
}

} // namespace phig
