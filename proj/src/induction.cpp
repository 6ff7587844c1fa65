#include "phig/induction.hpp"

#include <algorithm>
#include <sstream>

namespace phig {

namespace {

int small_binom_mod(int n, int k, int p) {
    if (k < 0 || k > n) return 0;
    long long num = 1, den = 1;
    for (int i = 0; i < k; ++i) {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    for (int t = 1; t < p; ++t)
        if (den * t % p == 1) return static_cast<int>(num * t % p);
    return 0;
}

int residue0(const PadicScalar& j) { return j.is_exact_zero() ? 0 : j.digit_at(0); }

} // namespace

SymPoly SymPoly::zero(const FqField& F, int r) {
    SymPoly P;
    P.F = &F;
    P.c.assign(r + 1, 0);
    return P;
}

SymPoly SymPoly::monomial(const FqField& F, int r, int i, uint32_t coeff) {
    if (i < 0 || i > r) raise(errc::invalid_argument, "monomial index out of range");
    SymPoly P = zero(F, r);
    P.c[i] = coeff;
    return P;
}

bool SymPoly::is_zero() const {
    return std::all_of(c.begin(), c.end(), [](uint32_t v) { return v == 0; });
}

SymPoly SymPoly::scaled(uint32_t k) const {
    SymPoly P = *this;
    for (auto& v : P.c) v = F->mul(v, k);
    return P;
}

SymPoly operator+(const SymPoly& a, const SymPoly& b) {
    if (a.r() != b.r()) raise(errc::invalid_argument, "degree mismatch");
    SymPoly P = a;
    for (size_t i = 0; i < P.c.size(); ++i) P.c[i] = a.F->add(a.c[i], b.c[i]);
    return P;
}

bool operator==(const SymPoly& a, const SymPoly& b) { return a.F == b.F && a.c == b.c; }

SymPoly SymPoly::act_upper(uint32_t a, uint32_t b, uint32_t d) const {
    // x^(r-i) y^i -> (a x)^(r-i) (b x + d y)^i
    const int rr = r();
    SymPoly out = zero(*F, rr);
    const int p = F->p();
    for (int i = 0; i <= rr; ++i) {
        if (c[i] == 0) continue;
        uint32_t ai = F->pow_ll(a, rr - i);
        for (int t = 0; t <= i; ++t) {
            uint32_t term = F->mul(c[i], ai);
            term = F->mul(term, F->from_int(small_binom_mod(i, t, p)));
            term = F->mul(term, F->pow_ll(b, i - t));
            term = F->mul(term, F->pow_ll(d, t));
            out.c[t] = F->add(out.c[t], term);
        }
    }
    return out;
}

std::string SymPoly::pretty() const {
    std::ostringstream os;
    bool first = true;
    const int rr = r();
    for (int i = 0; i <= rr; ++i) {
        if (c[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << F->digits(c[i]);
        if (rr - i > 0) os << "*x^" << (rr - i);
        if (i > 0) os << "*y^" << i;
    }
    if (first) os << "0";
    return os.str();
}

BorelElem CosetRep::matrix(int p) const {
    PadicScalar beta = beta_den_exp == 0
                           ? PadicScalar::zero(p)
                           : PadicScalar::from_int(p, static_cast<long long>(beta_num))
                                 .shifted(-beta_den_exp);
    return {PadicScalar::from_int(p, 1), beta, PadicScalar::p_power(p, delta)};
}

BorelElem CosetRep::inverse_matrix(int p) const {
    PadicScalar beta = beta_den_exp == 0
                           ? PadicScalar::zero(p)
                           : PadicScalar::from_int(p, static_cast<long long>(beta_num))
                                 .shifted(-beta_den_exp);
    return {PadicScalar::from_int(p, 1), (-beta).shifted(-delta), PadicScalar::p_power(p, -delta)};
}

std::string CosetRep::to_string() const {
    std::ostringstream os;
    os << "b(" << beta_num << "/p^" << beta_den_exp << "," << delta << ")";
    return os.str();
}

IndVec IndVec::zero(const PhiGammaModule& mod) {
    IndVec v;
    v.mod = &mod;
    return v;
}

IndVec IndVec::at_identity(const PhiGammaModule& mod, SymPoly P) {
    IndVec v = zero(mod);
    v.add_term(CosetRep{}, P);
    return v;
}

IndVec IndVec::scaled(uint32_t k) const {
    IndVec v = zero(*mod);
    if (k == 0) return v;
    for (const auto& [b, P] : supp) v.add_term(b, P.scaled(k));
    return v;
}

IndVec operator+(const IndVec& a, const IndVec& b) {
    IndVec v = a;
    for (const auto& [rep, P] : b.supp) v.add_term(rep, P);
    return v;
}

bool operator==(const IndVec& a, const IndVec& b) { return a.supp == b.supp; }

void IndVec::add_term(const CosetRep& b, const SymPoly& P) {
    auto it = supp.find(b);
    if (it == supp.end()) {
        if (!P.is_zero()) supp.emplace(b, P);
        return;
    }
    it->second = it->second + P;
    if (it->second.is_zero()) supp.erase(it);
}

std::string IndVec::to_text() const {
    std::ostringstream os;
    for (const auto& [b, P] : supp) {
        os << b.beta_num << " " << b.beta_den_exp << " " << b.delta;
        for (uint32_t v : P.c) os << " " << mod->field().digits(v);
        os << "\n";
    }
    return os.str();
}

std::pair<CosetRep, BorelElem> coset_reduce(int p, const BorelElem& g) {
    if (g.a.is_exact_zero() || g.d.is_exact_zero())
        raise(errc::singular_input, "upper-triangular element with zero diagonal");
    int m = g.a.val();
    int delta = g.d.val() - m;
    CosetRep rep;
    rep.delta = delta;
    if (!g.b.is_exact_zero()) {
        PadicScalar q = g.b.shifted(-m) * g.d.shifted(-g.d.val()).inv();
        if (q.val_lower_bound() < 0) {
            int e = -q.val(); // raises when the window cannot settle the digits
            rep.beta_den_exp = e;
            rep.beta_num = q.unit_digits_mod(e);
        }
    }
    BorelElem u = rep.inverse_matrix(p) * g;
    return {rep, u};
}

IndVec act_induction(const BorelElem& g, const IndVec& F) {
    const PhiGammaModule& mod = *F.mod;
    const FqField& k = mod.field();
    const int p = mod.p();
    IndVec out = IndVec::zero(mod);
    for (const auto& [rep, P] : F.supp) {
        BorelElem gb = g * rep.matrix(p);
        auto [rep2, u] = coset_reduce(p, gb);
        int m = u.a.val();
        uint32_t a0 = static_cast<uint32_t>(u.a.unit_digit());
        uint32_t d0 = static_cast<uint32_t>(u.d.unit_digit());
        uint32_t b0 = u.b.is_exact_zero() ? 0 : static_cast<uint32_t>(u.b.digit_at(m));
        FqElem tw = mod.chi(u.a * u.d);
        out.add_term(rep2, P.act_upper(k.from_int(a0), k.from_int(b0), k.from_int(d0)).scaled(tw.v));
    }
    return out;
}

IndVec hecke_T(const IndVec& F, const std::vector<PadicScalar>& J) {
    const PhiGammaModule& mod = *F.mod;
    const FqField& k = mod.field();
    const int p = mod.p();
    const int r = mod.r();
    validate_lifts(p, J);

    // T([1, x^(r-i) y^i]) for 0 <= i <= r
    std::vector<IndVec> T0;
    T0.reserve(r + 1);
    for (int i = 0; i <= r; ++i) {
        IndVec ti = IndVec::zero(mod);
        for (const auto& j : J) {
            uint32_t cj = k.pow_ll(k.from_int(-residue0(j)), i);
            BorelElem gj{PadicScalar::p_power(p, 1), j, PadicScalar::from_int(p, 1)};
            ti = ti + act_induction(gj, IndVec::at_identity(mod, SymPoly::monomial(k, r, 0, cj)));
        }
        if (i == r) {
            BorelElem dg = BorelElem::diag(PadicScalar::from_int(p, 1), PadicScalar::p_power(p, 1));
            ti = ti + act_induction(dg, IndVec::at_identity(mod, SymPoly::monomial(k, r, r)));
        }
        T0.push_back(std::move(ti));
    }

    IndVec out = IndVec::zero(mod);
    for (const auto& [rep, P] : F.supp) {
        IndVec local = IndVec::zero(mod);
        for (int i = 0; i <= r; ++i)
            if (P.c[i] != 0) local = local + T0[i].scaled(P.c[i]);
        out = out + act_induction(rep.matrix(p), local);
    }
    return out;
}

std::vector<std::vector<FqElem>> moment_vectors(const FqField& F, int r) {
    const int p = F.p();
    if (r < 1 || r > p - 1) raise(errc::parameter_out_of_range, "need 1 <= r <= p-1");
    // kernel of the r x p matrix M[l][i] = i^l over F_p
    std::vector<std::vector<int>> M(r, std::vector<int>(p));
    for (int l = 0; l < r; ++l)
        for (int i = 0; i < p; ++i) {
            int v = 1;
            for (int e = 0; e < l; ++e) v = v * i % p;
            M[l][i] = v;
        }
    auto inv_mod = [&](int a) {
        for (int t = 1; t < p; ++t)
            if (a * t % p == 1) return t;
        return 0;
    };
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < p && row < r; ++col) {
        int sel = -1;
        for (int i = row; i < r; ++i)
            if (M[i][col] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(M[sel], M[row]);
        int iv = inv_mod(M[row][col]);
        for (int j = 0; j < p; ++j) M[row][j] = M[row][j] * iv % p;
        for (int i = 0; i < r; ++i) {
            if (i == row || M[i][col] == 0) continue;
            int f = M[i][col];
            for (int j = 0; j < p; ++j) M[i][j] = ((M[i][j] - f * M[row][j]) % p + p) % p;
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<std::vector<FqElem>> basis;
    std::vector<bool> is_pivot(p, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int free = 0; free < p; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FqElem> v(p, FqElem{F, 0});
        v[free] = FqElem{F, 1};
        for (size_t i = 0; i < pivot_col.size(); ++i)
            v[pivot_col[i]] = FqElem{F, F.from_int(-M[i][free])};
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<IndVec> kernel_generators(const PhiGammaModule& mod,
                                      const std::vector<PadicScalar>& J,
                                      const std::vector<std::vector<FqElem>>& lambdas) {
    const FqField& k = mod.field();
    const int p = mod.p();
    const int r = mod.r();
    validate_lifts(p, J);
    std::vector<IndVec> out;

    if (r == 0) {
        IndVec g = IndVec::zero(mod);
        BorelElem dg = BorelElem::diag(PadicScalar::from_int(p, 1), PadicScalar::p_power(p, 1));
        g = g + act_induction(dg, IndVec::at_identity(mod, SymPoly::monomial(k, 0, 0)));
        for (const auto& j : J) {
            BorelElem gj{PadicScalar::p_power(p, 1), j, PadicScalar::from_int(p, 1)};
            g = g + act_induction(gj, IndVec::at_identity(mod, SymPoly::monomial(k, 0, 0)));
        }
        out.push_back(std::move(g));
        return out;
    }

    std::vector<IndVec> Fj;
    for (const auto& j : J) {
        BorelElem gj{PadicScalar::p_power(p, 1), j, PadicScalar::from_int(p, 1)};
        Fj.push_back(act_induction(gj, IndVec::at_identity(mod, SymPoly::monomial(k, r, 0))));
    }
    for (int i = 0; i <= r - 1; ++i) {
        IndVec g = IndVec::zero(mod);
        for (int t = 0; t < p; ++t)
            g = g + Fj[t].scaled(k.pow_ll(k.from_int(-residue0(J[t])), i));
        out.push_back(std::move(g));
    }
    IndVec H = IndVec::zero(mod);
    for (int t = 0; t < p; ++t)
        H = H + Fj[t].scaled(k.pow_ll(k.from_int(-residue0(J[t])), r));
    for (const auto& lam : lambdas) {
        if (static_cast<int>(lam.size()) != p)
            raise(errc::invalid_argument, "lambda vector needs p entries");
        if (!moments_vanish(lam, r))
            raise(errc::moment_condition_violated, "lambda vector fails a moment condition");
        IndVec g = IndVec::zero(mod);
        for (int i = 0; i < p; ++i) {
            if (lam[i].is_zero()) continue;
            uint32_t ir = k.pow_ll(k.from_int(i), r);
            g = g + IndVec::at_identity(mod, SymPoly::monomial(k, r, 0, k.mul(lam[i].v, ir)));
            BorelElem bi{PadicScalar::from_int(p, 1),
                         PadicScalar::from_int(p, i).shifted(-1), PadicScalar::p_power(p, -1)};
            g = g + act_induction(bi, H).scaled(lam[i].v);
        }
        out.push_back(std::move(g));
    }
    return out;
}

FqElem evaluate_pi(const IndVec& F, const PsiWindow& w, ThetaCache* cache) {
    const PhiGammaModule& mod = *F.mod;
    const FqField& k = mod.field();
    FqElem acc{k, 0};
    for (const auto& [rep, P] : F.supp) {
        for (int i = 1; i <= P.r(); ++i)
            if (P.c[i] != 0)
                raise(errc::value_outside_line,
                      "support value has a component off the x^r line: " + P.pretty());
        if (P.c[0] == 0) continue;
        FqElem th{k, 0};
        if (cache != nullptr) {
            auto it = cache->find(rep);
            if (it != cache->end()) {
                th = it->second;
            } else {
                th = theta_after(rep.inverse_matrix(mod.p()), w, 2);
                cache->emplace(rep, th);
            }
        } else {
            th = theta_after(rep.inverse_matrix(mod.p()), w, 2);
        }
        acc = acc + FqElem{k, P.c[0]} * th;
    }
    return acc;
}

} // namespace phig
