#include <doctest.h>

#include <random>
#include <set>

#include "phig/induction.hpp"

using namespace phig;

namespace {

PadicScalar rnd_unit(int p, std::mt19937_64& rng) {
    long long u = 1 + static_cast<long long>(rng() % 2000);
    while (u % p == 0) ++u;
    return PadicScalar::from_int(p, u);
}

PhiGammaModule make_rho(int p, int r, int s, int lam_int, int N = 200, int M = 6) {
    const FqField& F = FqField::get(p, 1);
    return PhiGammaModule::rho(p, r, s, FqElem{F, F.from_int(lam_int)}, N, M);
}

BorelElem rnd_borel(int p, std::mt19937_64& rng) {
    return {rnd_unit(p, rng).shifted(static_cast<int>(rng() % 3) - 1),
            rnd_unit(p, rng).shifted(static_cast<int>(rng() % 4) - 2),
            rnd_unit(p, rng).shifted(static_cast<int>(rng() % 3) - 1)};
}

} // namespace

TEST_CASE("coset reduction: worked examples") {
    const int p = 3;
    // identity
    auto [r0, u0] = coset_reduce(p, BorelElem::identity(p));
    CHECK(r0 == CosetRep{});
    CHECK(u0.a.agrees_with(PadicScalar::from_int(p, 1)));

    // [[p, j],[0,1]] -> beta = j0/p, delta = -1, u = p [[1,(j-j0)/p],[0,1]]
    for (long long j : {0LL, 1LL, 2LL, 4LL, 7LL, 11LL}) {
        BorelElem g{PadicScalar::p_power(p, 1), PadicScalar::from_int(p, j),
                    PadicScalar::from_int(p, 1)};
        auto [rep, u] = coset_reduce(p, g);
        CHECK(rep.delta == -1);
        if (j % p == 0) {
            CHECK(rep.beta_den_exp == 0);
        } else {
            CHECK(rep.beta_den_exp == 1);
            CHECK(rep.beta_num == static_cast<uint64_t>(j % p));
        }
        CHECK(u.a.val() == 1);
        CHECK(u.d.val() == 1);
        // u/p has b-entry (j - j0)/p
        CHECK(u.b.agrees_with(PadicScalar::from_int(p, j - j % p)));
        // recomposition
        BorelElem back = rep.matrix(p) * u;
        CHECK(back.a.agrees_with(g.a));
        CHECK(back.b.agrees_with(g.b));
        CHECK(back.d.agrees_with(g.d));
    }

    // already a representative: [[1, 1/p],[0,1]]
    BorelElem g{PadicScalar::from_int(p, 1), PadicScalar::from_int(p, 1).shifted(-1),
                PadicScalar::from_int(p, 1)};
    auto [rep, u] = coset_reduce(p, g);
    CHECK(rep.beta_num == 1);
    CHECK(rep.beta_den_exp == 1);
    CHECK(rep.delta == 0);
    CHECK(u.b.digits_zero());

    CHECK_THROWS_AS(coset_reduce(p, BorelElem::diag(PadicScalar::zero(p),
                                                    PadicScalar::from_int(p, 1))),
                    error);
}

TEST_CASE("coset reduction is a bijection certificate on a transversal") {
    const int p = 5;
    std::set<CosetRep> seen;
    int count = 0;
    for (int e = 0; e <= 2; ++e) {
        for (uint64_t num = 0; num < pow_u64(p, e); ++num) {
            if (e > 0 && (num == 0 || num % p == 0)) continue;
            for (int delta : {-1, 0, 1}) {
                CosetRep rep{num, e, delta};
                auto [rep2, u] = coset_reduce(p, rep.matrix(p));
                CHECK(rep2 == rep);
                CHECK(u.a.val() == 0);
                CHECK((u.b.is_exact_zero() || u.b.digits_zero()));
                seen.insert(rep2);
                ++count;
            }
        }
    }
    CHECK(static_cast<int>(seen.size()) == count);
}

TEST_CASE("sym action on upper-triangular matrices") {
    const FqField& F = FqField::get(5, 1);
    SymPoly xr = SymPoly::monomial(F, 3, 0);
    // diag(a, d): x^3 -> a^3 x^3
    CHECK(xr.act_upper(2, 0, 1).c[0] == F.pow_ll(2, 3));
    // y^3 under [[1,b],[0,1]]: (bx + y)^3
    SymPoly y3 = SymPoly::monomial(F, 3, 3);
    SymPoly img = y3.act_upper(1, 2, 1);
    for (int t = 0; t <= 3; ++t) {
        // C(3,t) 2^(3-t)
        uint32_t expect = F.mul(F.from_int(t == 0 || t == 3 ? 1 : 3), F.pow_ll(2, 3 - t));
        CHECK(img.c[t] == expect);
    }
}

TEST_CASE("induction action: identity, composition") {
    std::mt19937_64 rng(61);
    PhiGammaModule mod = make_rho(3, 2, 1, 2);
    const FqField& F = mod.field();

    IndVec base = IndVec::at_identity(mod, SymPoly::monomial(F, 2, 1));
    CHECK(act_induction(BorelElem::identity(3), base) == base);

    for (int t = 0; t < 60; ++t) {
        BorelElem g = rnd_borel(3, rng), h = rnd_borel(3, rng);
        IndVec F0 = IndVec::at_identity(mod, SymPoly::monomial(F, 2, rng() % 3, 1 + rng() % 2));
        IndVec via = act_induction(g, act_induction(h, F0));
        IndVec direct = act_induction(g * h, F0);
        CHECK(via == direct);
    }
}

TEST_CASE("B cap KZ translate of [1, x^r] matches the acbormu scalar") {
    std::mt19937_64 rng(62);
    for (int p : {3, 5}) {
        for (int s : {0, 1}) {
            PhiGammaModule mod = make_rho(p, 2, s, 2);
            const FqField& F = mod.field();
            IndVec base = IndVec::at_identity(mod, SymPoly::monomial(F, 2, 0));
            for (int t = 0; t < 20; ++t) {
                int v = static_cast<int>(rng() % 3) - 1;
                BorelElem g{rnd_unit(p, rng).shifted(v),
                            rnd_unit(p, rng).shifted(v + static_cast<int>(rng() % 3)),
                            rnd_unit(p, rng).shifted(v)};
                IndVec img = act_induction(g, base);
                REQUIRE(img.supp.size() == 1);
                const auto& [rep, P] = *img.supp.begin();
                CHECK(rep == CosetRep{});
                FqElem expect = mod.chi(g.a * g.d) * omega_char(F, g.a).pow(mod.r());
                CHECK(P == SymPoly::monomial(F, 2, 0, expect.v));
            }
        }
    }
}

TEST_CASE("hecke operator: support shapes and equivariance") {
    std::mt19937_64 rng(63);
    PhiGammaModule mod = make_rho(3, 1, 0, 2);
    const FqField& F = mod.field();
    auto J = default_lifts(3);

    // r >= 1: T([1,x^r]) = sum_j [[p,j],[0,1]] [1, x^r]
    IndVec tx = hecke_T(IndVec::at_identity(mod, SymPoly::monomial(F, 1, 0)), J);
    CHECK(tx.supp.size() == 3); // b_{0,-1}, b_{1/3,-1}, b_{2/3,-1}
    for (const auto& [rep, P] : tx.supp) {
        CHECK(rep.delta == -1);
        CHECK(P.c[1] == 0); // values on the x^r line
    }

    // T(y^r): the extra diag(1,p) term appears at b_{0,1}
    IndVec ty = hecke_T(IndVec::at_identity(mod, SymPoly::monomial(F, 1, 1)), J);
    bool has_up = false;
    for (const auto& [rep, P] : ty.supp)
        if (rep.delta == 1 && rep.beta_den_exp == 0) has_up = true;
    CHECK(has_up);

    // equivariance: T(g F) = g T(F)
    for (int t = 0; t < 50; ++t) {
        BorelElem g = rnd_borel(3, rng);
        IndVec F0 = IndVec::at_identity(mod, SymPoly::monomial(F, 1, rng() % 2, 1 + rng() % 2));
        if (t % 3 == 0) F0 = F0 + act_induction(rnd_borel(3, rng), F0);
        auto Jr = (t % 2 == 0) ? J : random_lifts(3, rng);
        CHECK(hecke_T(act_induction(g, F0), Jr) == act_induction(g, hecke_T(F0, Jr)));
    }
}

TEST_CASE("r = 0 hecke kernel generator support") {
    PhiGammaModule mod = make_rho(3, 0, 0, 1);
    auto gens = kernel_generators(mod, default_lifts(3), {});
    REQUIRE(gens.size() == 1);
    // supports: b_{0,1} plus the reductions of [[3,j],[0,1]]
    std::set<CosetRep> expect;
    expect.insert(CosetRep{0, 0, 1});
    expect.insert(CosetRep{0, 0, -1});
    expect.insert(CosetRep{1, 1, -1});
    expect.insert(CosetRep{2, 1, -1});
    std::set<CosetRep> got;
    for (const auto& [rep, P] : gens[0].supp) got.insert(rep);
    CHECK(got == expect);
}

TEST_CASE("moment vectors") {
    const FqField& F3 = FqField::get(3, 1);
    auto b1 = moment_vectors(F3, 1);
    CHECK(b1.size() == 2);
    for (const auto& v : b1) CHECK(moments_vanish(v, 1));

    auto b2 = moment_vectors(F3, 2);
    REQUIRE(b2.size() == 1);
    CHECK(moments_vanish(b2[0], 2));
    // the kernel line for p=3, r=2 is spanned by (1,1,1)
    CHECK(b2[0][0] == b2[0][1]);
    CHECK(b2[0][1] == b2[0][2]);
    CHECK(!b2[0][0].is_zero());

    for (int p : {3, 5, 7}) {
        const FqField& F = FqField::get(p, 1);
        for (int r = 1; r <= p - 1; ++r) {
            auto basis = moment_vectors(F, r);
            CHECK(static_cast<int>(basis.size()) == p - r);
            for (const auto& v : basis) CHECK(moments_vanish(v, r));
        }
    }
}

TEST_CASE("kernel generators live on the x^r line and match T of monomials") {
    std::mt19937_64 rng(64);
    for (int p : {3, 5}) {
        const FqField& F = FqField::get(p, 1);
        for (int r = 1; r <= p - 1; r += 2) {
            PhiGammaModule mod = make_rho(p, r, 1, 2);
            auto J = random_lifts(p, rng);
            auto lambdas = moment_vectors(F, r);
            auto gens = kernel_generators(mod, J, lambdas);
            CHECK(gens.size() == static_cast<size_t>(r) + lambdas.size());

            for (const auto& g : gens)
                for (const auto& [rep, P] : g.supp)
                    for (int i = 1; i <= r; ++i) CHECK(P.c[i] == 0);

            // family A generator i equals T([1, x^(r-i) y^i]) for i <= r-1
            for (int i = 0; i <= r - 1; ++i) {
                IndVec ti = hecke_T(IndVec::at_identity(mod, SymPoly::monomial(F, r, i)), J);
                CHECK(gens[i] == ti);
            }

            // third family: T(sum_i lam_i [b(i/p,-1), y^r]) has its [1,..]
            // component equal to (sum_i lam_i i^r) x^r
            const auto& lam = lambdas[0];
            IndVec v = IndVec::zero(mod);
            for (int i = 0; i < p; ++i) {
                BorelElem bi{PadicScalar::from_int(p, 1),
                             PadicScalar::from_int(p, i).shifted(-1),
                             PadicScalar::p_power(p, -1)};
                v = v + act_induction(bi, IndVec::at_identity(mod, SymPoly::monomial(F, r, r)))
                            .scaled(lam[i].v);
            }
            IndVec tv = hecke_T(v, J);
            FqElem expect{F, 0};
            for (int i = 0; i < p; ++i) expect = expect + lam[i] * FqElem{F, F.from_int(i)}.pow(r);
            auto it = tv.supp.find(CosetRep{});
            if (expect.is_zero()) {
                CHECK(it == tv.supp.end());
            } else {
                REQUIRE(it != tv.supp.end());
                CHECK(it->second == SymPoly::monomial(F, r, 0, expect.v));
            }
            // and T(v) equals the displayed third-family generator
            CHECK(tv == gens[r]);
        }
    }
}

TEST_CASE("evaluate_pi: base cases and kernel vanishing") {
    std::mt19937_64 rng(65);
    for (int p : {3, 5}) {
        const FqField& F = FqField::get(p, 1);
        int r = p - 2;
        PhiGammaModule mod = make_rho(p, r, 0, 2, 250);
        IndVec base = IndVec::at_identity(mod, SymPoly::monomial(F, r, 0));

        for (int t = 0; t < 10; ++t) {
            PsiWindow w = PsiWindow::build_up(mod, mod.dsharp_random(20, rng), 4, rng, 700);
            // pi([1,x^r]) = theta
            CHECK(evaluate_pi(base, w) == theta(w));

            // B cap KZ translate scales by the acbormu factor
            int v = static_cast<int>(rng() % 3) - 1;
            BorelElem g{rnd_unit(p, rng).shifted(v),
                        rnd_unit(p, rng).shifted(v + static_cast<int>(rng() % 2)),
                        rnd_unit(p, rng).shifted(v)};
            FqElem expect = mod.chi(g.a * g.d) * omega_char(F, g.a).pow(r) * theta(w);
            CHECK(evaluate_pi(act_induction(g, base), w) == expect);
        }

        // kernel generators evaluate to 0, also after random translates
        auto lambdas = moment_vectors(F, r);
        auto J = default_lifts(p);
        auto gens = kernel_generators(mod, J, lambdas);
        int y0_prec = 2 * p * p * p + 10;
        for (int t = 0; t < 6; ++t) {
            PsiWindow w =
                PsiWindow::build_up(mod, mod.dsharp_random(y0_prec, rng), 5, rng, 8 * p * p * p);
            ThetaCache cache;
            for (const auto& g : gens) {
                CHECK(evaluate_pi(g, w, &cache).is_zero());
                // translate keeping the p-power depth within the window budget
                BorelElem tr{rnd_unit(p, rng),
                             rnd_unit(p, rng).shifted(static_cast<int>(rng() % 2) - 1),
                             rnd_unit(p, rng).shifted(static_cast<int>(rng() % 3) - 1)};
                CHECK(evaluate_pi(act_induction(tr, g), w, &cache).is_zero());
            }
        }
    }
}

TEST_CASE("value off the x^r line is rejected") {
    std::mt19937_64 rng(66);
    PhiGammaModule mod = make_rho(3, 1, 0, 1);
    const FqField& F = mod.field();
    IndVec bad = IndVec::at_identity(mod, SymPoly::monomial(F, 1, 1));
    PsiWindow w = PsiWindow::build_up(mod, mod.dsharp_random(15, rng), 1, rng, 200);
    CHECK_THROWS_AS(evaluate_pi(bad, w), error);
}
