#include <doctest.h>

#include <random>

#include "phig/series.hpp"

using namespace phig;

namespace {

CharSeries rnd_laurent(const FqField& F, std::mt19937_64& rng, int N) {
    std::uniform_int_distribution<int> lod(-2 * F.p(), 2);
    return random_series(F, lod(rng), N, rng);
}

} // namespace

TEST_CASE("phi on monomials and polynomials") {
    const FqField& F = FqField::get(3, 1);
    CHECK(phi(CharSeries::x(F)).agrees_with(CharSeries::monomial(F, 1, 3)));
    CHECK(phi(CharSeries::monomial(F, 1, -1)).agrees_with(CharSeries::monomial(F, 1, -3)));
    CharSeries f = CharSeries::from_coeffs(F, 0, {1, 2}); // 1 + 2X
    CharSeries expect = CharSeries::from_coeffs(F, 0, {1, 0, 0, 2});
    CHECK(phi(f).agrees_with(expect));
    CHECK(phi(f).exact());
}

TEST_CASE("phi applies coefficient frobenius") {
    const FqField& F = FqField::get(3, 2);
    uint32_t g = F.generator();
    CharSeries f = CharSeries::monomial(F, g, 1);
    CHECK(phi(f).coeff(3) == F.frob(g));
}

TEST_CASE("psi monomials: psi(X^t) = (-1)^t") {
    for (int p : {3, 5, 7}) {
        const FqField& F = FqField::get(p, 1);
        for (int t = 0; t <= p - 1; ++t) {
            CharSeries r = psi(CharSeries::monomial(F, 1, t));
            CHECK(r.coeff(0) == (t % 2 == 0 ? 1u : F.neg(1)));
            CHECK(r.agrees_with(CharSeries::monomial(F, t % 2 == 0 ? 1 : F.neg(1), 0)));
        }
        // and on a negative exponent: psi(X^-1) = X^-1 for odd p
        CHECK(psi(CharSeries::monomial(F, 1, -1)).agrees_with(CharSeries::monomial(F, 1, -1)));
    }
}

TEST_CASE("psi is a left inverse of phi") {
    std::mt19937_64 rng(2024);
    for (int p : {3, 5}) {
        for (int m : {1, 2}) {
            const FqField& F = FqField::get(p, m);
            for (int t = 0; t < 100; ++t) {
                CharSeries f = rnd_laurent(F, rng, 40);
                CharSeries g = psi(phi(f));
                CHECK(g.hi() >= f.hi());
                CHECK(g.agrees_with(f));
            }
        }
    }
}

TEST_CASE("psi kills the twisted images and projects products") {
    std::mt19937_64 rng(99);
    const FqField& F = FqField::get(5, 1);
    CharSeries ox = CharSeries::one_plus_x(F);
    for (int t = 0; t < 40; ++t) {
        CharSeries a = random_series(F, 0, 30, rng);
        CharSeries b = rnd_laurent(F, rng, 30);
        // psi((1+X)^i phi(c)) = 0 for 1 <= i <= p-1
        CharSeries pw = CharSeries::one(F);
        for (int i = 1; i <= 4; ++i) {
            pw = pw * ox;
            CHECK(psi(pw * phi(a)).known_zero());
        }
        // psi(phi(a) b) = a psi(b)
        CHECK(psi(phi(a) * b).agrees_with(a * psi(b)));
    }
}

TEST_CASE("geometric sum identity") {
    for (int p : {3, 5, 7, 11, 13}) {
        const FqField& F = FqField::get(p, 1);
        CharSeries acc = CharSeries::zero(F);
        CharSeries pw = CharSeries::one(F);
        CharSeries ox = CharSeries::one_plus_x(F);
        for (int j = 0; j < p; ++j) {
            acc = acc + pw;
            pw = pw * ox;
        }
        CHECK(acc.exact());
        CHECK(acc.agrees_with(CharSeries::monomial(F, 1, p - 1)));
    }
}

TEST_CASE("double psi constant-term identity") {
    // psi(X^(p-1) psi(X^(p-1) a))(0) = a(0)
    std::mt19937_64 rng(5);
    for (int p : {3, 5}) {
        const FqField& F = FqField::get(p, 1);
        CharSeries xp = CharSeries::monomial(F, 1, p - 1);
        for (int t = 0; t < 50; ++t) {
            CharSeries a = random_series(F, 0, 3 * p * p, rng);
            CharSeries r = psi(xp * psi(xp * a));
            CHECK(r.coeff(0) == a.coeff(0));
        }
    }
}

TEST_CASE("gamma_subst identity and inversion") {
    const FqField& F = FqField::get(3, 1);
    std::mt19937_64 rng(17);
    PadicScalar one = PadicScalar::ratio(3, 1, 1, 6);
    CharSeries f = rnd_laurent(F, rng, 30);
    CHECK(gamma_subst(f, one, 30).agrees_with(f));

    // X -> -X + X^2 - X^3 + ... under a = -1
    PadicScalar minus1 = PadicScalar::from_int(3, -1);
    CharSeries g = gamma_subst(CharSeries::x(F), minus1, 10);
    for (int d = 1; d < 10; ++d) CHECK(g.coeff(d) == (d % 2 == 1 ? F.neg(1) : 1u));
}

TEST_CASE("gamma_subst is a group action") {
    std::mt19937_64 rng(171);
    for (int p : {3, 5}) {
        const FqField& F = FqField::get(p, 1);
        for (int t = 0; t < 25; ++t) {
            long long ua = 1 + static_cast<long long>(rng() % 400);
            long long ub = 1 + static_cast<long long>(rng() % 400);
            while (ua % p == 0) ++ua;
            while (ub % p == 0) ++ub;
            PadicScalar a = PadicScalar::from_int(p, ua);
            PadicScalar b = PadicScalar::from_int(p, ub);
            CharSeries f = rnd_laurent(F, rng, 35);
            CharSeries lhs = gamma_subst(gamma_subst(f, a, 35), b, 35);
            CharSeries rhs = gamma_subst(f, a * b, 35);
            CHECK(lhs.overlap_with(rhs) > 0);
            CHECK(lhs.agrees_with(rhs));
        }
    }
}

TEST_CASE("phi and gamma commute") {
    std::mt19937_64 rng(4242);
    const FqField& F = FqField::get(3, 1);
    for (int t = 0; t < 25; ++t) {
        long long u = 1 + static_cast<long long>(rng() % 300);
        if (u % 3 == 0) ++u;
        PadicScalar a = PadicScalar::from_int(3, u);
        CharSeries f = rnd_laurent(F, rng, 40);
        CHECK(gamma_subst(phi(f), a, 40).agrees_with(phi(gamma_subst(f, a, 40))));
    }
}

TEST_CASE("padic_pow basics") {
    const FqField& F = FqField::get(3, 1);
    std::mt19937_64 rng(31);
    CharSeries f = CharSeries::one(F) + random_series(F, 1, 25, rng);
    CHECK(padic_pow(f, PadicScalar::zero(3), 25).agrees_with(CharSeries::one(F).truncated(25)));
    CHECK(padic_pow(f, PadicScalar::from_int(3, 1), 25).agrees_with(f));

    PadicScalar half = PadicScalar::ratio(3, 1, 2, 4);
    CharSeries r = padic_pow(f, half, 25);
    CHECK((r * r).agrees_with(f));

    PadicScalar s = PadicScalar::ratio(3, 4, 7, 4), t = PadicScalar::ratio(3, 2, 5, 4);
    CHECK((padic_pow(f, s, 25) * padic_pow(f, t, 25)).agrees_with(padic_pow(f, s + t, 25)));

    CHECK_THROWS_AS(padic_pow(CharSeries::x(F), half, 10), error);
    CHECK_THROWS_AS(padic_pow(f.scaled(2), half, 10), error);
}

TEST_CASE("f_gamma values") {
    const FqField& F = FqField::get(3, 1);
    PadicScalar one = PadicScalar::ratio(3, 1, 1, 6);
    CHECK(f_gamma(F, one, 12).agrees_with(CharSeries::one(F).truncated(12)));

    // a = 4, p = 3: 1/(1 + X^2 + X^3) = 1 - X^2 - X^3 + X^4 + ...
    PadicScalar four = PadicScalar::from_int(3, 4);
    CharSeries f = f_gamma(F, four, 5);
    CHECK(f.coeff(0) == 1);
    CHECK(f.coeff(1) == 0);
    CHECK(f.coeff(2) == F.neg(1));
    CHECK(f.coeff(3) == F.neg(1));
    CHECK(f.coeff(4) == 1);
}

TEST_CASE("f_gamma cocycle") {
    // f_(ab) = f_b * gamma_b(f_a)
    std::mt19937_64 rng(8);
    for (int p : {3, 5}) {
        const FqField& F = FqField::get(p, 1);
        for (int t = 0; t < 20; ++t) {
            long long ua = 1 + static_cast<long long>(rng() % 300);
            long long ub = 1 + static_cast<long long>(rng() % 300);
            while (ua % p == 0) ++ua;
            while (ub % p == 0) ++ub;
            PadicScalar a = PadicScalar::from_int(p, ua), b = PadicScalar::from_int(p, ub);
            CharSeries lhs = f_gamma(F, a * b, 30);
            CharSeries rhs = f_gamma(F, b, 30) * gamma_subst(f_gamma(F, a, 30), b, 30);
            CHECK(lhs.agrees_with(rhs));
        }
    }
}

TEST_CASE("psi_section witnesses") {
    std::mt19937_64 rng(55);
    const FqField& F = FqField::get(3, 1);

    // contract case: t = 1, divisibility 2 -> some u with X^2 | u, psi(u) = 1
    CharSeries u = psi_section(CharSeries::one(F), 2, rng);
    CHECK(u.lo() >= 2);
    CHECK(psi(u).agrees_with(CharSeries::one(F)));

    // phi(t) is always a witness at divisibility 0
    for (int t = 0; t < 10; ++t) {
        CharSeries tgt = random_series(F, 0, 20, rng);
        CHECK(psi(phi(tgt)).agrees_with(tgt));
    }

    // random roundtrips at varying divisibility
    for (int p : {3, 5}) {
        const FqField& Fp = FqField::get(p, 1);
        for (int t = 0; t < 100; ++t) {
            int s = static_cast<int>(rng() % p);
            CharSeries tgt = random_series(Fp, 0, 18, rng);
            CharSeries w = psi_section(tgt, s, rng);
            CHECK(w.lo() >= s);
            CHECK(psi(w).hi() >= tgt.hi());
            CHECK(psi(w).agrees_with(tgt));
        }
    }

    // impossible demand: psi(u) = 1 with X^p | u forces block 0 to vanish
    CHECK_THROWS_AS(psi_section(CharSeries::one(F), 3, rng), error);
}

TEST_CASE("precision ledger is sound under refinement") {
    // recomputing at higher precision agrees on every claimed coefficient
    std::mt19937_64 rng(77);
    const FqField& F = FqField::get(3, 1);
    for (int t = 0; t < 30; ++t) {
        CharSeries wide = rnd_laurent(F, rng, 90);
        CharSeries narrow = wide.truncated(30);
        long long uu = 1 + static_cast<long long>(rng() % 200);
        if (uu % 3 == 0) ++uu;
        PadicScalar a = PadicScalar::from_int(3, uu);

        CHECK(psi(wide).agrees_with(psi(narrow)));
        CHECK(phi(wide).agrees_with(phi(narrow)));
        CHECK(gamma_subst(wide, a, 90).agrees_with(gamma_subst(narrow, a, 90)));
        CHECK((wide * wide).agrees_with(narrow * narrow));
        CHECK(psi(narrow).hi() == 10);
    }
}

TEST_CASE("series text roundtrip") {
    std::mt19937_64 rng(13);
    for (auto [p, m] : {std::pair{3, 1}, {5, 2}}) {
        const FqField& F = FqField::get(p, m);
        for (int t = 0; t < 20; ++t) {
            CharSeries f = rnd_laurent(F, rng, 12);
            CharSeries g = CharSeries::from_text(f.to_text());
            CHECK(g.lo() == f.lo());
            CHECK(g.hi() == f.hi());
            CHECK(g.agrees_with(f));
        }
    }
    CharSeries exact = CharSeries::from_coeffs(FqField::get(3, 1), -2, {1, 0, 2});
    CHECK(CharSeries::from_text(exact.to_text()).exact());
}

TEST_CASE("pole floor enforced") {
    const FqField& F = FqField::get(3, 1);
    CHECK_THROWS_AS(CharSeries::monomial(F, 1, -5000), error);
}
