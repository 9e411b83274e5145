#include "doctest.h"

#include "oracle.hpp"
#include "properties.hpp"
#include "tatefgl/series.hpp"

using namespace tatefgl;

namespace {

Trunc t_window(int t_min, int t_max) {
    Trunc w;
    w.t_min = t_min;
    w.t_max = t_max;
    return w;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("geometric inverse of 1 - t") {
    auto A = RingSpec::additive();
    Trunc w = t_window(0, 10);
    Series u = Series::constant(A, w, Rat(1)) - Series::var(A, w, Var::t);
    Series inv = inverse_unit(u);
    for (int k = 0; k <= 10; ++k) CHECK(inv.coeff(Exps{0, 0, k, 0}).constant_term() == Rat(1));
    CHECK(inv.size() == 11);
    CHECK((u * inv).restrict(w) == Series::constant(A, w, Rat(1)));
}

TEST_CASE("inverse of a Laurent unit") {
    auto A = RingSpec::additive();
    Trunc w = t_window(-6, 6);
    Series t = Series::var(A, w, Var::t);
    Series u = (t * t).scaled(Rat(3)) + pow(t, 3);  // 3t^2 (1 + t/3)
    Series inv = inverse_unit(u);
    CHECK(inv.order(Var::t) == -2);
    CHECK(inv.coeff(Exps{0, 0, -2, 0}).constant_term() == Rat(1, 3));
    CHECK(inv.coeff(Exps{0, 0, -1, 0}).constant_term() == Rat(-1, 9));
    CHECK(agree_within(u * inv, Series::constant(A, w, Rat(1)), t_window(-6, 3)));
}

TEST_CASE("s-only units invert through the s variable") {
    auto A = RingSpec::additive();
    Trunc w = t_window(0, 0);
    w.s_min = -4;
    w.s_max = 4;
    Series s = Series::var(A, w, Var::s);
    Series inv = inverse_unit(s + s * s);
    CHECK(inv.coeff(Exps{0, 0, 0, -1}).constant_term() == Rat(1));
    CHECK(inv.coeff(Exps{0, 0, 0, 0}).constant_term() == Rat(-1));
}

TEST_CASE("non-units are rejected") {
    auto A = RingSpec::additive();
    Trunc w = Trunc::working(4, kNoCap, false, false);
    Series x = Series::var(A, w, Var::x);
    CHECK_THROWS_AS(inverse_unit(x), division_error);
    CHECK_THROWS_AS(inverse_unit(Series(A, w)), division_error);
}

TEST_CASE("terms below the t window are an error, above are dropped") {
    auto A = RingSpec::additive();
    Trunc w = t_window(-2, 3);
    Series t = Series::var(A, w, Var::t);
    CHECK_THROWS_AS(t.shifted(Var::t, -5), truncation_error);
    Series big = pow(t, 3) * t;
    CHECK(big.is_zero());
    CHECK(big.t_exact() == 3);
}

TEST_CASE("weight cap is an ideal quotient") {
    auto T = RingSpec::todd();
    Trunc w = Trunc::working(6, 3, false, false);
    Series b = Series::constant(w, Poly::gen(T, GenId::beta()));
    Series b4 = pow(b, 4);
    CHECK(b4.is_zero());
    CHECK(pow(b, 3).coeff(Exps{}) == Poly(T, Monomial::gen(*T, GenId::beta(), 3), Rat(1)));
}

TEST_CASE("composition matches the dense oracle") {
    const int n = 10;
    std::mt19937 rng(7);
    auto T = RingSpec::todd();
    Trunc w = Trunc::working(n, n - 1, false, false);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<Rat> fc(n + 1, Rat(0)), gc(n + 1, Rat(0));
        fc[1] = 1;
        gc[1] = 1;
        for (int k = 2; k <= n; ++k) {
            fc[k] = props::random_rat(rng);
            gc[k] = props::random_rat(rng);
        }
        oracle::Dense fd, gd;
        for (const Rat& r : fc) fd.push_back(r.value());
        for (const Rat& r : gc) gd.push_back(r.value());
        Series fg = compose(props::beta_power_series(T, w, fc), props::beta_power_series(T, w, gc));
        CHECK(oracle::from_todd(fg, Var::x, n) == oracle::compose(fd, gd, n));
    }
}

TEST_CASE("reversion of the todd logarithm is the closed-form exponential") {
    const int n = 12;
    auto T = RingSpec::todd();
    Trunc w = Trunc::working(n, n - 1, false, false);
    oracle::Dense l = oracle::todd_log(n);
    std::vector<Rat> lc;
    for (const auto& q : l) lc.push_back(Rat(q));
    Series e = reversion(props::beta_power_series(T, w, lc));
    oracle::Dense got = oracle::from_todd(e, Var::x, n);
    CHECK(got == oracle::reverse(l, n));
    // exp_Td(x) = (1 - e^{-βx}) / β.
    mpq_class fact = 1;
    for (int k = 1; k <= n; ++k) {
        fact *= k;
        mpq_class want = (k % 2 == 1 ? 1 : -1) / fact;
        CHECK(got[k] == want);
    }
}

TEST_CASE("substituting a series with a constant term is rejected") {
    auto A = RingSpec::additive();
    Trunc w = Trunc::working(4, kNoCap, false, false);
    Series x = Series::var(A, w, Var::x);
    CHECK_THROWS_AS(compose(x * x, x + Series::constant(A, w, Rat(1))), composition_error);
    CHECK_THROWS_AS(reversion(x * x), reversion_error);
}

TEST_CASE("long division by the p-series") {
    auto T = RingSpec::todd();
    Fgl F = fgl_make(FglKind::todd, T, fgl_window(6));
    Series p3 = k_series(F, 3);
    Series t = Series::var(T, p3.trunc(), Var::t);
    // t^{-1} [3](t) clears completely, leaving nothing below t^2.
    DivisionRemainder dr = long_divide_by_p_series(p3.shifted(Var::t, -1).scaled(Rat(2)), p3, 3, 2);
    CHECK(dr.multiples.size() == 1);
    CHECK(dr.multiples[0].first == 0);
    CHECK(dr.remainder.is_zero());
    CHECK(dr.multiples_p_integral(3));
    // A bare t^0 term needs the multiple 1/3.
    DivisionRemainder one = long_divide_by_p_series(Series::constant(T, p3.trunc(), Rat(1)), p3, 3, 1);
    CHECK_FALSE(one.multiples_p_integral(3));
    (void)t;
}

TEST_CASE("property: reversion round-trips to x-degree 12") {
    auto r = props::reversion_roundtrip(12, 20240601u);
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("property: long-division reconstruction on random inputs") {
    auto r = props::long_division_reconstruction(12345u, 30);
    INFO(r.detail);
    CHECK(r.ok);
}

}
