#include "doctest.h"

#include "properties.hpp"
#include "tatefgl/frobenius.hpp"

using namespace tatefgl;

namespace {

Poly beta_pow(int k, const Rat& c) {
    auto T = RingSpec::todd();
    return Poly(T, Monomial::gen(*T, GenId::beta(), k), c);
}

// (x t^{p-1} - x^p) / t^{p-1} with coefficients in F_p.
Series fp_closed_form(const Series& like, int p) {
    Series r = Series::var(like.ring(), like.trunc(), Var::x);
    r.add_term(Exps{p, 0, 1 - p, 0}, Poly(like.ring(), Rat(p - 1)));
    return r;
}

}  // namespace

TEST_SUITE("frobenius") {

TEST_CASE("Frobenius coordinate over F_p has the closed form") {
    for (int p : {2, 3, 5}) {
        Fgl F = fgl_make(FglKind::additive, RingSpec::additive(), fgl_window(2 * p));
        Series red = frobenius_coordinate(F, p).mod_p(static_cast<unsigned long>(p));
        CHECK(red == fp_closed_form(red, p));
    }
}

TEST_CASE("additive Frobenius coordinate over Q") {
    // x (x + t)(x + 2t) / (2 t^2) = x + 3/2 x^2 t^-1 + 1/2 x^3 t^-2.
    auto A = RingSpec::additive();
    Fgl F = fgl_make(FglKind::additive, A, fgl_window(6));
    Series f = frobenius_coordinate(F, 3);
    Series want = Series::var(A, F.trunc(), Var::x) + Series::term(A, F.trunc(), Exps{2, 0, -1, 0}, Rat(3, 2)) +
                  Series::term(A, F.trunc(), Exps{3, 0, -2, 0}, Rat(1, 2));
    CHECK(f == want);
}

TEST_CASE("sharp coordinate") {
    auto T = RingSpec::todd();
    Fgl F = fgl_make(FglKind::todd, T, fgl_window(6));
    Series x = Series::var(T, F.trunc(), Var::x);
    CHECK(sharp_coordinate(F, SharpSpec{{}, false}) == x);
    // x (x +_Td t) / t = x + x^2 (t^-1 - β).
    Series want = x + Series::term(T, F.trunc(), Exps{2, 0, -1, 0}, Rat(1)) +
                  Series::term(F.trunc(), Exps{2, 0, 0, 0}, beta_pow(1, Rat(-1)));
    CHECK(sharp_coordinate(F, SharpSpec{{1}, false}) == want);
    Series s = sharp_coordinate(F, SharpSpec{{1, -2, 3}, false});
    CHECK(s.band(Var::x, 0, 1) == x);
    CHECK_THROWS_AS(sharp_coordinate(F, SharpSpec{{0}, false}), division_error);
}

TEST_CASE("Euler class") {
    for (int p : {2, 3, 5}) {
        Fgl A = fgl_make(FglKind::additive, RingSpec::additive(), fgl_window(6));
        Series chi = euler_chi(A, p);
        CHECK(chi.size() == 1);
        Fgl U = fgl_make(FglKind::universal, RingSpec::universal(4), fgl_window(4));
        CHECK(euler_chi(U, p).order(Var::t) == p - 1);
    }
    auto T = RingSpec::todd();
    Fgl F = fgl_make(FglKind::todd, T, fgl_window(6));
    // [1][2] = t (2t - β t^2).
    Series want = Series::term(T, F.trunc(), Exps{0, 0, 2, 0}, Rat(2)) +
                  Series::term(F.trunc(), Exps{0, 0, 3, 0}, beta_pow(1, Rat(-1)));
    CHECK(euler_chi(F, 3) == want);
}

TEST_CASE("todd coefficient action") {
    auto T = RingSpec::todd();
    FrobAction a = todd_frobenius_action(T, 3, fgl_window(4));
    Series img = a.rule.image(GenId::beta());
    CHECK(img == Series::constant(img.trunc(), beta_pow(1, Rat(3))));
}

TEST_CASE("Fr(m_1) specializes to the todd computation") {
    const int cap = 5;
    FrobAction u = frobenius_on_coefficients(2, 1, cap);
    Series fr1 = u.fr_m.at(1);

    // Todd route, independent of the universal ring: 2 [x^2] log_Td(f_Fr^{-1}(x)).
    auto T = RingSpec::todd();
    Fgl Td = fgl_make(FglKind::todd, T, fgl_window(cap));
    Series frob = frobenius_coordinate(Td, 2);
    Series direct = compose(fgl_log(Td), reversion(frob)).slice(Var::x, 2).scaled(Rat(2));

    // b_i -> (-β)^i / (i+1)! turns the universal exponential into the todd one.
    auto U = fr1.ring();
    CoefficientRule spec(U, T);
    Trunc w = fgl_window(cap);
    mpq_class fact = 1;
    for (int i = 1; i <= U->max_index(); ++i) {
        fact *= (i + 1);
        Rat c(mpq_class(((i % 2) ? -1 : 1) / fact));
        spec.set(GenId::b(i), beta_pow(i, c), w);
        Poly mi = bordism_m(fgl_log(Td), i);
        spec.set(GenId::m(i), mi, w);
    }
    Series via_u = spec.apply(fr1);
    Trunc cmp = w;
    cmp.x_max = 0;
    cmp.y_max = 0;
    cmp.t_min = -Trunc::kWide;
    cmp.t_max = cap - 2;
    CHECK(agree_within(via_u, direct, cmp));
    CHECK(fr1.coeff(Exps{0, 0, -1, 0}).constant_term() == Rat(-2));
}

TEST_CASE("reduced Fr(m_1) on the todd ring is 2β mod [2]") {
    auto T = RingSpec::todd();
    const int cap = 6;
    Fgl Td = fgl_make(FglKind::todd, T, fgl_window(cap));
    Series frob = frobenius_coordinate(Td, 2);
    Series fr1 = compose(fgl_log(Td), reversion(frob)).slice(Var::x, 2).scaled(Rat(2));
    Series two_beta = Series::constant(fr1.trunc(), beta_pow(1, Rat(2)));
    CHECK(congruent_mod_p_series(fr1, two_beta, k_series(Td, 2), 2, cap - 2));
    CHECK_FALSE(congruent_mod_p_series(fr1, Series::constant(fr1.trunc(), beta_pow(1, Rat(1))), k_series(Td, 2), 2, cap - 2));
}

TEST_CASE("F_p^x invariance of the Frobenius coordinate") {
    for (int p : {2, 3, 5}) {
        int xm = p == 5 ? 5 : 6;
        int tm = 3;
        Fgl Td = fgl_make(FglKind::todd, RingSpec::todd(), fgl_window(xm + tm));
        Fgl U = fgl_make(FglKind::universal, RingSpec::universal(xm + tm), fgl_window(xm + tm));
        for (int j = 1; j < p; ++j) {
            CHECK(fpx_invariance_check(Td, p, j, true, xm, tm));
            CHECK(fpx_invariance_check(U, p, j, true, xm, tm));
        }
    }
    Fgl Td = fgl_make(FglKind::todd, RingSpec::todd(), fgl_window(9));
    CHECK(fpx_invariance_check(Td, 3, 1, false, 6, 3));
    CHECK_FALSE(fpx_invariance_check(Td, 3, 2, false, 6, 3));
    CHECK_THROWS_AS(fpx_invariance_check(Td, 3, 3, true, 6, 3), precondition_error);
}

TEST_CASE("total operation") {
    auto A = RingSpec::additive();
    Fgl F = fgl_make(FglKind::additive, A, fgl_window(8));
    Series total = steenrod_total(F, 2);
    Series x = Series::var(A, F.trunc(), Var::x);
    CHECK(steenrod_component(total, 0) == x);
    CHECK(steenrod_component(total, -1) == x * x);
    CHECK(steenrod_component(total, 1).is_zero());
}

TEST_CASE("total operation is multiplicative") {
    for (FglKind kind : {FglKind::todd, FglKind::universal}) {
        RingPtr R = kind == FglKind::todd ? RingSpec::todd() : RingSpec::universal(5);
        Fgl F = fgl_make(kind, R, fgl_window(5, true));
        CoefficientRule rule = total_operation_rule(F, Var::t);
        Series x = Series::var(R, F.trunc(), Var::x);
        Series total = total_operation(F, rule, x, Var::t);
        CHECK(total == steenrod_total(F, 2));
        Series one = Series::constant(R, F.trunc(), Rat(1));
        CHECK(total_operation(F, rule, one, Var::t) == one);
        for (int k = 2; k <= 3; ++k) {
            Series a = total_operation(F, rule, pow(x, k), Var::t);
            CHECK(agree_within(a, pow(total, k), F.trunc()));
        }
    }
}

TEST_CASE("Bullett-MacDonald experiment on the additive law") {
    auto A = RingSpec::additive();
    Fgl F = fgl_make(FglKind::additive, A, fgl_window(6, true));
    BmReport r = bullett_macdonald_experiment(F, 2, 1, 4);
    REQUIRE(r.entries.size() == 2);
    for (const auto& o : r.entries[0].orderings) CHECK(o.equal);
    const auto& k1 = r.entries[1].orderings;
    REQUIRE(!k1.empty());
    // Hand expansion: the two sides differ by 2 (t - s) x^3, which vanishes mod 2.
    Series d(A, k1[0].difference.trunc());
    d.add_term(Exps{3, 0, 1, 0}, Poly(A, Rat(2)));
    d.add_term(Exps{3, 0, 0, 1}, Poly(A, Rat(-2)));
    CHECK(k1[0].difference == d);
    REQUIRE(k1[0].equal_mod_p.has_value());
    CHECK(*k1[0].equal_mod_p);
    CHECK_THROWS_AS(bullett_macdonald_experiment(F, 3, 1, 4), precondition_error);
}

}
