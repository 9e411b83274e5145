#include "doctest.h"

#include "properties.hpp"
#include "tatefgl/obstruction.hpp"

using namespace tatefgl;

namespace {

Poly beta_pow(int k, const Rat& c) {
    auto T = RingSpec::todd();
    return Poly(T, Monomial::gen(*T, GenId::beta(), k), c);
}

// The x^9 coefficient of the 3-typical Todd obstruction series, t-degrees -3..4.
Series qi_x9(const Trunc& w) {
    Series s(RingSpec::todd(), w);
    const char* c[] = {"-1215/8", "15957/32", "1041093/64", "-15676713/448",
                       "8826507/2240", "304379169/17920", "-334416123/35840", "-37570767/6400"};
    for (int i = 0; i < 8; ++i) s.add_term(Exps{0, 0, i - 3, 0}, beta_pow(i + 3, Rat::parse(c[i])));
    return s;
}

const OrientationData& qi_data() {
    static const OrientationData d = make_orientation("todd-p-typical", FglKind::todd, 3, 9, 4);
    return d;
}

}  // namespace

TEST_SUITE("obstruction") {

TEST_CASE("vanishing bound") {
    CHECK(en_vanishing_bound(3, 5, 0) == 4);
    CHECK(en_vanishing_bound(2, 5, 0) == 2);
    CHECK(en_vanishing_bound(2, 1, 0) == 0);
    CHECK(en_vanishing_bound(5, 3, 0) == 4);
    CHECK(en_vanishing_bound(3, std::nullopt, 17) == 17);
}

TEST_CASE("x^9 coefficient of the 3-typical Todd obstruction series") {
    const auto& d = qi_data();
    Trunc w = props::report_window(d, 9, 4);
    Series obs = obstruction_series(d, w);
    Series x9 = obs.slice(Var::x, 9);
    CHECK(x9 == qi_x9(x9.trunc()));
    CHECK(obs.slice(Var::x, 0).is_zero());
    CHECK(obs.slice(Var::x, 1).is_zero());
}

TEST_CASE("obstruction series is the Euler class times the commutator") {
    const auto& d = qi_data();
    Trunc w = props::report_window(d, 9, 4);
    Series chi = euler_chi(d.base_fgl, 3);
    CHECK(agree_within(obstruction_series(d, w), chi * frobenius_commutator(d, w), w));
}

TEST_CASE("verdict for the 3-typical Todd orientation") {
    const auto& d = qi_data();
    Trunc w = props::report_window(d, 9, 4);
    ObstructionVerdict v = en_verdict(d, 5, w);
    CHECK(v.tbd == 4);
    REQUIRE(v.first_failure.has_value());
    CHECK(*v.first_failure == 9);
    CHECK(v.excluded);
    const VerdictSlice* s9 = nullptr;
    for (const auto& s : v.slices)
        if (s.x_degree == 9) s9 = &s;
    REQUIRE(s9 != nullptr);
    for (const auto& s : v.slices)
        if (s.x_degree < 9) CHECK(s.remainder_mod_p.is_zero());
    Series want(RingSpec::todd(), s9->remainder_mod_p.trunc());
    want.add_term(Exps{0, 0, 4, 0}, beta_pow(10, Rat(1)));
    CHECK(s9->remainder_mod_p == want);
    CHECK(s9->remainder.coeff(Exps{0, 0, 4, 0}) == beta_pow(10, Rat::parse("-1158538511/179200")));
}

TEST_CASE("reduce_slice stops at the first non-integral multiple") {
    auto T = RingSpec::todd();
    Fgl F = fgl_make(FglKind::todd, T, fgl_window(8));
    Series ps = k_series(F, 3);
    Trunc w = ps.trunc();
    w.t_min = -8;
    w.t_max = 6;
    // 3 t^{-1} clears to -3β + ... ; the next multiple needs 1/3.
    Series c = Series::term(T, w, Exps{0, 0, -1, 0}, Rat(3)) + Series::term(T, w, Exps{0, 0, 1, 0}, Rat(1));
    VerdictSlice s = reduce_slice(c, 4, ps.restrict(w), 3, 4);
    REQUIRE(s.blocked_degree.has_value());
    CHECK(*s.blocked_degree == 1);
    CHECK(!s.remainder_mod_p.is_zero());
    // Already in the allowed range: nothing to clear.
    VerdictSlice z = reduce_slice(Series::term(T, w, Exps{0, 0, 5, 0}, Rat(1)), 1, ps.restrict(w), 3, 4);
    CHECK(!z.blocked_degree);
    CHECK(z.remainder_mod_p.is_zero());
}

TEST_CASE("verdict is monotone in n") {
    auto d = make_orientation("todd-p-typical", FglKind::todd, 3, 9, 6);
    Trunc w = props::report_window(d, 9, 6);
    bool failed = false;
    for (int n = 1; n <= 7; ++n) {
        Trunc wn = w;
        wn.t_max = std::min(6, en_vanishing_bound(3, n, 0));
        ObstructionVerdict v = en_verdict(d, n, wn);
        INFO("n = " << n);
        if (failed) CHECK(v.first_failure.has_value());
        failed = failed || v.first_failure.has_value();
        CHECK(v.first_failure.has_value() == (n >= 5));
    }
}

TEST_CASE("identity orientation has no obstruction") {
    for (int p : {2, 3}) {
        for (FglKind kind : {FglKind::todd, FglKind::universal}) {
            for (auto [xm, tm] : {std::pair{4, 2}, std::pair{7, 3}}) {
                auto d = make_orientation("identity", kind, p, xm, tm);
                Trunc w = props::report_window(d, xm, tm);
                CHECK(frobenius_commutator(d, w).is_zero());
                CHECK(obstruction_series(d, w).is_zero());
                ObstructionVerdict v = en_verdict(d, std::nullopt, w);
                CHECK(!v.first_failure);
            }
        }
    }
}

TEST_CASE("JN obstruction at p=2") {
    auto B = RingSpec::bp(2, 2);
    Poly v1 = Poly::gen(B, GenId::v(1));
    Poly v2 = Poly::gen(B, GenId::v(2));
    JnResult j2 = jn_obstruction(2, 2, 2);
    CHECK(j2.routes_agree);
    REQUIRE(j2.remainder_mod_p.size() == 1);
    Poly c2 = j2.remainder_mod_p.coeff(Exps{0, 0, 2, 0});
    CHECK(c2.str() == (v1.pow(6, kNoCap) + v2 * v2).str());

    JnResult j4 = jn_obstruction(2, 4, 2);
    CHECK(j4.routes_agree);
    REQUIRE(j4.remainder_mod_p.size() == 1);
    CHECK(j4.remainder_mod_p.coeff(Exps{0, 0, 2, 0}).str() == (v1.pow(4, kNoCap) * v2 * v2).str());
}

TEST_CASE("JN result is stable under a wider working window") {
    JnResult a = jn_obstruction(2, 2, 2);
    JnResult b = jn_obstruction(2, 2, 2, 3);
    CHECK(a.remainder_mod_p.str() == b.remainder_mod_p.str());
    CHECK(b.weight_cap == a.weight_cap + 3);
}

TEST_CASE("JN preconditions") {
    CHECK_THROWS_AS(jn_obstruction(2, 1, 2), precondition_error);
    CHECK_THROWS_AS(jn_obstruction(2, 3, 2), precondition_error);
    CHECK_THROWS_AS(jn_obstruction(4, 2, 2), error);
}

TEST_CASE("rigidity constraints at p=2") {
    RigidityReport r = cyclotomic_rigidity_constraints(2, 6);
    CHECK(r.g1_unit);
    CHECK(r.psi_c_xy_formula);
    CHECK(r.identity_commutes);
    CHECK(r.t0_forces_d_zero);
    REQUIRE(r.cases.size() == 5);
    for (const auto& c : r.cases) {
        INFO("d = " << c.d);
        CHECK(c.matches);
        CHECK(c.t0 == Poly(c.t0.ring(), Rat(2 * c.d)));
    }
    REQUIRE(r.induction.size() == 6);
    for (const auto& s : r.induction) CHECK(s.equals_minus_n_fn);
    CHECK(r.all_passed);
}

TEST_CASE("property: homogeneity of every operation") {
    auto r = props::homogeneity();
    INFO(r.detail);
    CHECK(r.ok);
}

TEST_CASE("property: window stability") {
    auto r = props::window_stability();
    INFO(r.detail);
    CHECK(r.ok);
}

}
