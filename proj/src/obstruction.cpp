#include "tatefgl/obstruction.hpp"

#include <algorithm>

namespace tatefgl {

namespace {

Series x_of(const Fgl& F) { return Series::var(F.ring(), F.trunc(), Var::x); }

// Output window inside the working window of the law.
Trunc output_window(const Trunc& w, const Trunc& work) {
    if (w.x_max > work.x_max) throw truncation_error("x-window exceeds the working window");
    if (w.x_max + std::max(w.t_max, 0) > work.weight_cap) {
        throw truncation_error("weight cap " + std::to_string(work.weight_cap) + " too small for x <= " +
                               std::to_string(w.x_max) + ", t <= " + std::to_string(w.t_max));
    }
    Trunc o = w;
    o.y_max = 0;
    o.s_min = 0;
    o.s_max = 0;
    o.weight_cap = work.weight_cap;
    return o;
}

Series finish(const Series& S, const Trunc& o) {
    Series r = S.restrict(o);
    if (r.t_exact() < o.t_max) throw truncation_error("result is not exact through the requested t-degree");
    return r;
}

Series commutator_working(const OrientationData& data) {
    const Fgl& F = data.base_fgl;
    const Series& f = data.coord.series;
    int p = data.prime;
    Series frob = frobenius_coordinate(F, p);
    Series lhs = compose(data.frob.rule.apply(f), frob);
    Series rhs = f;
    Series x = x_of(F);
    for (int k = 1; k < p; ++k) {
        Series kt = k_series(F, k);
        Series num = compose(f, fgl_add(F, x, kt));
        Series den = compose(f, kt);
        rhs = rhs * divide_by_unit(num, den);
    }
    return lhs - rhs;
}

bool is_p_power_minus_one(int p, int d) {
    long n = d + 1;
    while (n > 1 && n % p == 0) n /= p;
    return n == 1;
}

}  // namespace

OrientationData make_orientation(const std::string& preset, FglKind ring, int p, int x_max, int t_max) {
    if (p < 2) throw specification_error("prime must be at least 2");
    if (x_max < 1) throw specification_error("x-bound must be positive");
    int cap = x_max + std::max(t_max, 0);
    Trunc w = fgl_window(cap);
    OrientationData d;
    d.prime = p;
    d.label = preset;
    RingPtr R;
    switch (ring) {
        case FglKind::todd:
            R = RingSpec::todd();
            d.base_fgl = fgl_make(FglKind::todd, R, w);
            d.frob = todd_frobenius_action(R, p, w);
            break;
        case FglKind::additive:
            R = RingSpec::additive();
            d.base_fgl = fgl_make(FglKind::additive, R, w);
            d.frob.p = p;
            d.frob.rule = CoefficientRule(R, R);
            break;
        case FglKind::universal:
            R = RingSpec::universal(cap);
            d.base_fgl = fgl_make(FglKind::universal, R, w);
            if (preset == "identity") {
                d.frob.p = p;
                d.frob.rule = CoefficientRule(R, R);
            } else {
                d.frob = frobenius_on_coefficients(d.base_fgl, p, cap);
            }
            break;
        default:
            throw specification_error("orientations are built over the todd, additive or universal law");
    }
    if (preset == "identity") {
        d.coord = Coord::identity(R, w);
    } else if (preset == "todd-p-typical" || preset == "p-typical") {
        d.coord = quillen_idempotent_coord(d.base_fgl, p);
    } else {
        throw specification_error("unknown orientation preset '" + preset + "'");
    }
    return d;
}

Series frobenius_commutator(const OrientationData& data, const Trunc& w) {
    Trunc o = output_window(w, data.base_fgl.trunc());
    return finish(commutator_working(data), o);
}

Series obstruction_series(const OrientationData& data, const Trunc& w) {
    Trunc o = output_window(w, data.base_fgl.trunc());
    Series chi = euler_chi(data.base_fgl, data.prime);
    return finish(chi * commutator_working(data), o);
}

int en_vanishing_bound(int p, std::optional<int> n, int t_max) {
    if (!n) return t_max;
    if (*n < 1) throw specification_error("n must be at least 1");
    return (*n - 1) * (p - 1) / 2;
}

VerdictSlice reduce_slice(const Series& coeff, int x_degree, const Series& pseries, int p, int bound) {
    VerdictSlice s;
    s.x_degree = x_degree;
    s.laurent_coefficient = coeff;
    Trunc w = coeff.trunc();
    w.t_max = std::min(w.t_max, bound);
    Series c = coeff.restrict(w);
    DivisionRemainder r = long_divide_by_p_series(c, pseries, p, bound);
    // A t^d term that only a non-integral multiple of [p](t) clears cannot be
    // removed from an integral lift: it stays in the remainder.
    for (const auto& [d, m] : r.multiples) {
        bool integral = true;
        for (const auto& [e, q] : m.terms())
            if (!q.is_p_integral(static_cast<unsigned long>(p))) integral = false;
        if (integral) continue;
        s.blocked_degree = d;
        DivisionRemainder partial = long_divide_by_p_series(c, pseries, p, d);
        Trunc wd = w;
        wd.t_max = d;
        r.remainder = partial.remainder.restrict(wd).band(Var::t, d, d);
        break;
    }
    s.remainder = r.remainder.restrict(w);
    try {
        s.remainder_mod_p = s.remainder.mod_p(static_cast<unsigned long>(p));
    } catch (const integrality_error& e) {
        throw integrality_error("x^" + std::to_string(x_degree) + ": " + e.what());
    }
    return s;
}

ObstructionVerdict en_verdict(const OrientationData& data, std::optional<int> n, const Trunc& w) {
    ObstructionVerdict v;
    v.p = data.prime;
    v.n = n;
    v.tbd = en_vanishing_bound(data.prime, n, w.t_max);
    if (w.t_max < v.tbd) {
        throw precondition_error("t-window stops at " + std::to_string(w.t_max) + " below the bound " +
                                 std::to_string(v.tbd));
    }
    Series obs = obstruction_series(data, w);
    Series pser = k_series(data.base_fgl, data.prime);
    for (auto& [a, c] : obs.slices(Var::x)) {
        v.slices.push_back(reduce_slice(c, a, pser, data.prime, v.tbd));
        if (!v.first_failure && !v.slices.back().remainder_mod_p.is_zero()) v.first_failure = a;
    }
    v.excluded = v.first_failure.has_value();
    return v;
}

JnResult jn_obstruction(int p, int d, int bound, int extra_weight) {
    if (d < 1) throw specification_error("d must be positive");
    if (is_p_power_minus_one(p, d)) {
        throw precondition_error("d = " + std::to_string(d) + " is of the form p^j - 1");
    }
    if (bound < 0) throw specification_error("bound must be nonnegative");
    JnResult r;
    r.p = p;
    r.d = d;
    r.bound = bound;
    // The t^c coefficient of JN_d has weight d*p + c.
    if (extra_weight < 0) throw specification_error("extra weight must be nonnegative");
    r.weight_cap = d * p + bound + extra_weight;
    int cap = r.weight_cap;
    RingPtr U = RingSpec::universal(cap);
    Fgl F = fgl_make(FglKind::universal, U, fgl_window(cap));
    FrobAction a = frobenius_on_coefficients(F, p, d);
    r.fr_m = a.fr_m.at(d);
    Series chi = euler_chi(F, p);
    Series pser = k_series(F, p);

    int depth = typical_depth(p, cap);
    RingPtr bp = RingSpec::bp(p, std::max(depth, 1));
    const Trunc& w = F.trunc();
    CoefficientRule direct = typical_rule(U, bp, p, w);
    CoefficientRule quillen = quillen_rule(U, p, w);
    auto via_direct = [&](const Series& S) { return direct.apply(S); };
    auto via_quillen = [&](const Series& S) { return hazewinkel_rewrite(quillen.apply(S), p, depth, bp); };

    auto jn_of = [&](auto phi) { return -(pow(inverse_unit(phi(chi)), d) * phi(r.fr_m)); };
    Series jn_direct = jn_of(via_direct);
    Series jn_quillen = jn_of(via_quillen);

    Trunc o = jn_direct.trunc();
    o.t_max = bound;
    o.x_max = 0;
    o.y_max = 0;
    r.jn = finish(jn_direct, o);
    r.routes_agree = r.jn == finish(jn_quillen, o);
    r.pseries = via_direct(pser);
    VerdictSlice red = reduce_slice(r.jn, 0, r.pseries, p, bound);
    r.remainder = red.remainder;
    r.remainder_mod_p = red.remainder_mod_p;
    return r;
}

RigidityReport cyclotomic_rigidity_constraints(int p, int order) {
    if (p != 2) throw precondition_error("the rigidity computation is carried out at p = 2");
    if (order < 1) throw specification_error("order must be positive");
    RigidityReport rep;
    rep.p = p;
    rep.order = order;
    // The t^n coefficient of the x^2 constraint has weight n + 1.
    int cap = order + 1;
    RingPtr R = RingSpec::rigidity(p, cap);
    Trunc w = fgl_window(cap);
    Fgl F = fgl_make(FglKind::universal, R, w);
    Series x = x_of(F);
    Series t = Series::var(R, w, Var::t);

    SharpSpec sp;
    sp.weights = {1};
    Series g = sharp_coordinate(F, sp);
    rep.g1 = g.slice(Var::x, 2);
    rep.c_xy = F.law.coeff(Exps{1, 1, 0, 0});
    rep.g1_unit = rep.g1.order(Var::t) == -1 && rep.g1.coeff(Exps{0, 0, -1, 0}) == Poly(R, Rat(1)) &&
                  rep.g1.coeff(Exps{}) == rep.c_xy;

    // psi(c_xy) = xy coefficient of g_* F; only x, y <= 1 are needed.
    {
        Trunc small = w;
        small.x_max = 1;
        small.y_max = 1;
        Trunc gw = w;
        gw.x_max = 2;
        gw.y_max = 2;
        Fgl Fs{F.law.restrict(small), F.kind, F.label};
        Fgl pushed = fgl_pushforward(Fs, Coord{g.restrict(gw), R, R});
        rep.psi_c_xy = pushed.law.slice(Var::x, 1).slice(Var::y, 1);
        Series expect = Series::constant(rep.g1.trunc(), rep.c_xy) + rep.g1.scaled(Rat(2));
        Trunc cmp = rep.psi_c_xy.trunc();
        cmp.t_max = order - 1;
        rep.psi_c_xy_formula = agree_within(rep.psi_c_xy, expect, cmp);
    }

    {
        OrientationData id;
        id.base_fgl = F;
        id.coord = Coord::identity(R, w);
        id.frob.p = p;
        id.frob.rule = CoefficientRule(R, R);
        id.prime = p;
        Trunc o = w;
        o.x_max = order + 1;
        o.t_min = -Trunc::kWide;
        o.t_max = 0;
        rep.identity_commutes = frobenius_commutator(id, o).is_zero();
    }

    Trunc tw = w;
    tw.x_max = 0;
    tw.y_max = 0;
    tw.t_max = order;
    auto fj = [&](int j) { return Poly::gen(R, GenId::f(j)); };

    bool all_match = true;
    for (int d = -2; d <= 2; ++d) {
        RigidityCase c;
        c.d = d;
        Poly f1 = rep.c_xy.scaled(Rat(d));
        Series f = x + Series::term(w, Exps{2, 0, 0, 0}, f1);
        for (int j = 2; j <= cap; ++j) f += Series::term(w, Exps{j + 1, 0, 0, 0}, fj(j));

        Series lhs = rep.g1 + rep.psi_c_xy.scaled(Rat(d));
        Series kt = k_series(F, 1);
        Series rhs_full = f * divide_by_unit(compose(f, fgl_add(F, x, kt)), compose(f, kt));
        c.x2_coefficient = (lhs - rhs_full.slice(Var::x, 2)).restrict(tw);

        // R(t) = sum (j+1) f_j t^j / sum f_j t^j with f_0 = 1, f_1 = d * c_xy.
        Series num = Series::constant(R, tw, Rat(1)) + Series::term(tw, Exps{0, 0, 1, 0}, f1.scaled(Rat(2)));
        Series den = Series::constant(R, tw, Rat(1)) + Series::term(tw, Exps{0, 0, 1, 0}, f1);
        for (int j = 2; j <= order; ++j) {
            num += Series::term(tw, Exps{0, 0, j, 0}, fj(j).scaled(Rat(j + 1)));
            den += Series::term(tw, Exps{0, 0, j, 0}, fj(j));
        }
        Series ratio = divide_by_unit(num, den);
        Series inner = Series::constant(R, tw, Rat(2 * d + 1)) - ratio;
        Trunc ew = tw;
        ew.t_max = order - 1;
        c.expected = (rep.g1 * inner).restrict(ew);
        c.matches = c.x2_coefficient.restrict(ew) == c.expected;
        c.cleared = divide_by_unit(c.x2_coefficient, rep.g1).restrict(tw);
        c.t0 = c.cleared.coeff(Exps{});
        all_match = all_match && c.matches;
        rep.cases.push_back(std::move(c));
    }

    rep.t0_forces_d_zero = true;
    for (const RigidityCase& c : rep.cases) {
        bool zero = c.t0.is_zero();
        if (zero != (c.d == 0) || !(c.t0 == Poly(R, Rat(2 * c.d)))) rep.t0_forces_d_zero = false;
    }

    // First nonzero coefficient f_n: the t^n coefficient of the cleared
    // constraint is -n f_n. n = 1 is read from the case f_1 = c_xy.
    const RigidityCase* c0 = nullptr;
    const RigidityCase* c1 = nullptr;
    for (const RigidityCase& c : rep.cases) {
        if (c.d == 0) c0 = &c;
        if (c.d == 1) c1 = &c;
    }
    bool induction_ok = true;
    for (int n = 1; n <= order; ++n) {
        RigidityInduction step;
        step.n = n;
        if (n == 1) {
            step.tn = c1->cleared.coeff(Exps{0, 0, 1, 0});
            step.equals_minus_n_fn = step.tn == rep.c_xy.scaled(Rat(-1));
        } else {
            Series killed = c0->cleared.map_coeffs([&](const Poly& q) {
                std::vector<Poly::Term> keep;
                for (const auto& [m, r] : q.terms()) {
                    bool drop = false;
                    for (const auto& [gen, e] : m.factors())
                        if (gen.kind == GenKind::f && gen.index < n) drop = true;
                    if (!drop) keep.emplace_back(m, r);
                }
                return Poly::from_terms(R, std::move(keep));
            });
            step.tn = killed.coeff(Exps{0, 0, n, 0});
            step.equals_minus_n_fn = step.tn == fj(n).scaled(Rat(-n));
        }
        induction_ok = induction_ok && step.equals_minus_n_fn;
        rep.induction.push_back(std::move(step));
    }

    rep.all_passed = rep.g1_unit && rep.psi_c_xy_formula && rep.identity_commutes && all_match &&
                     rep.t0_forces_d_zero && induction_ok;
    return rep;
}

}  // namespace tatefgl
