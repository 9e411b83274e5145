#include "tatefgl/frobenius.hpp"

#include <algorithm>

namespace tatefgl {

namespace {

Rat factorial(int n) {
    long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return Rat(r);
}

}  // namespace

SharpSpec SharpSpec::frobenius(int p) {
    SharpSpec s;
    for (int k = 1; k < p; ++k) s.weights.push_back(k);
    s.mod_p_series = true;
    return s;
}

Series sharp_coordinate(const Fgl& F, const SharpSpec& spec) {
    const RingPtr& R = F.ring();
    Series x = Series::var(R, F.trunc(), Var::x);
    Series out = x;
    for (int a : spec.weights) {
        if (a == 0) throw division_error("sharp coordinate weight 0 gives the Euler class 0");
        Series ka = k_series(F, a);
        Substitution s;
        s.y = ka;
        Series num = substitute(F.law, s);
        out = out * divide_by_unit(num, ka);
    }
    return out;
}

Series frobenius_coordinate(const Fgl& F, int p) { return sharp_coordinate(F, SharpSpec::frobenius(p)); }

Series euler_chi(const Fgl& F, int p) {
    Series chi = Series::constant(F.ring(), F.trunc(), Rat(1));
    for (int k = 1; k < p; ++k) chi = chi * k_series(F, k);
    Poly lead = chi.coeff(Exps{0, 0, p - 1, 0});
    if (chi.order(Var::t) != p - 1 || !(lead.constant_term() == factorial(p - 1))) {
        throw precondition_error("Euler class does not start with (p-1)! t^(p-1)");
    }
    return chi;
}

FrobAction todd_frobenius_action(const RingPtr& todd, int p, const Trunc& w) {
    FrobAction a;
    a.p = p;
    a.rule = CoefficientRule(todd, todd);
    a.rule.set(GenId::beta(), Poly::gen(todd, GenId::beta(), Rat(p)), w);
    return a;
}

FrobAction frobenius_on_coefficients(int p, int d_max, int weight_cap) {
    RingPtr U = RingSpec::universal(std::max(weight_cap, 1));
    return frobenius_on_coefficients(fgl_make(FglKind::universal, U, fgl_window(weight_cap)), p, d_max);
}

FrobAction frobenius_on_coefficients(const Fgl& F, int p, int d_max) {
    if (d_max < 0) throw specification_error("d_max must be nonnegative");
    const Trunc& w = F.trunc();
    if (F.kind != FglKind::universal) throw specification_error("coefficient Frobenius is computed on the universal law");
    if (w.x_max < d_max + 1) {
        throw truncation_error("window x_max " + std::to_string(w.x_max) + " cannot reach x-degree " +
                               std::to_string(d_max + 1));
    }
    const RingPtr& U = F.ring();

    Trunc wd = w;
    wd.x_max = d_max + 1;
    wd.y_max = 0;
    Series frob = frobenius_coordinate(F, p).restrict(wd);
    Series finv = reversion(frob);
    Series log_u = fgl_log(F).restrict(wd);
    Series exp_u = reversion(log_u);
    Series log_fr = compose(log_u, finv);
    Series exp_fr = compose(frob, exp_u);
    Series pser = k_series(F, p);

    FrobAction a;
    a.p = p;
    a.rule = CoefficientRule(U, U);
    for (int d = 1; d <= std::min(d_max, U->max_index()); ++d) {
        Series m = log_fr.slice(Var::x, d + 1).scaled(Rat(d + 1));
        Series b = exp_fr.slice(Var::x, d + 1);
        a.rule.set(GenId::m(d), m);
        a.rule.set(GenId::b(d), b);
        a.fr_m.emplace(d, m);
        a.reduced.emplace(d, long_divide_by_p_series(m, pser, p, 0).remainder);
    }
    return a;
}

bool congruent_mod_p_series(const Series& a, const Series& b, const Series& pseries, int p, int t_max) {
    Series d = a - b;
    Trunc w = d.trunc();
    w.t_max = std::min(w.t_max, t_max);
    if (d.t_exact() < w.t_max) throw truncation_error("difference is not exact through the requested t-degree");
    d = d.restrict(w);
    if (d.is_zero()) return true;
    DivisionRemainder r = long_divide_by_p_series(d, pseries, p, w.t_max + 1);
    return r.remainder.is_zero() && r.multiples_p_integral(static_cast<unsigned long>(p));
}

bool fpx_invariance_check(const Fgl& F, int p, int j, bool mod_p_series, int x_max, int t_max) {
    if (j < 1 || j > p - 1) throw precondition_error("j must lie in 1..p-1");
    const Trunc& w = F.trunc();
    if (x_max > w.x_max || x_max + t_max > w.weight_cap) {
        throw truncation_error("window exceeds the exact range of the law");
    }
    Series fr = frobenius_coordinate(F, p);
    Substitution s;
    s.t = k_series(F, j);
    Series frj = substitute(fr, s);
    Trunc out = w;
    out.x_max = x_max;
    out.y_max = 0;
    Series a = frj.restrict(out);
    Series b = fr.restrict(out);
    if (!mod_p_series) {
        Trunc cmp = out;
        cmp.t_max = t_max;
        cmp.t_min = -Trunc::kWide;
        return agree_within(a, b, cmp);
    }
    return congruent_mod_p_series(a, b, k_series(F, p), p, t_max);
}

Series steenrod_total(const Fgl& F, int p) {
    SharpSpec s = SharpSpec::frobenius(p);
    s.mod_p_series = false;
    return sharp_coordinate(F, s);
}

Series steenrod_component(const Series& total, int i) { return total.slice(Var::t, i); }

CoefficientRule total_operation_rule(const Fgl& F, Var v) {
    const RingPtr& R = F.ring();
    CoefficientRule rule(R, R);
    if (R->generators().empty()) return rule;
    // g_v(x) = x (x +_F v) / v.
    Series x = Series::var(R, F.trunc(), Var::x);
    Series vv = Series::var(R, F.trunc(), v);
    Substitution s;
    s.y = vv;
    Series g = x * divide_by_unit(substitute(F.law, s), vv);
    Series ex = fgl_exp(F);
    Series gex = compose(g, ex);
    if (F.kind == FglKind::todd) {
        rule.set(GenId::beta(), gex.slice(Var::x, 2).scaled(Rat(-2)));
        return rule;
    }
    if (F.kind == FglKind::universal) {
        for (GenId gen : R->generators()) {
            if (gen.kind == GenKind::b) rule.set(gen, gex.slice(Var::x, gen.index + 1));
        }
        return rule;
    }
    throw specification_error("coefficient action defined for universal and todd laws only");
}

Series total_operation(const Fgl& F, const CoefficientRule& rule, const Series& alpha, Var v) {
    Series x = Series::var(F.ring(), F.trunc(), Var::x);
    Series vv = Series::var(F.ring(), F.trunc(), v);
    Substitution s;
    s.y = vv;
    Series g = x * divide_by_unit(substitute(F.law, s), vv);
    Series pushed = rule.images().empty() ? alpha : rule.apply(alpha);
    return compose(pushed, g);
}

namespace {

Series restrict_x(const Series& a, int x_max) {
    Trunc w = a.trunc();
    w.x_max = std::min(w.x_max, x_max);
    w.y_max = 0;
    return a.restrict(w);
}

}  // namespace

BmReport bullett_macdonald_experiment(const Fgl& F, int p, int k_max, int x_max) {
    if (p != 2) throw precondition_error("the experiment is set up for p = 2");
    if (k_max < 0) throw specification_error("k_max must be nonnegative");
    if (x_max < std::max(k_max, 1)) throw truncation_error("x-window too small to compare any coefficient");
    Trunc w = F.trunc();
    if (w.s_max <= 0) throw specification_error("the law needs an s-window for this experiment");
    const RingPtr& R = F.ring();

    BmReport rep;
    rep.p = p;
    rep.fgl = F.label;
    rep.x_max = x_max;
    rep.weight_cap = w.weight_cap;
    rep.interpretation =
        "outer operation acts on coefficients by pushforward along g_v(x) = x(x +_F v)/v, "
        "b_i -> [x^(i+1)] g_v(exp x) (todd: β -> -2 [x^2] g_v(exp x)), with no reduction modulo [2](v); "
        "Sq^j(a) is the coefficient of v^-j; both sides are multiplied by E^J with E = s*t*(s +_F t) and "
        "J the largest index paired with Y; ordering A pairs the inner operation with Y, "
        "ordering B pairs the outer operation with Y";

    CoefficientRule rt = total_operation_rule(F, Var::t);
    CoefficientRule rs = total_operation_rule(F, Var::s);
    Series st_sum = fgl_add(F, Series::var(R, w, Var::s), Series::var(R, w, Var::t));
    Series t = Series::var(R, w, Var::t);
    Series s = Series::var(R, w, Var::s);

    // M_A(j) = t^(j+J) s^(J-j) (s+t)^(J-j),  M_B(j) = s^(j+J) t^(J-j) (s+t)^(J-j).
    auto mult = [&](int j, int J, bool swap_roles) {
        Series m = pow(st_sum, J - j);
        Series a = swap_roles ? s : t;
        Series b = swap_roles ? t : s;
        return m * pow(a, j + J) * pow(b, J - j);
    };

    for (int k = 0; k <= k_max; ++k) {
        BmEntry entry;
        entry.k = k;
        Series alpha = restrict_x(pow(Series::var(R, w, Var::x), k), x_max);

        // Inner classes C_j = Sq^j(x^k): coefficient of s^-j of the total operation.
        Series inner = restrict_x(total_operation(F, rs, alpha, Var::s), x_max);
        std::map<int, Series> cls;
        for (auto& [e, c] : inner.slices(Var::s)) cls.emplace(-e, c);
        int J = 0;
        for (const auto& [j, c] : cls) J = std::max(J, j);

        // Ordering A: O_j(t) = outer operation on C_j with variable t.
        Series lhs_a(R, w), rhs_a(R, w);
        for (const auto& [j, c] : cls) {
            Series o = restrict_x(total_operation(F, rt, c, Var::t), x_max);
            lhs_a += o * mult(j, J, false);
            rhs_a += o.swapped(Var::t, Var::s) * mult(j, J, true);
        }

        // Ordering B: W = outer (variable s) applied to the inner operation in t.
        Series inner_t = restrict_x(total_operation(F, rt, alpha, Var::t), x_max);
        Series wser = restrict_x(total_operation(F, rs, inner_t, Var::s), x_max);
        std::map<int, Series> outer;
        for (auto& [e, c] : wser.slices(Var::s)) outer.emplace(-e, c);
        int JB = 0;
        for (const auto& [i, c] : outer) JB = std::max(JB, i);
        Series lhs_b(R, w), rhs_b(R, w);
        for (const auto& [i, c] : outer) {
            lhs_b += c * mult(i, JB, false);
            rhs_b += c.swapped(Var::t, Var::s) * mult(i, JB, true);
        }

        entry.clearing_exponent = J;
        for (int o = 0; o < 2; ++o) {
            BmOrdering ord;
            ord.name = o == 0 ? "A" : "B";
            ord.lhs = restrict_x(o == 0 ? lhs_a : lhs_b, x_max);
            ord.rhs = restrict_x(o == 0 ? rhs_a : rhs_b, x_max);
            ord.difference = ord.lhs - ord.rhs;
            ord.equal = ord.difference.is_zero();
            try {
                ord.difference_mod_p = ord.difference.mod_p(static_cast<unsigned long>(p));
                ord.equal_mod_p = ord.difference_mod_p->is_zero();
            } catch (const integrality_error&) {
                ord.difference_mod_p.reset();
                ord.equal_mod_p.reset();
            }
            entry.orderings.push_back(std::move(ord));
        }
        rep.entries.push_back(std::move(entry));
    }
    return rep;
}

}  // namespace tatefgl
