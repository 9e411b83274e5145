#include "tatefgl/fgl.hpp"

#include <algorithm>

namespace tatefgl {

namespace {

Series x_var(const RingPtr& r, const Trunc& w) { return Series::var(r, w, Var::x); }

long ipow(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Multiply S by the monomial x^a y^b t^c s^d, keeping S's window.
Series shift_all(const Series& S, const Exps& e) {
    if (e == Exps{}) return S;
    Series r(S.ring(), S.trunc());
    for (const auto& [k, c] : S.terms()) r.add_term(k + e, c);
    auto sh = [](int ex, int k) { return ex >= kExact ? kExact : ex + k; };
    r.cap_exactness(sh(S.t_exact(), e.t), sh(S.s_exact(), e.s));
    return r;
}

}  // namespace

Coord Coord::identity(RingPtr ring, const Trunc& w) { return Coord{x_var(ring, w), ring, ring}; }

FglKind parse_fgl_kind(const std::string& s) {
    if (s == "universal") return FglKind::universal;
    if (s == "todd") return FglKind::todd;
    if (s == "additive") return FglKind::additive;
    throw specification_error("unknown formal group law: " + s);
}

std::string fgl_kind_name(FglKind k) {
    switch (k) {
        case FglKind::universal: return "universal";
        case FglKind::todd: return "todd";
        case FglKind::additive: return "additive";
        case FglKind::pushforward: return "pushforward";
    }
    return "?";
}

Trunc fgl_window(int weight_cap, bool use_s) { return Trunc::working(weight_cap + 1, weight_cap, true, use_s); }

Fgl fgl_make(FglKind kind, RingPtr ring, const Trunc& w) {
    Fgl F;
    F.kind = kind;
    F.label = fgl_kind_name(kind);
    Series x = x_var(ring, w);
    Series y = Series::var(ring, w, Var::y);
    switch (kind) {
        case FglKind::additive:
            F.law = x + y;
            return F;
        case FglKind::todd: {
            if (ring->label() != RingLabel::todd) throw specification_error("todd law needs the todd-ku ring");
            Poly beta = Poly::gen(ring, GenId::beta());
            F.law = x + y - (x * y).scaled(beta);
            return F;
        }
        case FglKind::universal: {
            if (ring->label() != RingLabel::universal && ring->label() != RingLabel::rigidity) {
                throw specification_error("universal law needs a ring with generators b_i");
            }
            // exp must be known to x-degree min(cap + 1, x_max + y_max) for the
            // composition with log x + log y to be exact.
            long need = std::min<long>(static_cast<long>(w.weight_cap) + 1, static_cast<long>(w.x_max) + w.y_max);
            int exp_deg = static_cast<int>(std::max<long>(need, std::max(w.x_max, w.y_max)));
            int top_index = std::min(exp_deg - 1, w.weight_cap);
            if (ring->max_index() < top_index) {
                throw specification_error("universal law in this window needs b_" + std::to_string(top_index) +
                                          " but the ring stops at index " + std::to_string(ring->max_index()));
            }
            Trunc we = w;
            we.x_max = exp_deg;
            we.y_max = exp_deg;
            Series ex = x_var(ring, we);
            for (int i = 1; i <= top_index && i + 1 <= exp_deg; ++i) {
                ex.add_term(Exps{i + 1, 0, 0, 0}, Poly::gen(ring, GenId::b(i)));
            }
            Series lg = reversion(ex);
            Series sum = lg + lg.swapped(Var::x, Var::y);
            F.law = compose(ex, sum).restrict(w.intersect(we));
            return F;
        }
        case FglKind::pushforward: break;
    }
    throw specification_error("fgl_make cannot build a pushforward law directly");
}

Series fgl_add(const Fgl& F, const Series& a, const Series& b) {
    Substitution s;
    s.x = a;
    s.y = b;
    return substitute(F.law, s);
}

Series formal_inverse(const Fgl& F) {
    const RingPtr& R = F.ring();
    Trunc w = F.trunc();
    Series iota(R, w);
    iota.add_term(Exps{1, 0, 0, 0}, Poly(R, Rat(-1)));
    for (int k = 2; k <= w.x_max; ++k) {
        Trunc wk = w;
        wk.x_max = k;
        wk.y_max = std::min(w.y_max, k);
        Substitution s;
        s.y = iota.restrict(wk);
        Series c = substitute(F.law.restrict(wk), s).slice(Var::x, k);
        if (c.is_zero()) continue;
        Series upd(R, w);
        for (const auto& [e, q] : c.terms()) upd.add_term(Exps{k, 0, e.t, e.s}, q);
        iota -= upd;
    }
    return iota;
}

Series k_series(const Fgl& F, int k) {
    const RingPtr& R = F.ring();
    Trunc w = F.trunc();
    Series t = Series::var(R, w, Var::t);
    if (k == 0) return Series(R, w);
    if (k < 0) return compose(formal_inverse(F), k_series(F, -k));
    Series r = t;
    for (int i = 1; i < k; ++i) r = fgl_add(F, r, t);
    return r;
}

Series fgl_log(const Fgl& F) {
    Series fy = F.law.slice(Var::y, 1);
    Series inv = inverse_unit(fy);
    Series log(F.ring(), F.trunc());
    for (const auto& [e, c] : inv.terms()) {
        log.add_term(Exps{e.x + 1, 0, e.t, e.s}, c.scaled(Rat(1, e.x + 1)));
    }
    return log;
}

Series fgl_exp(const Fgl& F) { return reversion(fgl_log(F)); }

Poly log_coefficient(const Series& log, int i) { return log.coeff(Exps{i + 1, 0, 0, 0}); }

Poly bordism_m(const Series& log, int i) { return log_coefficient(log, i).scaled(Rat(i + 1)); }

PTypical p_typify(const Series& log, int p) {
    Series lt(log.ring(), log.trunc());
    for (const auto& [e, c] : log.terms()) {
        long n = e.x;
        while (n > 1 && n % p == 0) n /= p;
        if (n == 1 && e.x >= 1) lt.add_term(e, c);
    }
    return PTypical{lt, reversion(lt)};
}

Coord quillen_idempotent_coord(const Fgl& F, int p) {
    Series log = fgl_log(F);
    PTypical pt = p_typify(log, p);
    return Coord{compose(pt.exp, log), F.ring(), F.ring()};
}

CoefficientRule CoefficientRule::identity(RingPtr ring, const Trunc& w) {
    CoefficientRule r(ring, ring);
    for (GenId g : ring->generators()) r.set(g, Poly::gen(ring, g), w);
    return r;
}

void CoefficientRule::set(GenId g, Series image) {
    if (!source_->has(g)) throw specification_error("rule for " + g.name() + " outside the source ring");
    require_same_ring(target_, image.ring(), "coefficient rule image");
    images_.insert_or_assign(g.key(), std::make_pair(g, std::move(image)));
}

void CoefficientRule::set(GenId g, const Poly& image, const Trunc& w) {
    Series s(target_, w);
    s.add_term({}, image.ring() ? image : Poly(target_));
    set(g, std::move(s));
}

const Series& CoefficientRule::image(GenId g) const {
    auto it = images_.find(g.key());
    if (it == images_.end()) throw missing_rule_error("no rule for generator " + g.name());
    return it->second.second;
}

bool CoefficientRule::is_constant() const {
    for (const auto& [k, gi] : images_) {
        for (const auto& [e, c] : gi.second.terms())
            if (!(e == Exps{})) return false;
    }
    return true;
}

namespace {

class RuleEvaluator {
public:
    RuleEvaluator(const CoefficientRule& rule, const Trunc& w) : rule_(rule), w_(w) {}

    const Series& monomial(const Monomial& m) {
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
        Series r = Series::constant(rule_.target(), w_, Rat(1));
        for (const auto& [g, e] : m.factors()) r = r * power(g, e);
        return memo_.emplace(m, std::move(r)).first->second;
    }

    Series poly(const Poly& c) {
        Series r(rule_.target(), w_);
        for (const auto& [m, q] : c.terms()) r += monomial(m).scaled(q);
        return r;
    }

private:
    const Series& power(GenId g, int e) {
        auto& v = powers_[g.key()];
        if (v.empty()) {
            v.push_back(Series::constant(rule_.target(), w_, Rat(1)));
            Series base = rule_.image(g);
            v.push_back(base.restrict(w_.intersect(base.trunc())));
        }
        while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * v[1]);
        return v[e];
    }

    const CoefficientRule& rule_;
    Trunc w_;
    std::map<std::uint32_t, std::vector<Series>> powers_;
    std::map<Monomial, Series> memo_;
};

class ConstRuleEvaluator {
public:
    ConstRuleEvaluator(const CoefficientRule& rule, int cap) : rule_(rule), cap_(cap) {}

    Poly poly(const Poly& c) {
        Poly r(rule_.target());
        for (const auto& [m, q] : c.terms()) r += monomial(m).scaled(q);
        return r;
    }

private:
    const Poly& monomial(const Monomial& m) {
        auto it = memo_.find(m);
        if (it != memo_.end()) return it->second;
        Poly r(rule_.target(), Rat(1));
        for (const auto& [g, e] : m.factors()) r = Poly::mul(r, power(g, e), cap_);
        return memo_.emplace(m, std::move(r)).first->second;
    }

    const Poly& power(GenId g, int e) {
        auto& v = powers_[g.key()];
        if (v.empty()) {
            v.push_back(Poly(rule_.target(), Rat(1)));
            v.push_back(rule_.image(g).coeff(Exps{}));
        }
        while (static_cast<int>(v.size()) <= e) v.push_back(Poly::mul(v.back(), v[1], cap_));
        return v[e];
    }

    const CoefficientRule& rule_;
    int cap_;
    std::map<std::uint32_t, std::vector<Poly>> powers_;
    std::map<Monomial, Poly> memo_;
};

}  // namespace

Series CoefficientRule::apply(const Series& S) const {
    require_same_ring(source_, S.ring(), "pushforward source");
    Trunc w = S.trunc();
    for (const auto& [k, gi] : images_) w = w.intersect(gi.second.trunc());
    for (const auto& [e, c] : S.terms())
        for (const auto& [m, q] : c.terms())
            for (const auto& [g, k] : m.factors())
                if (!has(g)) throw missing_rule_error("no rule for generator " + g.name());

    Series out(target_, w);
    if (is_constant()) {
        ConstRuleEvaluator ev(*this, w.weight_cap);
        for (const auto& [e, c] : S.terms()) out.add_term(e, ev.poly(c));
        out.cap_exactness(S.t_exact(), S.s_exact());
        return out;
    }
    RuleEvaluator ev(*this, w);
    for (const auto& [e, c] : S.terms()) out += shift_all(ev.poly(c), e);
    // Missing terms of S above its exact range can come back down by at most
    // (number of factors) * (lowest exponent among the images).
    int low_t = 0;
    int low_s = 0;
    for (const auto& [k, gi] : images_) {
        if (!gi.second.is_zero()) {
            low_t = std::min(low_t, gi.second.order(Var::t));
            low_s = std::min(low_s, gi.second.order(Var::s));
        }
    }
    auto drop = [&](int ex, int low) {
        if (ex >= kExact) return kExact;
        return ex + std::min(w.weight_cap, kNoCap / 2) * low;
    };
    out.cap_exactness(drop(S.t_exact(), low_t), drop(S.s_exact(), low_s));
    return out;
}

Series CoefficientRule::apply(const Poly& c, const Trunc& w) const {
    Series s(source_, w);
    s.add_term({}, c);
    return apply(s);
}

Series pushforward_coeffs(const CoefficientRule& rule, const Series& S) { return rule.apply(S); }

Fgl fgl_pushforward(const Fgl& F, const Coord& g) {
    require_same_ring(F.ring(), g.series.ring(), "fgl pushforward");
    Series ginv = reversion(g.series);
    Substitution s;
    s.x = ginv;
    s.y = ginv.swapped(Var::x, Var::y);
    Series h = substitute(F.law, s);
    Fgl out;
    out.kind = FglKind::pushforward;
    out.label = "pushforward-of(" + F.label + ")";
    out.law = compose(g.series, h);
    return out;
}

Poly hazewinkel_lambda(const RingPtr& bp, int n) {
    if (bp->label() != RingLabel::bp) throw specification_error("Hazewinkel generators live in a bp ring");
    int p = bp->prime();
    if (n > bp->max_index()) {
        throw specification_error("λ_" + std::to_string(n) + " needs v_" + std::to_string(n) +
                                  " beyond the ring's index cap");
    }
    std::vector<Poly> lam{Poly(bp, Rat(1))};
    for (int k = 1; k <= n; ++k) {
        Poly acc(bp);
        for (int i = 0; i < k; ++i) {
            Poly v = Poly::gen(bp, GenId::v(k - i));
            acc += lam[i] * v.pow(static_cast<int>(ipow(p, i)), kNoCap);
        }
        lam.push_back(acc.scaled(Rat(1, p)));
    }
    return lam[n];
}

int typical_depth(int p, int weight_cap) {
    int n = 0;
    long q = p;
    while (q - 1 <= weight_cap) {
        ++n;
        q *= p;
    }
    return n;
}

CoefficientRule quillen_rule(const RingPtr& universal, int p, const Trunc& w) {
    if (universal->label() != RingLabel::universal) throw specification_error("quillen rule needs the universal ring");
    Series lt = x_var(universal, w);
    for (long q = p; q <= w.x_max && q - 1 <= universal->max_index(); q *= p) {
        lt.add_term(Exps{static_cast<int>(q), 0, 0, 0},
                    Poly::gen(universal, GenId::m(static_cast<int>(q - 1)), Rat(1, q)));
    }
    Series et = reversion(lt);
    CoefficientRule rule(universal, universal);
    for (int i = 1; i <= universal->max_index(); ++i) {
        rule.set(GenId::b(i), et.coeff(Exps{i + 1, 0, 0, 0}), w);
        long q = i + 1;
        while (q > 1 && q % p == 0) q /= p;
        if (q == 1) {
            rule.set(GenId::m(i), Poly::gen(universal, GenId::m(i)), w);
        } else {
            rule.set(GenId::m(i), Poly(universal), w);
        }
    }
    return rule;
}

Series hazewinkel_rewrite(const Series& S, int p, int depth, const RingPtr& bp) {
    if (bp->label() != RingLabel::bp || bp->prime() != p) throw specification_error("target must be bp(p)");
    if (depth > bp->max_index()) throw specification_error("depth exceeds the bp ring's index cap");
    CoefficientRule rule(S.ring(), bp);
    for (const auto& [e, c] : S.terms()) {
        for (const auto& [m, q] : c.terms()) {
            for (const auto& [g, k] : m.factors()) {
                if (g.kind != GenKind::m) {
                    throw rewrite_error("coefficient involves " + g.name() + ", outside the p-typical subring");
                }
                long n = g.index + 1;
                int j = 0;
                while (n > 1 && n % p == 0) {
                    n /= p;
                    ++j;
                }
                if (n != 1) throw rewrite_error(g.name() + " is not of the form m_{p^j-1}");
                if (j > depth) throw rewrite_error(g.name() + " needs Hazewinkel depth " + std::to_string(j));
                if (!rule.has(g)) {
                    rule.set(g, hazewinkel_lambda(bp, j).scaled(Rat(ipow(p, j))), S.trunc());
                }
            }
        }
    }
    return rule.apply(S);
}

CoefficientRule typical_rule(const RingPtr& universal, const RingPtr& bp, int p, const Trunc& w) {
    if (bp->label() != RingLabel::bp || bp->prime() != p) throw specification_error("target must be bp(p)");
    Series lt(bp, w);
    int depth = 0;
    for (long q = 1; q <= w.x_max; q *= p, ++depth) {
        if (depth > bp->max_index()) break;
        lt.add_term(Exps{static_cast<int>(q), 0, 0, 0}, hazewinkel_lambda(bp, depth));
    }
    Series et = reversion(lt);
    CoefficientRule rule(universal, bp);
    for (int i = 1; i <= universal->max_index(); ++i) {
        rule.set(GenId::b(i), et.coeff(Exps{i + 1, 0, 0, 0}), w);
        long n = i + 1;
        int j = 0;
        while (n > 1 && n % p == 0) {
            n /= p;
            ++j;
        }
        if (universal->label() == RingLabel::universal) {
            if (n == 1 && j <= bp->max_index()) {
                rule.set(GenId::m(i), hazewinkel_lambda(bp, j).scaled(Rat(ipow(p, j))), w);
            } else {
                rule.set(GenId::m(i), Poly(bp), w);
            }
        }
    }
    return rule;
}

}  // namespace tatefgl
