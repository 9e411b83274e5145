#include "tatefgl/series.hpp"

#include <algorithm>
#include <sstream>

namespace tatefgl {

namespace {

int sat_add(int a, int b) {
    if (a >= kExact || b >= kExact) return kExact;
    return a + b;
}

bool is_laurent(Var v) { return v == Var::t || v == Var::s; }

const char* var_name(Var v) {
    switch (v) {
        case Var::x: return "x";
        case Var::y: return "y";
        case Var::t: return "t";
        case Var::s: return "s";
    }
    return "?";
}

}  // namespace

int Exps::get(Var v) const {
    switch (v) {
        case Var::x: return x;
        case Var::y: return y;
        case Var::t: return t;
        case Var::s: return s;
    }
    return 0;
}

int& Exps::at(Var v) {
    switch (v) {
        case Var::x: return x;
        case Var::y: return y;
        case Var::t: return t;
        case Var::s: return s;
    }
    return x;
}

Trunc Trunc::working(int x_max, int weight_cap, bool use_y, bool use_s) {
    Trunc w;
    w.x_max = x_max;
    w.y_max = use_y ? x_max : 0;
    w.t_min = -kWide;
    w.t_max = kWide;
    w.s_min = use_s ? -kWide : 0;
    w.s_max = use_s ? kWide : 0;
    w.weight_cap = weight_cap;
    return w;
}

Trunc Trunc::intersect(const Trunc& o) const {
    Trunc r;
    r.x_max = std::min(x_max, o.x_max);
    r.y_max = std::min(y_max, o.y_max);
    // Lower bounds are guards against runaway Laurent tails, so take the looser one.
    r.t_min = std::min(t_min, o.t_min);
    r.t_max = std::min(t_max, o.t_max);
    r.s_min = std::min(s_min, o.s_min);
    r.s_max = std::min(s_max, o.s_max);
    r.weight_cap = std::min(weight_cap, o.weight_cap);
    return r;
}

void Trunc::validate() const {
    if (x_max < 0 || y_max < 0) throw specification_error("x_max and y_max must be nonnegative");
    if (t_min > t_max) throw specification_error("t_min must not exceed t_max");
    if (s_min > s_max) throw specification_error("s_min must not exceed s_max");
    if (weight_cap < 0) throw specification_error("weight cap must be nonnegative");
}

bool Trunc::contains(const Exps& e) const {
    return e.x >= 0 && e.y >= 0 && e.x <= x_max && e.y <= y_max && e.t >= t_min && e.t <= t_max && e.s >= s_min &&
           e.s <= s_max;
}

Series::Series(RingPtr ring, Trunc trunc) : ring_(std::move(ring)), trunc_(trunc) { trunc_.validate(); }

Series Series::constant(RingPtr ring, Trunc trunc, const Rat& c) {
    Series r(ring, trunc);
    r.add_term({}, Poly(ring, c));
    return r;
}

Series Series::constant(Trunc trunc, const Poly& c) {
    Series r(c.ring(), trunc);
    r.add_term({}, c);
    return r;
}

Series Series::var(RingPtr ring, Trunc trunc, Var v) {
    Series r(ring, trunc);
    Exps e;
    e.at(v) = 1;
    r.add_term(e, Poly(ring, Rat(1)));
    return r;
}

Series Series::term(Trunc trunc, Exps e, const Poly& c) {
    Series r(c.ring(), trunc);
    r.add_term(e, c);
    return r;
}

Series Series::term(RingPtr ring, Trunc trunc, Exps e, const Rat& c) {
    Series r(ring, trunc);
    r.add_term(e, Poly(ring, c));
    return r;
}

Poly Series::coeff(const Exps& e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Poly(ring_) : it->second;
}

int Series::order(Var v) const {
    int m = kExact;
    for (const auto& [e, c] : c_) m = std::min(m, e.get(v));
    return m;
}

int Series::max_exp(Var v) const {
    int m = -kExact;
    for (const auto& [e, c] : c_) m = std::max(m, e.get(v));
    return m;
}

bool Series::depends_on(Var v) const {
    for (const auto& [e, c] : c_)
        if (e.get(v) != 0) return true;
    return false;
}

std::optional<int> Series::degree() const {
    std::optional<int> d;
    for (const auto& [e, c] : c_) {
        int k = c.degree() + 2 * e.total();
        if (d && *d != k) {
            throw inhomogeneity_error("inhomogeneous series: degrees " + std::to_string(*d) + " and " +
                                      std::to_string(k));
        }
        d = k;
    }
    return d;
}

void Series::add_term(const Exps& e, const Poly& c) {
    if (e.x < 0 || e.y < 0) throw specification_error("negative exponent in a power-series variable");
    if (c.is_zero()) return;
    require_same_ring(ring_, c.ring(), "series term");
    if (e.x > trunc_.x_max || e.y > trunc_.y_max) return;
    if (e.t < trunc_.t_min) {
        throw truncation_error("t-exponent " + std::to_string(e.t) + " below window minimum " +
                               std::to_string(trunc_.t_min));
    }
    if (e.s < trunc_.s_min) {
        throw truncation_error("s-exponent " + std::to_string(e.s) + " below window minimum " +
                               std::to_string(trunc_.s_min));
    }
    if (e.t > trunc_.t_max) {
        t_exact_ = std::min(t_exact_, trunc_.t_max);
        return;
    }
    if (e.s > trunc_.s_max) {
        s_exact_ = std::min(s_exact_, trunc_.s_max);
        return;
    }
    Poly p = c.max_weight() > trunc_.weight_cap ? c.truncated(trunc_.weight_cap) : c;
    if (p.is_zero()) return;
    auto it = c_.find(e);
    if (it == c_.end()) {
        c_.emplace(e, std::move(p));
    } else {
        it->second += p;
        if (it->second.is_zero()) c_.erase(it);
    }
}

Series Series::restrict(const Trunc& w) const {
    if (w.x_max > trunc_.x_max || w.y_max > trunc_.y_max || w.weight_cap > trunc_.weight_cap) {
        throw specification_error("restrict cannot widen the x, y or weight window");
    }
    Series r(ring_, w);
    r.t_exact_ = t_exact_;
    r.s_exact_ = s_exact_;
    for (const auto& [e, c] : c_) r.add_term(e, c);
    return r;
}

Series Series::with_weight_cap(int cap) const {
    Trunc w = trunc_;
    w.weight_cap = std::min(cap, trunc_.weight_cap);
    return restrict(w);
}

Series Series::slice(Var v, int k) const {
    Series r(ring_, trunc_);
    r.t_exact_ = t_exact_;
    r.s_exact_ = s_exact_;
    for (const auto& [e, c] : c_) {
        if (e.get(v) != k) continue;
        Exps f = e;
        f.at(v) = 0;
        r.c_.emplace(f, c);
    }
    return r;
}

std::map<int, Series> Series::slices(Var v) const {
    std::map<int, Series> out;
    for (const auto& [e, c] : c_) {
        int k = e.get(v);
        auto it = out.find(k);
        if (it == out.end()) {
            Series s(ring_, trunc_);
            s.t_exact_ = t_exact_;
            s.s_exact_ = s_exact_;
            it = out.emplace(k, std::move(s)).first;
        }
        Exps f = e;
        f.at(v) = 0;
        it->second.c_.emplace(f, c);
    }
    return out;
}

Series Series::band(Var v, int lo, int hi) const {
    Series r(ring_, trunc_);
    r.t_exact_ = t_exact_;
    r.s_exact_ = s_exact_;
    for (const auto& [e, c] : c_) {
        int k = e.get(v);
        if (k >= lo && k <= hi) r.c_.emplace(e, c);
    }
    return r;
}

Series Series::map_coeffs(const std::function<Poly(const Poly&)>& fn) const {
    Series r(ring_, trunc_);
    r.t_exact_ = t_exact_;
    r.s_exact_ = s_exact_;
    for (const auto& [e, c] : c_) r.add_term(e, fn(c));
    return r;
}

Series Series::scaled(const Rat& c) const {
    Series r(ring_, trunc_);
    r.t_exact_ = t_exact_;
    r.s_exact_ = s_exact_;
    if (c.is_zero()) return r;
    for (const auto& [e, p] : c_) r.c_.emplace(e, p.scaled(c));
    return r;
}

Series Series::scaled(const Poly& c) const { return *this * Series::constant(trunc_, c); }

Series Series::shifted(Var v, int k) const {
    Series r(ring_, trunc_);
    r.t_exact_ = v == Var::t ? sat_add(t_exact_, k) : t_exact_;
    r.s_exact_ = v == Var::s ? sat_add(s_exact_, k) : s_exact_;
    for (const auto& [e, c] : c_) {
        Exps f = e;
        f.at(v) += k;
        r.add_term(f, c);
    }
    return r;
}

Series Series::swapped(Var a, Var b) const {
    if (is_laurent(a) != is_laurent(b)) throw specification_error("cannot exchange a power-series and a Laurent variable");
    Trunc w = trunc_;
    if (a != b) {
        if (is_laurent(a)) {
            std::swap(w.t_min, w.s_min);
            std::swap(w.t_max, w.s_max);
        } else {
            std::swap(w.x_max, w.y_max);
        }
    }
    Series r(ring_, w);
    if (is_laurent(a) && a != b) {
        r.t_exact_ = s_exact_;
        r.s_exact_ = t_exact_;
    } else {
        r.t_exact_ = t_exact_;
        r.s_exact_ = s_exact_;
    }
    for (const auto& [e, c] : c_) {
        Exps f = e;
        std::swap(f.at(a), f.at(b));
        r.c_.emplace(f, c);
    }
    return r;
}

Series Series::mod_p(unsigned long p) const {
    Series r(ring_, trunc_);
    r.t_exact_ = t_exact_;
    r.s_exact_ = s_exact_;
    for (const auto& [e, c] : c_) {
        Poly q = c.mod_p(p);
        if (!q.is_zero()) r.c_.emplace(e, std::move(q));
    }
    return r;
}

Series Series::operator-() const {
    Series r = *this;
    for (auto& [e, c] : r.c_) c = -c;
    return r;
}

Series& Series::operator+=(const Series& o) {
    require_same_ring(ring_, o.ring_, "series add");
    Trunc w = trunc_.intersect(o.trunc_);
    if (!(w == trunc_)) *this = restrict(w);
    t_exact_ = std::min(t_exact_, o.t_exact_);
    s_exact_ = std::min(s_exact_, o.s_exact_);
    for (const auto& [e, c] : o.c_) add_term(e, c);
    return *this;
}

Series& Series::operator-=(const Series& o) {
    require_same_ring(ring_, o.ring_, "series subtract");
    Trunc w = trunc_.intersect(o.trunc_);
    if (!(w == trunc_)) *this = restrict(w);
    t_exact_ = std::min(t_exact_, o.t_exact_);
    s_exact_ = std::min(s_exact_, o.s_exact_);
    for (const auto& [e, c] : o.c_) add_term(e, -c);
    return *this;
}

Series operator*(const Series& a, const Series& b) {
    require_same_ring(a.ring_, b.ring_, "series multiply");
    Trunc w = a.trunc_.intersect(b.trunc_);
    Series r(a.ring_, w);
    int ex_t = std::min(sat_add(a.t_exact_, b.order(Var::t)), sat_add(b.t_exact_, a.order(Var::t)));
    int ex_s = std::min(sat_add(a.s_exact_, b.order(Var::s)), sat_add(b.s_exact_, a.order(Var::s)));
    bool dropped_t = false;
    bool dropped_s = false;

    std::vector<int> bw;
    bw.reserve(b.c_.size());
    for (const auto& [e, c] : b.c_) bw.push_back(c.min_weight());

    Series::Map& acc = r.c_;
    for (const auto& [ea, ca] : a.c_) {
        if (ea.x > w.x_max) break;
        int wa = ca.min_weight();
        if (wa > w.weight_cap) continue;
        std::size_t k = 0;
        for (auto it = b.c_.begin(); it != b.c_.end(); ++it, ++k) {
            const auto& [eb, cb] = *it;
            if (ea.x + eb.x > w.x_max) break;
            if (ea.y + eb.y > w.y_max) continue;
            if (wa + bw[k] > w.weight_cap) continue;
            Exps e = ea + eb;
            if (e.t < w.t_min || e.s < w.s_min) {
                throw truncation_error("product leaves the Laurent window (t^" + std::to_string(e.t) + ", s^" +
                                       std::to_string(e.s) + ")");
            }
            if (e.t > w.t_max) {
                dropped_t = true;
                continue;
            }
            if (e.s > w.s_max) {
                dropped_s = true;
                continue;
            }
            Poly p = Poly::mul(ca, cb, w.weight_cap);
            if (p.is_zero()) continue;
            auto slot = acc.find(e);
            if (slot == acc.end()) {
                acc.emplace(e, std::move(p));
            } else {
                slot->second += p;
            }
        }
    }
    for (auto it = acc.begin(); it != acc.end();) {
        if (it->second.is_zero()) {
            it = acc.erase(it);
        } else {
            ++it;
        }
    }
    r.t_exact_ = dropped_t ? std::min(ex_t, w.t_max) : ex_t;
    r.s_exact_ = dropped_s ? std::min(ex_s, w.s_max) : ex_s;
    return r;
}

bool operator==(const Series& a, const Series& b) {
    if (a.c_.size() != b.c_.size()) return false;
    auto i = a.c_.begin();
    auto j = b.c_.begin();
    for (; i != a.c_.end(); ++i, ++j) {
        if (!(i->first == j->first) || !(i->second == j->second)) return false;
    }
    return true;
}

namespace {

std::string var_power(const char* name, int e) {
    if (e == 1) return name;
    return std::string(name) + "^" + std::to_string(e);
}

}  // namespace

std::string Series::str(const char* sep) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        std::string vars;
        auto add = [&](const char* n, int k) {
            if (k == 0) return;
            if (!vars.empty()) vars += sep;
            vars += var_power(n, k);
        };
        add("x", e.x);
        add("y", e.y);
        add("s", e.s);
        add("t", e.t);

        std::string coeff;
        bool negative = false;
        if (c.terms().size() == 1) {
            const auto& [m, q] = c.terms()[0];
            negative = q.sign() < 0;
            Rat a = negative ? -q : q;
            if (m.is_one()) {
                coeff = (a.is_one() && !vars.empty()) ? "" : a.str();
            } else if (a.is_one()) {
                coeff = m.str(sep);
            } else {
                coeff = a.str() + sep + m.str(sep);
            }
        } else {
            coeff = "(" + c.str(sep) + ")";
        }
        if (first) {
            if (negative) os << "-";
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        os << coeff;
        if (!coeff.empty() && !vars.empty()) os << sep;
        os << vars;
    }
    return os.str();
}

bool agree_within(const Series& a, const Series& b, const Trunc& w) {
    for (const Series* s : {&a, &b}) {
        const Trunc& st = s->trunc();
        if (st.x_max < w.x_max || st.y_max < w.y_max || st.weight_cap < w.weight_cap) {
            throw truncation_error("comparison window exceeds an operand's window");
        }
        if (s->t_exact() < w.t_max || s->s_exact() < w.s_max) {
            throw truncation_error("comparison window exceeds an operand's exact range");
        }
    }
    auto pick = [&](const Series& s) {
        std::map<Exps, Poly> out;
        for (const auto& [e, c] : s.terms()) {
            if (!w.contains(e)) continue;
            Poly p = c.truncated(w.weight_cap);
            if (!p.is_zero()) out.emplace(e, std::move(p));
        }
        return out;
    };
    auto ma = pick(a);
    auto mb = pick(b);
    if (ma.size() != mb.size()) return false;
    for (auto i = ma.begin(), j = mb.begin(); i != ma.end(); ++i, ++j) {
        if (!(i->first == j->first) || !(i->second == j->second)) return false;
    }
    return true;
}

Series pow(const Series& a, int e) {
    if (e < 0) return pow(inverse_unit(a), -e);
    Series r = Series::constant(a.ring(), a.trunc(), Rat(1));
    Series base = a;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

Series inverse_unit(const Series& u) {
    if (u.is_zero()) throw division_error("division by the zero series");
    // A unit in s alone is inverted with the roles of s and t exchanged.
    if (!u.depends_on(Var::t) && u.depends_on(Var::s)) {
        return inverse_unit(u.swapped(Var::t, Var::s)).swapped(Var::t, Var::s);
    }
    // Leading part: lowest t-degree among terms free of x, y, s.
    int e = kExact;
    for (const auto& [k, c] : u.terms()) {
        if (k.x == 0 && k.y == 0 && k.s == 0 && !c.constant_term().is_zero()) e = std::min(e, k.t);
    }
    if (e == kExact) throw division_error("series has no invertible leading term: " + u.str());
    Rat lead = u.coeff(Exps{0, 0, e, 0}).constant_term();

    // h = u / (lead * t^e) - 1 must be topologically nilpotent.
    Series h = u.shifted(Var::t, -e).scaled(Rat(1) / lead);
    h -= Series::constant(u.ring(), h.trunc(), Rat(1));
    for (const auto& [k, c] : h.terms()) {
        bool nil_var = k.x > 0 || k.y > 0 || k.s > 0 || k.t > 0;
        if (k.s < 0) throw division_error("unit has a negative s-power in its tail");
        if (!nil_var && !c.constant_term().is_zero()) {
            throw division_error("series is not a unit times a power of t: " + u.str());
        }
    }

    Series minus_h = -h;
    Series sum = Series::constant(u.ring(), h.trunc(), Rat(1));
    Series power = minus_h;
    const int limit = 100000;
    int steps = 0;
    while (!power.is_zero()) {
        sum += power;
        power = power * minus_h;
        if (++steps > limit) throw truncation_error("unit inverse does not terminate in this window");
    }
    return sum.scaled(Rat(1) / lead).shifted(Var::t, -e);
}

Series divide_by_unit(const Series& a, const Series& u) { return a * inverse_unit(u); }

namespace {

bool has_constant_term(const Series& g) {
    for (const auto& [k, c] : g.terms()) {
        if (k.x == 0 && k.y == 0 && k.t == 0 && k.s == 0 && !c.constant_term().is_zero()) return true;
    }
    return false;
}

// Is the unknown part of f beyond its window in variable v invisible after
// substituting g for v, in window w?
bool tail_negligible(const Series& f, Var v, const Series& g, const Trunc& w) {
    long n_max = 0;
    switch (v) {
        case Var::x: n_max = f.trunc().x_max; break;
        case Var::y: n_max = f.trunc().y_max; break;
        case Var::t: n_max = f.t_exact(); break;
        case Var::s: n_max = f.s_exact(); break;
    }
    if (n_max >= kExact) return true;
    if (f.is_zero() && (v == Var::t || v == Var::s)) return true;
    int ox = g.order(Var::x);
    if (ox >= 1 && ox < kExact && (n_max + 1) * ox > w.x_max) return true;
    int oy = g.order(Var::y);
    if (oy >= 1 && oy < kExact && (n_max + 1) * oy > w.y_max) return true;
    if (g.is_zero()) return true;
    // Every term of g has x + y >= 1.
    int oxy = kExact;
    for (const auto& [e, c] : g.terms()) oxy = std::min(oxy, e.x + e.y);
    if (oxy >= 1 && oxy < kExact && (n_max + 1) * oxy > w.x_max + w.y_max) return true;
    // Weight argument: a homogeneous f with no negative exponents has
    // coefficient weight >= (v-degree) - degree/2.
    if (!f.is_zero() && f.order(Var::t) >= 0 && f.order(Var::s) >= 0 && (v == Var::x || v == Var::y)) {
        auto d = f.degree();
        if (d && (n_max + 1) - *d / 2 > w.weight_cap) return true;
    }
    return false;
}

class PowerCache {
public:
    explicit PowerCache(const Series& g) : g_(g) {}

    const Series& get(int k) {
        if (k >= 0) {
            if (pos_.empty()) pos_.push_back(Series::constant(g_.ring(), g_.trunc(), Rat(1)));
            while (static_cast<int>(pos_.size()) <= k) pos_.push_back(pos_.back() * g_);
            return pos_[k];
        }
        if (neg_.empty()) {
            inv_ = inverse_unit(g_);
            neg_.push_back(*inv_);
        }
        while (static_cast<int>(neg_.size()) < -k) neg_.push_back(neg_.back() * *inv_);
        return neg_[-k - 1];
    }

private:
    Series g_;
    std::vector<Series> pos_;
    std::vector<Series> neg_;
    std::optional<Series> inv_;
};

}  // namespace

Series substitute(const Series& f, const Substitution& sub) {
    struct Slot {
        Var v;
        const Series* g;
    };
    std::vector<Slot> slots;
    if (sub.x) slots.push_back({Var::x, &*sub.x});
    if (sub.y) slots.push_back({Var::y, &*sub.y});
    if (sub.t) slots.push_back({Var::t, &*sub.t});
    if (sub.s) slots.push_back({Var::s, &*sub.s});
    if (slots.empty()) return f;

    Trunc w = f.trunc();
    for (const auto& sl : slots) {
        require_same_ring(f.ring(), sl.g->ring(), "substitute");
        w = w.intersect(sl.g->trunc());
    }
    for (const auto& sl : slots) {
        if (has_constant_term(*sl.g)) {
            throw composition_error(std::string("substituted series for ") + var_name(sl.v) +
                                    " has a nonzero constant term");
        }
        if (!tail_negligible(f, sl.v, *sl.g, w)) {
            throw composition_error(std::string("series is not known far enough in ") + var_name(sl.v) +
                                    " for this substitution to be exact in the window");
        }
    }

    // Horner over the first substituted power-series variable; the others via power tables.
    std::optional<Var> horner;
    const Series* hg = nullptr;
    std::vector<std::pair<Var, PowerCache>> tables;
    for (const auto& sl : slots) {
        if (!horner && !is_laurent(sl.v)) {
            horner = sl.v;
            hg = sl.g;
        } else {
            tables.emplace_back(sl.v, PowerCache(*sl.g));
        }
    }

    auto eval = [&](const Series& p) -> Series {
        if (tables.empty()) return p.restrict(w.intersect(p.trunc()));
        // Group terms by the exponents of the table variables.
        std::map<std::vector<int>, Series> groups;
        for (const auto& [e, c] : p.terms()) {
            std::vector<int> key;
            Exps rest = e;
            for (auto& [v, tab] : tables) {
                key.push_back(e.get(v));
                rest.at(v) = 0;
            }
            auto it = groups.find(key);
            if (it == groups.end()) {
                it = groups.emplace(key, Series(p.ring(), w)).first;
            }
            it->second.add_term(rest, c);
        }
        Series out(p.ring(), w);
        for (auto& [key, rest] : groups) {
            Series term = rest;
            for (std::size_t i = 0; i < tables.size(); ++i) {
                if (key[i] != 0) term = term * tables[i].second.get(key[i]);
            }
            out += term;
        }
        return out;
    };

    if (!horner) return eval(f);

    auto parts = f.slices(*horner);
    Series r(f.ring(), w);
    if (parts.empty()) return r;
    int top = parts.rbegin()->first;
    for (int n = top; n >= 0; --n) {
        if (n != top) r = r * *hg;
        auto it = parts.find(n);
        if (it != parts.end()) r += eval(it->second);
    }
    return r;
}

Series compose(const Series& f, const Series& g) {
    Substitution s;
    s.x = g;
    return substitute(f, s);
}

Series reversion(const Series& f) {
    if (f.order(Var::x) < 1) throw reversion_error("series to revert has an x-free term");
    Series lin = f.slice(Var::x, 1);
    if (lin.size() != 1 || !(lin.terms().begin()->first == Exps{}) || !lin.terms().begin()->second.is_constant()) {
        throw reversion_error("linear coefficient is not an invertible rational: " + lin.str());
    }
    Rat u = lin.terms().begin()->second.constant_term();
    Rat inv = Rat(1) / u;
    const Trunc& tr = f.trunc();
    Series g(f.ring(), tr);
    g.add_term(Exps{1, 0, 0, 0}, Poly(f.ring(), inv));
    for (int k = 2; k <= tr.x_max; ++k) {
        Trunc wk = tr;
        wk.x_max = k;
        Series fk = f.restrict(wk);
        Series gk = g.restrict(wk);
        Series c = compose(fk, gk).slice(Var::x, k);
        if (c.is_zero()) continue;
        // c lives in the narrower window wk; rebuild it in tr before updating g.
        Series upd(f.ring(), tr);
        for (const auto& [e, q] : c.terms()) upd.add_term(Exps{k, e.y, e.t, e.s}, q.scaled(inv));
        g -= upd;
    }
    return g;
}

Series DivisionRemainder::quotient() const {
    if (multiples.empty()) return Series(remainder.ring(), remainder.trunc());
    Series q(remainder.ring(), remainder.trunc());
    for (const auto& [d, m] : multiples) q += m.shifted(Var::t, d - 1);
    return q;
}

bool DivisionRemainder::multiples_p_integral(unsigned long p) const {
    for (const auto& [d, m] : multiples)
        for (const auto& [e, c] : m.terms())
            if (!c.is_p_integral(p)) return false;
    return true;
}

DivisionRemainder long_divide_by_p_series(const Series& S, const Series& pseries, int p, int bound) {
    if (pseries.depends_on(Var::x) || pseries.depends_on(Var::y) || pseries.depends_on(Var::s)) {
        throw precondition_error("p-series must be a series in t alone");
    }
    Poly lead = pseries.coeff(Exps{0, 0, 1, 0});
    if (pseries.order(Var::t) != 1 || !(lead == Poly(pseries.ring(), Rat(p)))) {
        throw precondition_error("p-series must start with " + std::to_string(p) + "*t");
    }
    if (S.trunc().t_max < bound - 1) throw specification_error("division bound exceeds the series window");

    DivisionRemainder out;
    out.bound = bound;
    Series R = S;
    Rat inv_p(1, p);
    int start = R.order(Var::t);
    for (int d = start; d < bound && !R.is_zero(); ++d) {
        Series c = R.slice(Var::t, d);
        if (c.is_zero()) continue;
        Series m = c.scaled(inv_p);
        R -= m.shifted(Var::t, d - 1) * pseries;
        out.multiples.emplace_back(d, std::move(m));
    }
    out.remainder = std::move(R);
    return out;
}

}  // namespace tatefgl
