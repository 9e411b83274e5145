#pragma once

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tatefgl/ring.hpp"

namespace tatefgl {

enum class Var { x, y, t, s };

struct Exps {
    int x = 0, y = 0, t = 0, s = 0;

    int get(Var v) const;
    int& at(Var v);
    int total() const { return x + y + t + s; }

    friend bool operator==(const Exps&, const Exps&) = default;
    // Display order: x, then y, then s, then t.
    friend bool operator<(const Exps& a, const Exps& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        if (a.s != b.s) return a.s < b.s;
        return a.t < b.t;
    }
    friend Exps operator+(const Exps& a, const Exps& b) { return {a.x + b.x, a.y + b.y, a.t + b.t, a.s + b.s}; }
};

// Sentinel for "no term was ever dropped in this direction".
constexpr int kExact = INT_MAX / 4;

// Truncation window. x and y are power-series variables, t and s are Laurent.
// Coefficient monomials of weight above weight_cap are dropped; that is an
// ideal quotient, so arithmetic stays exact in it. A term below t_min (s_min)
// is an error, never dropped silently.
struct Trunc {
    int x_max = 0;
    int y_max = 0;
    int t_min = 0;
    int t_max = 0;
    int s_min = 0;
    int s_max = 0;
    int weight_cap = kNoCap;

    static constexpr int kWide = 1 << 20;

    // Window used inside pipelines: t (and optionally s) effectively unbounded,
    // termination comes from x_max and weight_cap.
    static Trunc working(int x_max, int weight_cap, bool use_y = true, bool use_s = false);

    Trunc intersect(const Trunc& o) const;
    void validate() const;
    bool contains(const Exps& e) const;

    friend bool operator==(const Trunc&, const Trunc&) = default;
};

class Series {
public:
    using Map = std::map<Exps, Poly>;

    Series() = default;
    Series(RingPtr ring, Trunc trunc);

    static Series constant(RingPtr ring, Trunc trunc, const Rat& c);
    static Series constant(Trunc trunc, const Poly& c);
    static Series var(RingPtr ring, Trunc trunc, Var v);
    static Series term(Trunc trunc, Exps e, const Poly& c);
    static Series term(RingPtr ring, Trunc trunc, Exps e, const Rat& c);

    const RingPtr& ring() const { return ring_; }
    const Trunc& trunc() const { return trunc_; }
    const Map& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    Poly coeff(const Exps& e) const;

    // Every coefficient with t-exponent <= t_exact() is exact; kExact means
    // no term was dropped at the top of the t-window.
    int t_exact() const { return t_exact_; }
    int s_exact() const { return s_exact_; }

    // Smallest exponent of v among stored terms (kExact if zero).
    int order(Var v) const;
    int max_exp(Var v) const;
    bool depends_on(Var v) const;

    // Common graded degree (coefficient degree + 2 * variable exponents).
    // Empty result for the zero series; throws inhomogeneity_error otherwise.
    std::optional<int> degree() const;

    // Lowers the exact range (never raises it).
    void cap_exactness(int t_exact, int s_exact) {
        t_exact_ = std::min(t_exact_, t_exact);
        s_exact_ = std::min(s_exact_, s_exact);
    }

    // Inserts c*v^e, honoring the window. Used by constructors of new series.
    void add_term(const Exps& e, const Poly& c);

    // Re-window. Terms outside the new window are dropped (those above t_max
    // lower t_exact); terms below the new t_min/s_min are an error.
    Series restrict(const Trunc& w) const;
    Series with_weight_cap(int cap) const;

    // Coefficient of v^k, as a series with v removed.
    Series slice(Var v, int k) const;
    std::map<int, Series> slices(Var v) const;
    // Only the terms with v-exponent in [lo, hi].
    Series band(Var v, int lo, int hi) const;

    Series map_coeffs(const std::function<Poly(const Poly&)>& fn) const;
    Series scaled(const Rat& c) const;
    Series scaled(const Poly& c) const;
    // Multiply by v^k (v Laurent only: t or s; for x, y k must keep exponents >= 0).
    Series shifted(Var v, int k) const;
    // Rename / exchange variables (both must be the same kind: power or Laurent).
    Series swapped(Var a, Var b) const;
    Series mod_p(unsigned long p) const;

    Series operator-() const;
    Series& operator+=(const Series& o);
    Series& operator-=(const Series& o);
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(const Series& a, const Series& b);

    // Exact structural equality of stored terms (windows not compared).
    friend bool operator==(const Series& a, const Series& b);

    std::string str(const char* sep = "*") const;

private:
    RingPtr ring_;
    Trunc trunc_;
    Map c_;
    int t_exact_ = kExact;
    int s_exact_ = kExact;
};

// Equality on the common window where both sides are exact.
bool agree_within(const Series& a, const Series& b, const Trunc& w);

Series pow(const Series& a, int e);

// a * u^{-1}. u must be c * t^e * (1 + h) (or c * s^e * (1 + h) for u free of t)
// with c a nonzero rational and h
// topologically nilpotent in the window.
Series divide_by_unit(const Series& a, const Series& u);
Series inverse_unit(const Series& u);

// Simultaneous substitution of series for variables of f.
struct Substitution {
    std::optional<Series> x, y, t, s;
};

Series substitute(const Series& f, const Substitution& sub);
// f(g): substitutes g for x in f.
Series compose(const Series& f, const Series& g);
// g with f(g(x)) = x, by recursion on x-degree.
Series reversion(const Series& f);

struct DivisionRemainder {
    Series remainder;
    // (d, c/p) for each cleared t-degree d, in clearing order; c/p is the
    // t^d slice divided by p, so the subtracted multiple is (c/p)*t^(d-1)*pseries.
    std::vector<std::pair<int, Series>> multiples;
    int bound = 0;

    Series quotient() const;
    bool multiples_p_integral(unsigned long p) const;
};

// Clears t-degrees from the lowest present up to bound-1 by subtracting
// multiples of pseries, lowest degree first.
DivisionRemainder long_divide_by_p_series(const Series& S, const Series& pseries, int p, int bound);

}  // namespace tatefgl
