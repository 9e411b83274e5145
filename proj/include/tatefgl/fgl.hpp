#pragma once

#include <map>
#include <string>
#include <utility>

#include "tatefgl/series.hpp"

namespace tatefgl {

enum class FglKind { universal, todd, additive, pushforward };

struct Fgl {
    Series law;  // F(x, y)
    FglKind kind = FglKind::additive;
    std::string label;

    const RingPtr& ring() const { return law.ring(); }
    const Trunc& trunc() const { return law.trunc(); }
};

// f(x) = x + f_1 x^2 + ..., a change of coordinate from `source` data to `target`.
struct Coord {
    Series series;
    RingPtr source;
    RingPtr target;

    static Coord identity(RingPtr ring, const Trunc& w);
};

FglKind parse_fgl_kind(const std::string& s);
std::string fgl_kind_name(FglKind k);

// The window for FGL work: x, y up to weight_cap + 1, t unbounded, so that
// substituting x-free series into F stays exact under the weight cap.
Trunc fgl_window(int weight_cap, bool use_s = false);

// universal: exp(log x + log y) with exp(x) = x + sum b_i x^{i+1} over Q[b_i].
Fgl fgl_make(FglKind kind, RingPtr ring, const Trunc& w);

// x +_F y with x, y replaced by the given series.
Series fgl_add(const Fgl& F, const Series& a, const Series& b);

Series formal_inverse(const Fgl& F);
// [k]_F(t); [0] = 0, [k+1] = [k] +_F t, [-k] = inverse of [k].
Series k_series(const Fgl& F, int k);

// log via the integral of 1 / F_y(x, 0).
Series fgl_log(const Fgl& F);
Series fgl_exp(const Fgl& F);

// Coefficient of x^{i+1} in log, and the bordism-class normalization (i+1) times it.
Poly log_coefficient(const Series& log, int i);
Poly bordism_m(const Series& log, int i);

struct PTypical {
    Series log;
    Series exp;
};

// Keeps exactly the x^{p^i} terms of log.
PTypical p_typify(const Series& log, int p);

// exp_ptyp(log_F(x)).
Coord quillen_idempotent_coord(const Fgl& F, int p);

// A multiplicative map on coefficients: each generator goes to a series over
// the target ring (which may involve t and s).
class CoefficientRule {
public:
    CoefficientRule() = default;
    CoefficientRule(RingPtr source, RingPtr target) : source_(std::move(source)), target_(std::move(target)) {}

    static CoefficientRule identity(RingPtr ring, const Trunc& w);

    void set(GenId g, Series image);
    void set(GenId g, const Poly& image, const Trunc& w);
    bool has(GenId g) const { return images_.count(g.key()) != 0; }
    const Series& image(GenId g) const;
    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    const std::map<std::uint32_t, std::pair<GenId, Series>>& images() const { return images_; }

    // True when every image is a t- and s-free constant.
    bool is_constant() const;

    Series apply(const Series& S) const;
    Series apply(const Poly& c, const Trunc& w) const;

private:
    RingPtr source_;
    RingPtr target_;
    std::map<std::uint32_t, std::pair<GenId, Series>> images_;
};

Series pushforward_coeffs(const CoefficientRule& rule, const Series& S);

// g(F(g^{-1}x, g^{-1}y)).
Fgl fgl_pushforward(const Fgl& F, const Coord& g);

// Hazewinkel: p*λ_n = sum_{i<n} λ_i v_{n-i}^{p^i}, λ_0 = 1.
Poly hazewinkel_lambda(const RingPtr& bp, int n);

// Largest n with p^n - 1 <= weight_cap.
int typical_depth(int p, int weight_cap);

// On the universal ring: b_i -> x^{i+1} coefficient of the inverse of
// x + sum_j m_{p^j-1}/p^j x^{p^j}. This is the Quillen idempotent on coefficients.
CoefficientRule quillen_rule(const RingPtr& universal, int p, const Trunc& w);

// m_{p^j-1} -> p^j λ_j in the bp ring. Any other generator is a rewrite error.
Series hazewinkel_rewrite(const Series& S, int p, int depth, const RingPtr& bp);

// Composite b_i -> bp ring, computed directly from the Hazewinkel log.
CoefficientRule typical_rule(const RingPtr& universal, const RingPtr& bp, int p, const Trunc& w);

}  // namespace tatefgl
