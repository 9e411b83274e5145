#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tatefgl/frobenius.hpp"

namespace tatefgl {

struct OrientationData {
    Fgl base_fgl;
    Coord coord;
    FrobAction frob;
    int prime = 0;
    std::string label;
};

// Presets: "todd-p-typical" (todd law, Quillen idempotent coordinate) and
// "identity" (f = x) over the todd or universal law. The working weight cap
// is x_max + t_max, which keeps every coefficient with x-degree <= x_max and
// t-degree <= t_max exact.
OrientationData make_orientation(const std::string& preset, FglKind ring, int p, int x_max, int t_max);

// Fr(f)(frob(x)) - f(x) * prod_k f(x +_F [k]t) / f([k]t), restricted to w.
Series frobenius_commutator(const OrientationData& data, const Trunc& w);
// prod_k [k]_F(t) times the commutator, restricted to w.
Series obstruction_series(const OrientationData& data, const Trunc& w);

// floor((n-1)(p-1)/2); n = nullopt stands for infinity and returns t_max.
int en_vanishing_bound(int p, std::optional<int> n, int t_max);

struct VerdictSlice {
    int x_degree = 0;
    Series laurent_coefficient;
    Series remainder;
    Series remainder_mod_p;
    // Set when clearing t^d (d < bound) needed a non-p-integral multiple; the
    // remainder is then that t^d term.
    std::optional<int> blocked_degree;
};

struct ObstructionVerdict {
    int p = 0;
    std::optional<int> n;  // nullopt: infinity
    int tbd = 0;
    std::vector<VerdictSlice> slices;
    std::optional<int> first_failure;
    bool excluded = false;
};

// Long-divides the x^a coefficient by [p]_F(t) clearing t-degrees below bound,
// keeps t-degrees <= bound, reduces mod p. Integrality errors carry the x-degree.
// Clearing stops at the first degree whose multiple is not p-integral.
VerdictSlice reduce_slice(const Series& coeff, int x_degree, const Series& pseries, int p, int bound);

ObstructionVerdict en_verdict(const OrientationData& data, std::optional<int> n, const Trunc& w);

struct JnResult {
    int p = 0;
    int d = 0;
    int bound = 0;
    int weight_cap = 0;
    Series fr_m;       // Fr(m_d) over the universal ring
    Series jn;         // -φ(χ)^{-d} φ(Fr(m_d)) over bp(p)
    Series pseries;    // φ([p](t))
    Series remainder;  // after clearing t-degrees below bound, t <= bound
    Series remainder_mod_p;
    bool routes_agree = false;
};

// φ is the p-typical map b_i -> bp(p). Computed twice: directly from the
// Hazewinkel log, and as the Quillen idempotent followed by the m -> λ rewrite.
// extra_weight widens the working window beyond what the bound needs.
JnResult jn_obstruction(int p, int d, int bound, int extra_weight = 0);

struct RigidityCase {
    int d = 0;
    Series x2_coefficient;  // [x^2] of the commutator, f_1 = d * c
    Series expected;        // g_1(t) * ((2d+1) - R(t))
    Series cleared;         // x2_coefficient / g_1(t)
    bool matches = false;
    Poly t0;                // t^0 coefficient of cleared
};

struct RigidityInduction {
    int n = 0;
    Poly tn;                // t^n coefficient of the cleared constraint
    bool equals_minus_n_fn = false;
};

struct RigidityReport {
    int p = 2;
    int order = 0;
    Series g1;
    bool g1_unit = false;
    Poly c_xy;              // xy coefficient of F
    Series psi_c_xy;        // xy coefficient of g_* F
    bool psi_c_xy_formula = false;  // psi(c) == c + 2 g_1(t)
    bool identity_commutes = false;
    std::vector<RigidityCase> cases;
    bool t0_forces_d_zero = false;
    std::vector<RigidityInduction> induction;
    bool all_passed = false;
};

RigidityReport cyclotomic_rigidity_constraints(int p, int order);

}  // namespace tatefgl
