#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tatefgl/fgl.hpp"

namespace tatefgl {

struct SharpSpec {
    std::vector<int> weights;
    // Compare modulo [p]_F(t) rather than in A((t)).
    bool mod_p_series = false;

    static SharpSpec frobenius(int p);
};

struct FrobAction {
    int p = 0;
    CoefficientRule rule;
    // Universal case only: Fr(m_d) before and after clearing negative t-degrees
    // by long division by [p]_F(t).
    std::map<int, Series> fr_m;
    std::map<int, Series> reduced;
};

// x * prod_i (x +_F [a_i](t)) / [a_i](t), in F's window.
Series sharp_coordinate(const Fgl& F, const SharpSpec& spec);
Series frobenius_coordinate(const Fgl& F, int p);

// prod_{k=1}^{p-1} [k]_F(t); the leading term (p-1)! t^{p-1} is checked.
Series euler_chi(const Fgl& F, int p);

// β -> p β on the todd ring.
FrobAction todd_frobenius_action(const RingPtr& todd, int p, const Trunc& w);

// Over the universal ring with generators up to weight_cap: m_d -> (d+1) *
// [x^{d+1}] (log_u o f_Fr^{-1}) and b_i -> [x^{i+1}] (f_Fr o exp_u).
FrobAction frobenius_on_coefficients(int p, int d_max, int weight_cap);
FrobAction frobenius_on_coefficients(const Fgl& universal_law, int p, int d_max);

// Is a - b a multiple of pseries with p-integral quotient, in t-degrees <= t_max?
bool congruent_mod_p_series(const Series& a, const Series& b, const Series& pseries, int p, int t_max);

// Compares the Frobenius coordinate with its substitution t -> [j]_F(t) on
// x-degrees <= x_max and t-degrees <= t_max.
bool fpx_invariance_check(const Fgl& F, int p, int j, bool mod_p_series, int x_max, int t_max);

// Total operation on x: the sharp coordinate with weights 1..p-1, unreduced.
Series steenrod_total(const Fgl& F, int p);
// P^{-i}(x): the coefficient of t^i.
Series steenrod_component(const Series& total, int i);

// Coefficient action of the total operation with variable v on F's exp
// coefficients (b_i for universal, β for todd); inert on the other variables.
CoefficientRule total_operation_rule(const Fgl& F, Var v);
// Total operation (variable v) applied to a series in x.
Series total_operation(const Fgl& F, const CoefficientRule& rule, const Series& alpha, Var v);

struct BmOrdering {
    std::string name;
    Series lhs;
    Series rhs;
    Series difference;
    bool equal = false;
    std::optional<Series> difference_mod_p;  // empty when not p-integral
    std::optional<bool> equal_mod_p;
};

struct BmEntry {
    int k = 0;
    int clearing_exponent = 0;
    std::vector<BmOrdering> orderings;
};

struct BmReport {
    std::string interpretation;
    int p = 2;
    std::string fgl;
    int x_max = 0;
    int weight_cap = 0;
    std::vector<BmEntry> entries;
};

// Evaluates both sides of the Bullett-MacDonald-type identity on x^k, k <= k_max,
// in x-degrees <= x_max. F must carry an s-window (see fgl_window).
BmReport bullett_macdonald_experiment(const Fgl& F, int p, int k_max, int x_max);

}  // namespace tatefgl
