#include "tatefgl/json_io.hpp"

namespace tatefgl {

namespace {

const char* label_name(RingLabel l) {
    switch (l) {
        case RingLabel::universal: return "universal";
        case RingLabel::todd: return "todd";
        case RingLabel::additive: return "additive";
        case RingLabel::bp: return "bp";
        case RingLabel::rigidity: return "rigidity";
    }
    return "?";
}

json opt_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json n_value(const std::optional<int>& n) { return n ? json(*n) : json("inf"); }

}  // namespace

json poly_to_json(const Poly& p) {
    json arr = json::array();
    for (const auto& [m, c] : p.terms()) {
        json mono = json::object();
        for (const auto& [g, e] : m.factors()) mono[g.name()] = e;
        arr.push_back({{"monomial", mono}, {"num", c.num_str()}, {"den", c.den_str()}});
    }
    return arr;
}

Poly poly_from_json(const RingPtr& ring, const json& j) {
    if (!j.is_array()) throw specification_error("polynomial JSON must be an array");
    Poly out(ring);
    for (const json& t : j) {
        std::vector<Monomial::Factor> fs;
        for (const auto& [name, e] : t.at("monomial").items()) {
            GenId g = GenId::parse(name);
            if (!ring->has(g)) throw specification_error("generator " + name + " not in ring " + ring->name());
            fs.emplace_back(g, e.get<int>());
        }
        Rat c = Rat::parse(t.at("num").get<std::string>() + "/" + t.at("den").get<std::string>());
        out += Poly(ring, Monomial(*ring, std::move(fs)), c);
    }
    return out;
}

json series_to_json(const Series& s) {
    json arr = json::array();
    for (const auto& [e, c] : s.terms()) {
        arr.push_back({{"x_exp", e.x}, {"y_exp", e.y}, {"t_exp", e.t}, {"s_exp", e.s}, {"poly", poly_to_json(c)}});
    }
    return arr;
}

Series series_from_json(const RingPtr& ring, const Trunc& w, const json& j) {
    if (!j.is_array()) throw specification_error("series JSON must be an array");
    Series out(ring, w);
    for (const json& t : j) {
        Exps e{t.at("x_exp").get<int>(), t.at("y_exp").get<int>(), t.at("t_exp").get<int>(),
               t.at("s_exp").get<int>()};
        out.add_term(e, poly_from_json(ring, t.at("poly")));
    }
    return out;
}

json trunc_to_json(const Trunc& w) {
    return {{"x_max", w.x_max}, {"y_max", w.y_max}, {"t_min", w.t_min}, {"t_max", w.t_max},
            {"s_min", w.s_min}, {"s_max", w.s_max}, {"weight_cap", w.weight_cap}};
}

Trunc trunc_from_json(const json& j) {
    Trunc w;
    w.x_max = j.at("x_max").get<int>();
    w.y_max = j.value("y_max", 0);
    w.t_min = j.value("t_min", 0);
    w.t_max = j.value("t_max", 0);
    w.s_min = j.value("s_min", 0);
    w.s_max = j.value("s_max", 0);
    w.weight_cap = j.value("weight_cap", kNoCap);
    w.validate();
    return w;
}

json ring_to_json(const RingSpec& r) {
    return {{"label", label_name(r.label())}, {"prime", r.prime()}, {"max_index", r.max_index()}};
}

RingPtr ring_from_json(const json& j) {
    std::string l = j.at("label").get<std::string>();
    int p = j.value("prime", 0);
    int n = j.value("max_index", 1);
    if (l == "universal") return RingSpec::universal(n);
    if (l == "todd") return RingSpec::todd();
    if (l == "additive") return RingSpec::additive();
    if (l == "bp") return RingSpec::bp(p, n);
    if (l == "rigidity") return RingSpec::rigidity(p, n);
    throw specification_error("unknown ring label: " + l);
}

json fgl_to_json(const Fgl& F) {
    return {{"kind", fgl_kind_name(F.kind)},
            {"label", F.label},
            {"ring", ring_to_json(*F.ring())},
            {"window", trunc_to_json(F.trunc())},
            {"law", series_to_json(F.law)}};
}

Fgl fgl_from_json(const json& j) {
    RingPtr R = ring_from_json(j.at("ring"));
    Trunc w = trunc_from_json(j.at("window"));
    Fgl F;
    std::string kind = j.at("kind").get<std::string>();
    F.kind = kind == "pushforward" ? FglKind::pushforward : parse_fgl_kind(kind);
    F.label = j.value("label", kind);
    F.law = series_from_json(R, w, j.at("law"));
    return F;
}

json verdict_to_json(const ObstructionVerdict& v) {
    json slices = json::array();
    for (const VerdictSlice& s : v.slices) {
        slices.push_back({{"x_degree", s.x_degree},
                          {"laurent_coefficient", series_to_json(s.laurent_coefficient)},
                          {"remainder", series_to_json(s.remainder)},
                          {"remainder_terms", series_to_json(s.remainder_mod_p)},
                          {"blocked_degree", opt_int(s.blocked_degree)}});
    }
    return {{"p", v.p},
            {"n", n_value(v.n)},
            {"tbd", v.tbd},
            {"slices", slices},
            {"first_failure", opt_int(v.first_failure)},
            {"excluded_n", v.excluded ? n_value(v.n) : json(nullptr)}};
}

json jn_to_json(const JnResult& r) {
    return {{"p", r.p},
            {"d", r.d},
            {"bound", r.bound},
            {"weight_cap", r.weight_cap},
            {"fr_m", series_to_json(r.fr_m)},
            {"jn", series_to_json(r.jn)},
            {"p_series", series_to_json(r.pseries)},
            {"remainder", series_to_json(r.remainder)},
            {"remainder_mod_p", series_to_json(r.remainder_mod_p)},
            {"routes_agree", r.routes_agree}};
}

json rigidity_to_json(const RigidityReport& r) {
    json cases = json::array();
    for (const RigidityCase& c : r.cases) {
        cases.push_back({{"d", c.d},
                         {"x2_coefficient", series_to_json(c.x2_coefficient)},
                         {"expected", series_to_json(c.expected)},
                         {"cleared", series_to_json(c.cleared)},
                         {"matches", c.matches},
                         {"t0", poly_to_json(c.t0)}});
    }
    json ind = json::array();
    for (const RigidityInduction& s : r.induction) {
        ind.push_back({{"n", s.n}, {"tn", poly_to_json(s.tn)}, {"equals_minus_n_fn", s.equals_minus_n_fn}});
    }
    return {{"p", r.p},
            {"order", r.order},
            {"g1", series_to_json(r.g1)},
            {"g1_unit", r.g1_unit},
            {"c_xy", poly_to_json(r.c_xy)},
            {"psi_c_xy", series_to_json(r.psi_c_xy)},
            {"psi_c_xy_formula", r.psi_c_xy_formula},
            {"identity_commutes", r.identity_commutes},
            {"cases", cases},
            {"t0_forces_d_zero", r.t0_forces_d_zero},
            {"induction", ind},
            {"all_passed", r.all_passed}};
}

json bm_to_json(const BmReport& r) {
    json entries = json::array();
    for (const BmEntry& e : r.entries) {
        json ords = json::array();
        for (const BmOrdering& o : e.orderings) {
            ords.push_back({{"name", o.name},
                            {"lhs", series_to_json(o.lhs)},
                            {"rhs", series_to_json(o.rhs)},
                            {"difference", series_to_json(o.difference)},
                            {"equal", o.equal},
                            {"difference_mod_p",
                             o.difference_mod_p ? series_to_json(*o.difference_mod_p) : json(nullptr)},
                            {"equal_mod_p", o.equal_mod_p ? json(*o.equal_mod_p) : json(nullptr)}});
        }
        entries.push_back({{"k", e.k}, {"clearing_exponent", e.clearing_exponent}, {"orderings", ords}});
    }
    return {{"interpretation", r.interpretation},
            {"p", r.p},
            {"fgl", r.fgl},
            {"x_max", r.x_max},
            {"weight_cap", r.weight_cap},
            {"entries", entries}};
}

}  // namespace tatefgl
