#include "tatefgl/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tatefgl {

namespace {

const char* kDot = "·";

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

std::string n_text(const std::optional<int>& n) { return n ? std::to_string(*n) : "inf"; }

std::string t_power(int k) {
    if (k == 0) return "1";
    if (k == 1) return "t";
    return "t^" + std::to_string(k);
}

std::string x_power(int k) { return k == 1 ? "x" : "x^" + std::to_string(k); }

int default_x_bound(const RunConfig& c) {
    if (c.x_bound) return *c.x_bound;
    if (c.command == "obstruct") return c.prime * c.prime * c.prime;
    return 2 * c.prime;
}

std::string ring_or(const RunConfig& c, const char* dflt) { return c.ring.empty() ? dflt : c.ring; }

void validate(const RunConfig& c) {
    if (c.command.empty()) throw specification_error("no command given");
    if (!is_prime(c.prime)) throw specification_error(std::to_string(c.prime) + " is not a prime");
    if (c.n && *c.n < 1) throw specification_error("n must be at least 1");
    if (c.x_bound && *c.x_bound < 1) throw specification_error("x-bound must be positive");
    if (c.t_bound && *c.t_bound < 0) throw specification_error("t-bound must be nonnegative");
    if (c.output != "text" && c.output != "json") throw specification_error("output must be text or json");
}

// Output window: x <= x_bound, t in [t_min, t_bound], inside the law's window.
Trunc report_window(const Trunc& work, int x_bound, int t_min, int t_bound) {
    Trunc w = work;
    w.x_max = x_bound;
    w.y_max = 0;
    w.t_min = t_min;
    w.t_max = t_bound;
    return w;
}

Series restrict_report(const Series& s, int x_bound, int t_bound) {
    Trunc w = s.trunc();
    w.x_max = std::min(w.x_max, x_bound);
    w.y_max = 0;
    w.t_max = std::min(w.t_max, t_bound);
    return s.restrict(w);
}

Fgl law_for(const std::string& ring, int cap) {
    Trunc w = fgl_window(cap);
    if (ring == "todd") return fgl_make(FglKind::todd, RingSpec::todd(), w);
    if (ring == "universal") return fgl_make(FglKind::universal, RingSpec::universal(std::max(cap, 1)), w);
    if (ring == "additive" || ring == "fp") return fgl_make(FglKind::additive, RingSpec::additive(), w);
    throw specification_error("unknown ring '" + ring + "'");
}

struct Outcome {
    int code = kExitOk;
    json report;
    std::string text;
};

Outcome do_obstruct(const RunConfig& c) {
    int p = c.prime;
    int xb = default_x_bound(c);
    int tb = c.t_bound ? *c.t_bound : (c.n ? en_vanishing_bound(p, c.n, 0) : p + 1);
    std::string ring = ring_or(c, "todd");
    OrientationData data = make_orientation(c.orientation, parse_fgl_kind(ring), p, xb, tb);
    Trunc w = report_window(data.base_fgl.trunc(), xb, -xb, tb);
    ObstructionVerdict v = en_verdict(data, c.n, w);

    Outcome o;
    o.report = verdict_to_json(v);
    o.report["orientation"] = c.orientation;
    o.report["ring"] = ring;
    o.report["x_bound"] = xb;
    o.report["t_window"] = {-xb, tb};
    std::ostringstream os;
    os << "obstruction series: p=" << p << ", n=" << n_text(c.n) << ", orientation=" << c.orientation << " over "
       << ring << ", x <= " << xb << ", t in [" << -xb << ", " << tb << "]\n";
    os << "vanishing bound: t-degrees <= " << v.tbd << "\n";
    for (const VerdictSlice& s : v.slices) {
        if (c.coefficient && s.x_degree == *c.coefficient) {
            os << x_power(s.x_degree) << " coefficient: " << s.laurent_coefficient.str(kDot) << "\n";
        }
    }
    for (const VerdictSlice& s : v.slices) {
        if (s.remainder_mod_p.is_zero()) continue;
        os << x_power(s.x_degree) << ": remainder " << s.remainder_mod_p.str(kDot) << " (mod " << p << ")\n";
    }
    if (v.first_failure) {
        os << "first failure: " << x_power(*v.first_failure) << " (E_" << n_text(c.n) << " excluded)\n";
        o.code = kExitFound;
    } else {
        os << "no obstruction through " << x_power(xb) << "\n";
    }
    o.text = os.str();
    return o;
}

Outcome do_jn(const RunConfig& c) {
    int p = c.prime;
    int bound = c.n ? en_vanishing_bound(p, c.n, 0) : (c.t_bound ? *c.t_bound : 2);
    if (c.t_bound && c.n) bound = std::min(bound, *c.t_bound);
    JnResult r = jn_obstruction(p, c.d, bound);
    Outcome o;
    o.report = jn_to_json(r);
    o.report["n"] = c.n ? json(*c.n) : json("inf");
    std::ostringstream os;
    os << "JN_" << c.d << "(t) at p=" << p << ", n=" << n_text(c.n) << ", t-degrees <= " << bound << "\n";
    os << "JN_" << c.d << "(t) = " << r.jn.str(kDot) << "\n";
    os << "remainder: " << r.remainder_mod_p.str(kDot) << " (mod " << p << ", [" << p << "](t), " << t_power(bound + 1)
       << ")\n";
    os << "Quillen-then-Hazewinkel route agrees with the direct route: " << (r.routes_agree ? "yes" : "no") << "\n";
    if (!r.routes_agree) throw error("the two routes to the p-typical map disagree");
    o.code = r.remainder_mod_p.is_zero() ? kExitOk : kExitFound;
    o.text = os.str();
    return o;
}

Outcome do_frobenius(const RunConfig& c, bool sharp) {
    int p = c.prime;
    std::string ring = ring_or(c, sharp ? "todd" : "fp");
    int xb = std::max(default_x_bound(c), ring == "fp" ? p : 1);
    int tb = c.t_bound ? *c.t_bound : p;
    Fgl F = law_for(ring, xb + tb);
    SharpSpec spec = SharpSpec::frobenius(p);
    if (sharp && !c.weights.empty()) spec.weights = c.weights;
    Series coord = restrict_report(sharp_coordinate(F, spec), xb, tb);

    Outcome o;
    std::ostringstream os;
    json weights = spec.weights;
    o.report = {{"p", p}, {"ring", ring}, {"weights", weights}, {"x_bound", xb}, {"t_bound", tb}};
    if (ring == "fp") {
        Series red = coord.mod_p(static_cast<unsigned long>(p));
        o.report["coordinate_mod_p"] = series_to_json(red);
        os << (sharp ? "sharp" : "Frobenius") << " coordinate over F_" << p << ": " << red.str(kDot) << "\n";
        if (!sharp) {
            Series closed = Series::var(red.ring(), red.trunc(), Var::x);
            closed.add_term(Exps{p, 0, 1 - p, 0}, Poly(red.ring(), Rat(p - 1)));
            bool ok = closed == red;
            std::string tp = t_power(p - 1);
            std::string form = "(x" + std::string(kDot) + tp + " - x^" + std::to_string(p) + ")/" + tp;
            o.report["closed_form"] = form;
            o.report["closed_form_matches"] = ok;
            if (!ok) throw error("Frobenius coordinate over F_p does not match the closed form");
            os << "closed form: " << form << "\n";
        }
    } else {
        o.report["coordinate"] = series_to_json(coord);
        Series chi = restrict_report(euler_chi(F, p), 0, tb + p);
        o.report["euler_class"] = series_to_json(chi);
        os << (sharp ? "sharp" : "Frobenius") << " coordinate (" << ring << ", x <= " << xb << ", t <= " << tb
           << "): " << coord.str(kDot) << "\n";
        os << "Euler class: " << chi.str(kDot) << "\n";
    }
    o.text = os.str();
    return o;
}

Outcome do_fgl(const RunConfig& c) {
    int p = c.prime;
    Fgl F;
    int xb = default_x_bound(c);
    if (!c.input.empty()) {
        std::ifstream in(c.input);
        if (!in) throw error("cannot read " + c.input);
        F = fgl_from_json(json::parse(in));
        xb = std::min(xb, F.trunc().x_max);
    } else {
        F = law_for(ring_or(c, "todd"), xb);
    }
    int cap = F.trunc().weight_cap;
    Outcome o;
    o.report = {{"fgl", fgl_to_json(F)}, {"p", p}};
    std::ostringstream os;
    os << "F(x,y) = " << F.law.str(kDot) << "\n";
    Series pser = restrict_report(k_series(F, p), 0, std::min(cap + 1, kNoCap));
    o.report["p_series"] = series_to_json(pser);
    os << "[" << p << "](t) = " << pser.str(kDot) << "\n";
    if (!F.ring()->generators().empty() || F.kind == FglKind::additive) {
        Series lg = restrict_report(fgl_log(F), xb, 0);
        o.report["log"] = series_to_json(lg);
        os << "log(x) = " << lg.str(kDot) << "\n";
        if (F.kind == FglKind::todd || F.kind == FglKind::universal) {
            Series q = restrict_report(quillen_idempotent_coord(F, p).series, xb, 0);
            o.report["p_typical_coordinate"] = series_to_json(q);
            os << p << "-typical coordinate: " << q.str(kDot) << "\n";
        }
    }
    o.text = os.str();
    return o;
}

Outcome do_rigidity(const RunConfig& c) {
    RigidityReport r = cyclotomic_rigidity_constraints(c.prime, c.order);
    Outcome o;
    o.report = rigidity_to_json(r);
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream os;
    os << "cyclotomic rigidity at p=" << r.p << ", order " << r.order << "\n";
    os << "g_1(t) = " << r.g1.str(kDot) << "\n";
    os << "g_1 is a unit t^-1 + c + O(t), c = xy coefficient " << r.c_xy.str(kDot) << ": " << yn(r.g1_unit) << "\n";
    os << "psi(c) = c + 2 g_1(t): " << yn(r.psi_c_xy_formula) << "\n";
    os << "f = x commutes: " << yn(r.identity_commutes) << "\n";
    for (const RigidityCase& k : r.cases) {
        os << "d=" << k.d << ": x^2 coefficient = g_1(t)((2d+1) - R(t)): " << yn(k.matches)
           << ", t^0 coefficient after clearing g_1: " << k.t0.str(kDot) << "\n";
    }
    os << "t^0 comparison forces d = 0: " << yn(r.t0_forces_d_zero) << "\n";
    for (const RigidityInduction& s : r.induction) {
        os << "first nonzero f_" << s.n << ": t^" << s.n << " coefficient " << s.tn.str(kDot) << " = -" << s.n << " f_"
           << s.n << ": " << yn(s.equals_minus_n_fn) << "\n";
    }
    os << "all checks passed: " << yn(r.all_passed) << "\n";
    o.code = r.all_passed ? kExitOk : kExitFound;
    o.text = os.str();
    return o;
}

Outcome do_bm(const RunConfig& c) {
    std::string ring = ring_or(c, "todd");
    int xb = c.x_bound ? *c.x_bound : 4;
    int tb = c.t_bound ? *c.t_bound : 2;
    int cap = xb + tb;
    Trunc w = fgl_window(cap, true);
    Fgl F;
    if (ring == "todd") F = fgl_make(FglKind::todd, RingSpec::todd(), w);
    else if (ring == "universal") F = fgl_make(FglKind::universal, RingSpec::universal(cap), w);
    else if (ring == "additive") F = fgl_make(FglKind::additive, RingSpec::additive(), w);
    else throw specification_error("unknown ring '" + ring + "'");
    BmReport r = bullett_macdonald_experiment(F, c.prime, c.k_max, xb);
    Outcome o;
    o.report = bm_to_json(r);
    std::ostringstream os;
    os << "Bullett-MacDonald experiment: p=" << r.p << ", " << r.fgl << ", x <= " << r.x_max << ", weight cap "
       << r.weight_cap << "\n";
    os << "interpretation: " << r.interpretation << "\n";
    for (const BmEntry& e : r.entries) {
        for (const BmOrdering& ord : e.orderings) {
            os << "x^" << e.k << " ordering " << ord.name << ": equal " << (ord.equal ? "yes" : "no") << ", mod "
               << r.p << " "
               << (ord.equal_mod_p ? (*ord.equal_mod_p ? "yes" : "no") : std::string("not p-integral"));
            if (!ord.equal) os << ", difference " << ord.difference.str(kDot);
            os << "\n";
        }
    }
    o.text = os.str();
    return o;
}

Outcome dispatch(const RunConfig& c) {
    if (c.command == "obstruct") return do_obstruct(c);
    if (c.command == "jn") return do_jn(c);
    if (c.command == "frobenius") return do_frobenius(c, false);
    if (c.command == "sharp") return do_frobenius(c, true);
    if (c.command == "fgl") return do_fgl(c);
    if (c.command == "rigidity") return do_rigidity(c);
    if (c.command == "bm-experiment") return do_bm(c);
    throw specification_error("unknown command '" + c.command + "'");
}

int do_golden(const RunConfig& c, std::ostream& out) {
    if (c.path.empty()) throw specification_error("golden needs an output path");
    const auto& cases = golden_cases();
    std::vector<std::pair<std::string, std::filesystem::path>> todo;
    if (!c.golden_case.empty()) {
        if (!cases.count(c.golden_case)) throw specification_error("unknown golden case '" + c.golden_case + "'");
        std::filesystem::path p = c.path;
        if (std::filesystem::is_directory(p)) p /= c.golden_case + ".json";
        todo.emplace_back(c.golden_case, p);
    } else {
        std::filesystem::create_directories(c.path);
        for (const auto& [name, cfg] : cases) todo.emplace_back(name, std::filesystem::path(c.path) / (name + ".json"));
    }
    for (const auto& [name, file] : todo) {
        std::string doc = golden_document(name, cases.at(name));
        std::ofstream f(file, std::ios::binary);
        if (!f) throw error("cannot write " + file.string());
        f << doc;
        if (!f) throw error("write failed for " + file.string());
        out << "wrote " << file.string() << "\n";
    }
    return kExitOk;
}

}  // namespace

std::optional<int> parse_n(const std::string& s) {
    if (s == "inf" || s == "infinity" || s == "∞") return std::nullopt;
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw specification_error("bad value for n: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw specification_error("bad value for n: " + s);
    }
}

RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw specification_error("config must be a JSON object");
    RunConfig c;
    for (const auto& [k, v] : j.items()) {
        if (k == "command") c.command = v.get<std::string>();
        else if (k == "prime") c.prime = v.get<int>();
        else if (k == "n") c.n = v.is_string() ? parse_n(v.get<std::string>()) : std::optional<int>(v.get<int>());
        else if (k == "orientation") c.orientation = v.get<std::string>();
        else if (k == "ring") c.ring = v.get<std::string>();
        else if (k == "x_bound" || k == "pow_choice") c.x_bound = v.get<int>();
        else if (k == "t_bound") c.t_bound = v.get<int>();
        else if (k == "output") c.output = v.get<std::string>();
        else if (k == "d") c.d = v.get<int>();
        else if (k == "order") c.order = v.get<int>();
        else if (k == "k_max") c.k_max = v.get<int>();
        else if (k == "weights") c.weights = v.get<std::vector<int>>();
        else if (k == "coefficient") c.coefficient = v.get<int>();
        else if (k == "input") c.input = v.get<std::string>();
        else if (k == "path") c.path = v.get<std::string>();
        else if (k == "case") c.golden_case = v.get<std::string>();
        else throw specification_error("unknown config key '" + k + "'");
    }
    return c;
}

json config_to_json(const RunConfig& c) {
    json j = {{"command", c.command}, {"prime", c.prime}, {"n", c.n ? json(*c.n) : json("inf")},
              {"orientation", c.orientation}, {"output", c.output}};
    if (!c.ring.empty()) j["ring"] = c.ring;
    if (c.x_bound) j["x_bound"] = *c.x_bound;
    if (c.t_bound) j["t_bound"] = *c.t_bound;
    if (c.command == "jn") j["d"] = c.d;
    if (c.command == "rigidity") j["order"] = c.order;
    if (c.command == "bm-experiment") j["k_max"] = c.k_max;
    if (!c.weights.empty()) j["weights"] = c.weights;
    if (c.coefficient) j["coefficient"] = *c.coefficient;
    return j;
}

const std::map<std::string, RunConfig>& golden_cases() {
    static const std::map<std::string, RunConfig> cases = [] {
        std::map<std::string, RunConfig> m;
        auto mk = [](std::string cmd, int p) {
            RunConfig c;
            c.command = std::move(cmd);
            c.prime = p;
            c.output = "json";
            return c;
        };
        RunConfig qi = mk("obstruct", 3);
        qi.x_bound = 27;
        qi.t_bound = 4;
        m["qi_p3"] = qi;

        RunConfig id = mk("obstruct", 3);
        id.orientation = "identity";
        id.x_bound = 12;
        m["identity_p3"] = id;

        for (int d : {2, 4}) {
            RunConfig jn = mk("jn", 2);
            jn.d = d;
            m["jn_p2_d" + std::to_string(d)] = jn;
        }
        for (int p : {2, 3, 5}) {
            RunConfig fr = mk("frobenius", p);
            fr.ring = "fp";
            m["frobenius_fp_p" + std::to_string(p)] = fr;
        }
        RunConfig td = mk("fgl", 3);
        td.ring = "todd";
        td.x_bound = 6;
        m["todd_p3"] = td;

        m["rigidity_p2"] = mk("rigidity", 2);

        RunConfig bm = mk("bm-experiment", 2);
        bm.ring = "todd";
        m["bm_todd_p2"] = bm;
        return m;
    }();
    return cases;
}

std::string golden_document(const std::string& name, const RunConfig& c) {
    RunConfig cj = c;
    cj.output = "json";
    validate(cj);
    Outcome o = dispatch(cj);
    json doc = {{"case", name}, {"config", config_to_json(cj)}, {"exit_code", o.code}, {"report", o.report}};
    return doc.dump(2) + "\n";
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        if (c.command == "golden") return do_golden(c, out);
        validate(c);
        Outcome o = dispatch(c);
        if (c.output == "json") {
            out << o.report.dump(2) << "\n";
        } else {
            out << o.text;
        }
        return o.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace tatefgl
