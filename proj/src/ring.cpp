#include "tatefgl/ring.hpp"

#include <algorithm>
#include <sstream>

namespace tatefgl {

Rat::Rat(long n, long d) {
    if (d == 0) throw division_error("rational with zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rat Rat::parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw specification_error("not a rational: " + s);
    if (q.get_den() == 0) throw division_error("rational with zero denominator: " + s);
    q.canonicalize();
    return Rat(q);
}

std::string Rat::str() const { return q_.get_str(); }

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw division_error("division of a rational by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

long valuation(const mpz_class& z, unsigned long p) {
    if (z == 0) return 0;
    mpz_class r = z;
    long v = 0;
    while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
        ++v;
    }
    return v;
}

}  // namespace

long Rat::p_valuation(unsigned long p) const {
    if (is_zero()) throw specification_error("valuation of zero");
    return valuation(q_.get_num(), p) - valuation(q_.get_den(), p);
}

bool Rat::is_p_integral(unsigned long p) const {
    return mpz_divisible_ui_p(q_.get_den_mpz_t(), p) == 0;
}

unsigned long Rat::mod_p(unsigned long p) const {
    if (!is_p_integral(p)) {
        throw integrality_error("denominator of " + str() + " is divisible by " + std::to_string(p));
    }
    mpz_class n = q_.get_num() % p;
    if (n < 0) n += p;
    mpz_class d = q_.get_den() % p;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mpz_class(p).get_mpz_t());
    mpz_class r = (n * inv) % p;
    return r.get_ui();
}

std::string GenId::name() const {
    switch (kind) {
        case GenKind::beta: return "β";
        case GenKind::b: return "b_" + std::to_string(index);
        case GenKind::m: return "m_" + std::to_string(index);
        case GenKind::v: return "v_" + std::to_string(index);
        case GenKind::f: return "f_" + std::to_string(index);
    }
    return "?";
}

GenId GenId::parse(const std::string& s) {
    if (s == "β" || s == "beta") return beta();
    if (s.size() < 3 || s[1] != '_') throw specification_error("unknown generator: " + s);
    int i = 0;
    try {
        i = std::stoi(s.substr(2));
    } catch (const std::exception&) {
        throw specification_error("unknown generator: " + s);
    }
    if (i < 1 || i > 0xffff) throw specification_error("generator index out of range: " + s);
    switch (s[0]) {
        case 'b': return b(i);
        case 'm': return m(i);
        case 'v': return v(i);
        case 'f': return f(i);
        default: throw specification_error("unknown generator: " + s);
    }
}

RingSpec::RingSpec(RingLabel label, int prime, int max_index)
    : label_(label), prime_(prime), max_index_(max_index) {
    switch (label) {
        case RingLabel::universal:
            for (int i = 1; i <= max_index; ++i) gens_.push_back(GenId::b(i));
            for (int i = 1; i <= max_index; ++i) gens_.push_back(GenId::m(i));
            break;
        case RingLabel::todd: gens_.push_back(GenId::beta()); break;
        case RingLabel::additive: break;
        case RingLabel::bp:
            for (int i = 1; i <= max_index; ++i) gens_.push_back(GenId::v(i));
            break;
        case RingLabel::rigidity:
            for (int i = 1; i <= max_index; ++i) gens_.push_back(GenId::b(i));
            for (int i = 1; i <= max_index; ++i) gens_.push_back(GenId::f(i));
            break;
    }
}

RingPtr RingSpec::universal(int max_index) {
    if (max_index < 1) throw specification_error("universal ring needs max index >= 1");
    return RingPtr(new RingSpec(RingLabel::universal, 0, max_index));
}

RingPtr RingSpec::todd() { return RingPtr(new RingSpec(RingLabel::todd, 0, 1)); }

RingPtr RingSpec::additive() { return RingPtr(new RingSpec(RingLabel::additive, 0, 1)); }

RingPtr RingSpec::bp(int p, int max_index) {
    if (p < 2) throw specification_error("bp ring needs a prime");
    if (max_index < 1) throw specification_error("bp ring needs max index >= 1");
    return RingPtr(new RingSpec(RingLabel::bp, p, max_index));
}

RingPtr RingSpec::rigidity(int p, int max_index) {
    if (max_index < 1) throw specification_error("rigidity ring needs max index >= 1");
    return RingPtr(new RingSpec(RingLabel::rigidity, p, max_index));
}

std::string RingSpec::name() const {
    switch (label_) {
        case RingLabel::universal: return "universal-MU";
        case RingLabel::todd: return "todd-ku";
        case RingLabel::additive: return "additive";
        case RingLabel::bp: return "bp(" + std::to_string(prime_) + ")";
        case RingLabel::rigidity: return "rigidity(" + std::to_string(prime_) + ")";
    }
    return "?";
}

bool RingSpec::has(GenId g) const {
    return std::find(gens_.begin(), gens_.end(), g) != gens_.end();
}

int RingSpec::weight(GenId g) const {
    if (!has(g)) throw specification_error("generator " + g.name() + " not in ring " + name());
    if (g.kind == GenKind::beta) return 1;
    if (g.kind == GenKind::v) {
        long w = 1;
        for (int i = 0; i < g.index; ++i) w *= prime_;
        return static_cast<int>(w - 1);
    }
    return g.index;
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
    if (!same_ring(a, b)) {
        std::string an = a ? a->name() : "none";
        std::string bn = b ? b->name() : "none";
        throw specification_error(std::string(where) + ": ring mismatch (" + an + " vs " + bn + ")");
    }
}

Monomial::Monomial(const RingSpec& ring, std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
    for (auto& [g, e] : factors) {
        if (e < 0) throw specification_error("negative generator exponent");
        if (e == 0) continue;
        if (!f_.empty() && f_.back().first == g) {
            f_.back().second += e;
        } else {
            f_.emplace_back(g, e);
        }
        weight_ += ring.weight(g) * e;
    }
}

Monomial Monomial::gen(const RingSpec& ring, GenId g, int e) { return Monomial(ring, {{g, e}}); }

int Monomial::exponent(GenId g) const {
    for (const auto& [h, e] : f_)
        if (h == g) return e;
    return 0;
}

std::string Monomial::str(const char* sep) const {
    std::string out;
    for (const auto& [g, e] : f_) {
        if (!out.empty()) out += sep;
        out += g.name();
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.weight_ = a.weight_ + b.weight_;
    r.f_.reserve(a.f_.size() + b.f_.size());
    auto i = a.f_.begin();
    auto j = b.f_.begin();
    while (i != a.f_.end() && j != b.f_.end()) {
        if (i->first < j->first) {
            r.f_.push_back(*i++);
        } else if (j->first < i->first) {
            r.f_.push_back(*j++);
        } else {
            r.f_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    r.f_.insert(r.f_.end(), i, a.f_.end());
    r.f_.insert(r.f_.end(), j, b.f_.end());
    return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
    if (a.weight_ != b.weight_) return a.weight_ < b.weight_;
    size_t n = std::min(a.f_.size(), b.f_.size());
    for (size_t k = 0; k < n; ++k) {
        const auto& fa = a.f_[k];
        const auto& fb = b.f_[k];
        if (fa.first == fb.first) {
            if (fa.second != fb.second) return fa.second > fb.second;
            continue;
        }
        // The one carrying the earlier generator has the larger exponent there.
        return fa.first < fb.first;
    }
    return a.f_.size() < b.f_.size();
}

Poly::Poly(RingPtr ring, const Rat& c) : ring_(std::move(ring)) {
    if (!c.is_zero()) t_.emplace_back(Monomial(), c);
}

Poly::Poly(RingPtr ring, const Monomial& m, const Rat& c) : ring_(std::move(ring)) {
    if (!c.is_zero()) t_.emplace_back(m, c);
}

Poly Poly::gen(RingPtr ring, GenId g, const Rat& c) {
    Monomial m = Monomial::gen(*ring, g);
    return Poly(std::move(ring), m, c);
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
    Poly r(std::move(ring));
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& t : terms) {
        if (!r.t_.empty() && r.t_.back().first == t.first) {
            r.t_.back().second += t.second;
            if (r.t_.back().second.is_zero()) r.t_.pop_back();
        } else if (!t.second.is_zero()) {
            r.t_.push_back(std::move(t));
        }
    }
    return r;
}

Rat Poly::constant_term() const {
    if (!t_.empty() && t_[0].first.is_one()) return t_[0].second;
    return Rat(0);
}

Rat Poly::coeff(const Monomial& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& t, const Monomial& k) { return t.first < k; });
    if (it != t_.end() && it->first == m) return it->second;
    return Rat(0);
}

int Poly::min_weight() const { return t_.empty() ? kNoCap : t_.front().first.weight(); }
int Poly::max_weight() const { return t_.empty() ? -1 : t_.back().first.weight(); }

int Poly::degree() const {
    if (t_.empty()) throw specification_error("degree of the zero polynomial");
    int w = t_.front().first.weight();
    if (t_.back().first.weight() != w) {
        throw inhomogeneity_error("inhomogeneous polynomial: degrees " + std::to_string(-2 * w) + " and " +
                                  std::to_string(-2 * t_.back().first.weight()));
    }
    return -2 * w;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.second = -t.second;
    return r;
}

std::vector<Poly::Term> Poly::merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
    std::vector<Term> r;
    r.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first)) {
            r.push_back(*i++);
        } else if (i == a.end() || j->first < i->first) {
            r.emplace_back(j->first, subtract ? -j->second : j->second);
            ++j;
        } else {
            Rat c = subtract ? i->second - j->second : i->second + j->second;
            if (!c.is_zero()) r.emplace_back(i->first, std::move(c));
            ++i;
            ++j;
        }
    }
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.t_.empty()) {
        if (!ring_) ring_ = o.ring_;
        return *this;
    }
    if (!ring_) ring_ = o.ring_;
    require_same_ring(ring_, o.ring_, "poly add");
    if (t_.empty()) {
        t_ = o.t_;
        return *this;
    }
    t_ = merge(t_, o.t_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (!ring_) ring_ = o.ring_;
    if (o.t_.empty()) return *this;
    require_same_ring(ring_, o.ring_, "poly subtract");
    t_ = merge(t_, o.t_, true);
    return *this;
}

Poly Poly::scaled(const Rat& c) const {
    Poly r(ring_);
    if (c.is_zero()) return r;
    r.t_.reserve(t_.size());
    for (const auto& [m, q] : t_) r.t_.emplace_back(m, q * c);
    return r;
}

Poly Poly::truncated(int cap) const {
    Poly r(ring_);
    for (const auto& t : t_) {
        if (t.first.weight() > cap) break;
        r.t_.push_back(t);
    }
    return r;
}

Poly Poly::mul(const Poly& a, const Poly& b, int cap) {
    require_same_ring(a.ring_, b.ring_, "poly multiply");
    Poly r(a.ring_ ? a.ring_ : b.ring_);
    if (a.t_.empty() || b.t_.empty()) return r;
    if (a.t_.size() == 1 && b.t_.size() == 1) {
        const auto& [ma, ca] = a.t_[0];
        const auto& [mb, cb] = b.t_[0];
        if (ma.weight() + mb.weight() <= cap) r.t_.emplace_back(ma * mb, ca * cb);
        return r;
    }
    std::vector<Term> prods;
    prods.reserve(a.t_.size() * b.t_.size());
    for (const auto& [ma, ca] : a.t_) {
        if (ma.weight() + b.t_.front().first.weight() > cap) break;
        for (const auto& [mb, cb] : b.t_) {
            if (ma.weight() + mb.weight() > cap) break;
            prods.emplace_back(ma * mb, ca * cb);
        }
    }
    std::sort(prods.begin(), prods.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    for (auto& t : prods) {
        if (!r.t_.empty() && r.t_.back().first == t.first) {
            r.t_.back().second += t.second;
        } else {
            if (!r.t_.empty() && r.t_.back().second.is_zero()) r.t_.pop_back();
            r.t_.push_back(std::move(t));
        }
    }
    if (!r.t_.empty() && r.t_.back().second.is_zero()) r.t_.pop_back();
    return r;
}

Poly operator*(const Poly& a, const Poly& b) { return Poly::mul(a, b, kNoCap); }

Poly Poly::pow(int e, int cap) const {
    if (e < 0) throw specification_error("negative power of a polynomial");
    Poly r(ring_, Rat(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) r = mul(r, base, cap);
        e >>= 1;
        if (e) base = mul(base, base, cap);
    }
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    if (!a.t_.empty() && !same_ring(a.ring_, b.ring_)) return false;
    for (size_t k = 0; k < a.t_.size(); ++k) {
        if (!(a.t_[k].first == b.t_[k].first) || !(a.t_[k].second == b.t_[k].second)) return false;
    }
    return true;
}

Poly Poly::mod_p(unsigned long p) const {
    Poly r(ring_);
    for (const auto& [m, c] : t_) {
        unsigned long v = c.mod_p(p);
        if (v != 0) r.t_.emplace_back(m, Rat(static_cast<long>(v)));
    }
    return r;
}

bool Poly::is_p_integral(unsigned long p) const {
    for (const auto& t : t_)
        if (!t.second.is_p_integral(p)) return false;
    return true;
}

std::string Poly::str(const char* sep) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        Rat a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        if (m.is_one()) {
            os << a.str();
        } else if (a.is_one()) {
            os << m.str(sep);
        } else {
            os << a.str() << sep << m.str(sep);
        }
    }
    return os.str();
}

}  // namespace tatefgl
