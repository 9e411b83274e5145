#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tatefgl/error.hpp"

namespace tatefgl {

// Exact rational, always in lowest terms (mpq_class canonicalizes).
class Rat {
public:
    Rat() = default;
    Rat(long n) : q_(n) {}
    Rat(long n, long d);
    explicit Rat(mpq_class q);

    static Rat parse(const std::string& s);

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_one() const { return q_ == 1; }

    const mpq_class& value() const { return q_; }
    std::string num_str() const { return q_.get_num().get_str(); }
    std::string den_str() const { return q_.get_den().get_str(); }
    std::string str() const;

    // v_p(num) - v_p(den); the value must be nonzero.
    long p_valuation(unsigned long p) const;
    bool is_p_integral(unsigned long p) const;
    // Image in Z/p, in [0, p). Throws integrality_error if p divides the denominator.
    unsigned long mod_p(unsigned long p) const;

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }

private:
    mpq_class q_;
};

enum class GenKind : std::uint8_t { beta = 0, b = 1, m = 2, v = 3, f = 4 };

struct GenId {
    GenKind kind = GenKind::beta;
    std::uint16_t index = 0;  // 0 for beta, >= 1 otherwise

    static GenId beta() { return {GenKind::beta, 0}; }
    static GenId b(int i) { return {GenKind::b, static_cast<std::uint16_t>(i)}; }
    static GenId m(int i) { return {GenKind::m, static_cast<std::uint16_t>(i)}; }
    static GenId v(int i) { return {GenKind::v, static_cast<std::uint16_t>(i)}; }
    static GenId f(int i) { return {GenKind::f, static_cast<std::uint16_t>(i)}; }

    std::uint32_t key() const { return (static_cast<std::uint32_t>(kind) << 16) | index; }
    std::string name() const;
    static GenId parse(const std::string& s);

    friend bool operator==(GenId a, GenId b) { return a.key() == b.key(); }
    friend bool operator<(GenId a, GenId b) { return a.key() < b.key(); }
};

enum class RingLabel { universal, todd, additive, bp, rigidity };

class RingSpec;
using RingPtr = std::shared_ptr<const RingSpec>;

// The graded generator set of a coefficient ring. Weight of a generator is
// minus half its degree: β and b_i, m_i, f_i have weight 1, i, i, i and
// v_i has weight p^i - 1.
class RingSpec {
public:
    static RingPtr universal(int max_index);
    static RingPtr todd();
    static RingPtr additive();
    static RingPtr bp(int p, int max_index);
    static RingPtr rigidity(int p, int max_index);

    RingLabel label() const { return label_; }
    int prime() const { return prime_; }
    int max_index() const { return max_index_; }
    const std::vector<GenId>& generators() const { return gens_; }
    std::string name() const;

    bool has(GenId g) const;
    int weight(GenId g) const;
    int degree(GenId g) const { return -2 * weight(g); }

    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.label_ == b.label_ && a.prime_ == b.prime_ && a.max_index_ == b.max_index_;
    }

private:
    RingSpec(RingLabel label, int prime, int max_index);

    RingLabel label_;
    int prime_ = 0;
    int max_index_ = 0;
    std::vector<GenId> gens_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);

// A product of generator powers, kept sorted by generator.
class Monomial {
public:
    using Factor = std::pair<GenId, int>;

    Monomial() = default;
    Monomial(const RingSpec& ring, std::vector<Factor> factors);
    static Monomial gen(const RingSpec& ring, GenId g, int e = 1);

    const std::vector<Factor>& factors() const { return f_; }
    int weight() const { return weight_; }
    int degree() const { return -2 * weight_; }
    bool is_one() const { return f_.empty(); }
    int exponent(GenId g) const;

    std::string str(const char* sep = "*") const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
    // Graded order: lower weight first, then larger exponent on earlier generators.
    friend bool operator<(const Monomial& a, const Monomial& b);

private:
    std::vector<Factor> f_;
    int weight_ = 0;
};

// Sparse polynomial over Q in the generators of a RingSpec.
class Poly {
public:
    using Term = std::pair<Monomial, Rat>;

    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}
    Poly(RingPtr ring, const Rat& c);
    Poly(RingPtr ring, const Monomial& m, const Rat& c);
    static Poly gen(RingPtr ring, GenId g, const Rat& c = Rat(1));
    static Poly from_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.is_one()); }
    Rat constant_term() const;
    Rat coeff(const Monomial& m) const;
    int min_weight() const;
    int max_weight() const;

    // Common degree of all terms; throws on zero or inhomogeneous input.
    int degree() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly scaled(const Rat& c) const;
    // Drops every monomial of weight above cap.
    Poly truncated(int cap) const;
    Poly pow(int e, int cap) const;

    static Poly mul(const Poly& a, const Poly& b, int cap);

    // Coefficients reduced to {1, ..., p-1}, zero terms dropped.
    Poly mod_p(unsigned long p) const;
    bool is_p_integral(unsigned long p) const;

    std::string str(const char* sep = "*") const;

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b);

private:
    static std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract);

    RingPtr ring_;
    std::vector<Term> t_;  // sorted by Monomial order, no zero coefficients
};

constexpr int kNoCap = 1 << 28;

// Weight-degree conversion for reporting.
inline int weight_to_degree(int w) { return -2 * w; }

}  // namespace tatefgl
