#include "doctest.h"

#include "tatefgl/ring.hpp"

using namespace tatefgl;

namespace {

// Independent mod-p image of n/d via Fermat inversion on plain integers.
unsigned long naive_mod_p(long long n, long long d, unsigned long p) {
    long long pp = static_cast<long long>(p);
    long long a = ((n % pp) + pp) % pp;
    long long b = ((d % pp) + pp) % pp;
    long long inv = 1;
    for (unsigned long i = 0; i + 2 < p; ++i) inv = (inv * b) % pp;
    return static_cast<unsigned long>((a * inv) % pp);
}

Poly beta_pow(const RingPtr& T, int k, const Rat& c) { return Poly(T, Monomial::gen(*T, GenId::beta(), k), c); }

}  // namespace

TEST_SUITE("ring") {

TEST_CASE("rationals stay in lowest terms") {
    CHECK(Rat(6, 4) == Rat(3, 2));
    CHECK(Rat(-6, -4).str() == "3/2");
    CHECK(Rat::parse("-10/4").str() == "-5/2");
    CHECK_THROWS_AS(Rat::parse("abc"), specification_error);
    CHECK_THROWS_AS(Rat(1, 0), error);
}

TEST_CASE("p-adic valuation and integrality") {
    CHECK(Rat(18, 5).p_valuation(3) == 2);
    CHECK(Rat(5, 18).p_valuation(3) == -2);
    CHECK(Rat(5, 18).p_valuation(5) == 1);
    CHECK(Rat(7, 4).is_p_integral(3));
    CHECK_FALSE(Rat(7, 6).is_p_integral(3));
}

TEST_CASE("mod p agrees with a naive modular inverse") {
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 13ul})
        for (long n = -20; n <= 20; ++n)
            for (long d = 1; d <= 12; ++d) {
                if (d % static_cast<long>(p) == 0) continue;
                CHECK(Rat(n, d).mod_p(p) == naive_mod_p(n, d, p));
            }
    CHECK_THROWS_AS(Rat(1, 3).mod_p(3), integrality_error);
}

TEST_CASE("generator names round-trip") {
    for (GenId g : {GenId::beta(), GenId::b(3), GenId::m(7), GenId::v(2), GenId::f(11)})
        CHECK(GenId::parse(g.name()) == g);
    CHECK(GenId::parse("beta") == GenId::beta());
    CHECK_THROWS_AS(GenId::parse("q_1"), specification_error);
    CHECK_THROWS_AS(GenId::parse("b_0"), specification_error);
}

TEST_CASE("generator weights") {
    auto U = RingSpec::universal(4);
    CHECK(U->weight(GenId::b(3)) == 3);
    CHECK(U->weight(GenId::m(2)) == 2);
    CHECK(U->degree(GenId::b(3)) == -6);
    auto B2 = RingSpec::bp(2, 3);
    CHECK(B2->weight(GenId::v(1)) == 1);
    CHECK(B2->weight(GenId::v(2)) == 3);
    CHECK(B2->weight(GenId::v(3)) == 7);
    auto B3 = RingSpec::bp(3, 2);
    CHECK(B3->weight(GenId::v(2)) == 8);
    CHECK(RingSpec::todd()->weight(GenId::beta()) == 1);
    CHECK_THROWS_AS(U->weight(GenId::b(5)), specification_error);
    CHECK_THROWS_AS(U->weight(GenId::beta()), specification_error);
}

TEST_CASE("polynomial arithmetic") {
    auto U = RingSpec::universal(3);
    Poly b1 = Poly::gen(U, GenId::b(1));
    Poly b2 = Poly::gen(U, GenId::b(2));
    Poly sq = (b1 + b2) * (b1 + b2);
    CHECK(sq == b1 * b1 + (b1 * b2).scaled(Rat(2)) + b2 * b2);
    CHECK((sq - sq).is_zero());
    CHECK(Poly::mul(b1 + b2, b1 + b2, 3) == b1 * b1 + (b1 * b2).scaled(Rat(2)));
    CHECK((b1 + b2).pow(3, kNoCap) == (b1 + b2) * sq);
    CHECK(sq.truncated(2) == b1 * b1);
    CHECK(sq.min_weight() == 2);
    CHECK(sq.max_weight() == 4);
}

TEST_CASE("degree of homogeneous polynomials") {
    auto T = RingSpec::todd();
    CHECK(beta_pow(T, 2, Rat(5)).degree() == -4);
    CHECK_THROWS_AS((beta_pow(T, 2, Rat(1)) + beta_pow(T, 1, Rat(1))).degree(), inhomogeneity_error);
    CHECK_THROWS_AS(Poly(T).degree(), specification_error);
}

TEST_CASE("polynomial reduction mod p") {
    auto T = RingSpec::todd();
    // 37570767 = 3 * 12523589: the isolated coefficient vanishes mod 3.
    CHECK(beta_pow(T, 10, Rat::parse("-37570767/6400")).mod_p(3).is_zero());
    CHECK(beta_pow(T, 10, Rat::parse("-1158538511/179200")).mod_p(3) == beta_pow(T, 10, Rat(1)));
    CHECK(beta_pow(T, 3, Rat(9, 2)).mod_p(3).is_zero());
    CHECK(beta_pow(T, 3, Rat(-1, 2)).mod_p(3) == beta_pow(T, 3, Rat(1)));
    CHECK_FALSE(beta_pow(T, 1, Rat(1, 3)).is_p_integral(3));
    CHECK_THROWS_AS(beta_pow(T, 1, Rat(1, 3)).mod_p(3), integrality_error);
}

TEST_CASE("rendering") {
    auto T = RingSpec::todd();
    CHECK(beta_pow(T, 3, Rat(-1215, 8)).str() == "-1215/8*β^3");
    auto U = RingSpec::universal(2);
    Poly p = Poly::gen(U, GenId::b(1)).pow(2, kNoCap).scaled(Rat(4)) - Poly::gen(U, GenId::b(2)).scaled(Rat(6));
    CHECK(p.str(" ") == "4 b_1^2 - 6 b_2");
}

TEST_CASE("mixing rings is rejected") {
    Poly a = Poly::gen(RingSpec::todd(), GenId::beta());
    Poly b = Poly::gen(RingSpec::universal(1), GenId::b(1));
    CHECK_THROWS_AS(a + b, specification_error);
}

}
