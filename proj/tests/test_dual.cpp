#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "motsteen/dual.hpp"
#include "motsteen/text.hpp"

using namespace motsteen;

namespace {

GammaElement g_of(std::uint32_t ell, Preset preset, const MilnorMonomial& m)
{
    return GammaElement::from_monomial(ell, preset, m);
}

MilnorMonomial t(std::uint32_t r)
{
    return MilnorMonomial::tau_gen(r);
}

MilnorMonomial x(std::uint32_t r, std::uint32_t e = 1)
{
    return MilnorMonomial::xi_gen(r, e);
}

// Independent oracle: enumerate monomials by bounded exponents and filter by
// bidegree.
std::set<MilnorMonomial> brute_milnor(long long p, long long q, std::uint32_t ell)
{
    std::set<MilnorMonomial> out;
    // indices with generator degree <= p
    std::vector<std::uint32_t> taus, xis;
    for (std::uint32_t r = 0; r <= 6; ++r) {
        if (MilnorMonomial::tau_gen(r).bidegree(ell).p <= p)
            taus.push_back(r);
        if (r >= 1 && MilnorMonomial::xi_gen(r).bidegree(ell).p <= p)
            xis.push_back(r);
    }
    std::vector<MilnorMonomial> frontier{MilnorMonomial()};
    // choose tau subset
    for (std::uint32_t r : taus) {
        std::vector<MilnorMonomial> next = frontier;
        for (const auto& m : frontier) {
            if (m.tau_mask() >> r & 1)
                continue;
            next.push_back(MilnorMonomial::make(m.tau_mask() | (std::uint64_t(1) << r),
                                                m.xi_exps()));
        }
        frontier = std::move(next);
    }
    for (std::uint32_t r : xis) {
        std::vector<MilnorMonomial> next;
        for (const auto& m : frontier) {
            long long gd = MilnorMonomial::xi_gen(r).bidegree(ell).p;
            for (long long e = 0; m.bidegree(ell).p + e * gd <= p; ++e) {
                auto xiv = m.xi_exps();
                if (e > 0) {
                    if (xiv.size() < r)
                        xiv.resize(r, 0);
                    xiv[r - 1] = static_cast<std::uint32_t>(e);
                }
                next.push_back(MilnorMonomial::make(m.tau_mask(), xiv));
            }
        }
        frontier = std::move(next);
    }
    for (const auto& m : frontier)
        if (m.bidegree(ell) == Bidegree{p, q})
            out.insert(m);
    return out;
}

}  // namespace

TEST_CASE("milnor bidegrees")
{
    CHECK(t(2).bidegree(2) == Bidegree{7, 3});
    CHECK(x(1).bidegree(3) == Bidegree{4, 2});
    MilnorMonomial m = MilnorMonomial::make(1, {2});  // tau_0 xi_1^2
    CHECK(m.bidegree(2) == Bidegree{5, 2});
    CHECK(t(0).parity() == 1);
    CHECK(x(1).parity() == 0);
}

TEST_CASE("gamma_multiply pinned examples")
{
    SUBCASE("tau_0^2 in the universal preset")
    {
        GammaElement prod = gamma_multiply(g_of(2, Preset::universal, t(0)),
                                           g_of(2, Preset::universal, t(0)));
        GammaElement expected(2, Preset::universal);
        expected.add_term(x(1), BaseScalar::tau(2, Preset::universal));
        expected.add_term(t(1), BaseScalar::rho(2, Preset::universal));
        expected.add_term(MilnorMonomial::make(1, {1}), BaseScalar::rho(2, Preset::universal));
        CHECK(prod == expected);
    }
    SUBCASE("tau_0^2 = 0 in the closed odd preset")
    {
        CHECK(gamma_multiply(g_of(3, Preset::closed, t(0)), g_of(3, Preset::closed, t(0)))
                  .is_zero());
    }
    SUBCASE("xi_1^2 is a plain square")
    {
        CHECK(gamma_multiply(g_of(2, Preset::closed, x(1)), g_of(2, Preset::closed, x(1))) ==
              g_of(2, Preset::closed, x(1, 2)));
    }
    SUBCASE("tau_0^2 in the closed preset at l = 2 is tau xi_1")
    {
        GammaElement prod =
            gamma_multiply(g_of(2, Preset::closed, t(0)), g_of(2, Preset::closed, t(0)));
        GammaElement expected(2, Preset::closed);
        expected.add_term(x(1), BaseScalar::tau(2, Preset::closed));
        CHECK(prod == expected);
    }
}

TEST_CASE("graded commutativity with Koszul signs")
{
    std::mt19937 rng(31337);
    auto monomials = milnor_monomials_of_degree(0, 3);
    std::vector<MilnorMonomial> pool;
    for (long long d = 0; d <= 14; ++d)
        for (const auto& m : milnor_monomials_of_degree(d, 3))
            pool.push_back(m);
    for (int trial = 0; trial < 200; ++trial) {
        const MilnorMonomial& a = pool[rng() % pool.size()];
        const MilnorMonomial& b = pool[rng() % pool.size()];
        GammaElement ab = gamma_multiply(g_of(3, Preset::closed, a), g_of(3, Preset::closed, b));
        GammaElement ba = gamma_multiply(g_of(3, Preset::closed, b), g_of(3, Preset::closed, a));
        if (a.parity() && b.parity())
            ba = ba.scaled(-BaseScalar::one(3, Preset::closed));
        CHECK(ab == ba);
    }
}

TEST_CASE("degree additivity of gamma products")
{
    // Coefficients act homologically on the dual side: rho and tau shift the
    // bidegree by the negative of their cohomological bidegree. That is what
    // makes the tau_i^2 relation homogeneous.
    std::mt19937 rng(5150);
    std::vector<MilnorMonomial> pool;
    for (long long d = 0; d <= 12; ++d)
        for (const auto& m : milnor_monomials_of_degree(d, 2))
            pool.push_back(m);
    for (int trial = 0; trial < 200; ++trial) {
        const MilnorMonomial& a = pool[rng() % pool.size()];
        const MilnorMonomial& b = pool[rng() % pool.size()];
        Bidegree d = a.bidegree(2) + b.bidegree(2);
        GammaElement ab =
            gamma_multiply(g_of(2, Preset::universal, a), g_of(2, Preset::universal, b));
        for (const auto& [m, c] : ab.terms())
            for (const auto& [k, r] : c.terms()) {
                Bidegree shift = BaseScalar::key_bidegree(k);
                Bidegree got = m.bidegree(2);
                got.p -= shift.p;
                got.q -= shift.q;
                CHECK(got == d);
            }
    }
}

TEST_CASE("coproduct pinned examples")
{
    SUBCASE("Delta(xi_1) is primitive")
    {
        TensorElement d = coproduct(g_of(2, Preset::closed, x(1)));
        TensorElement expected(2, Preset::closed);
        expected.add_term(x(1), MilnorMonomial(), BaseScalar::one(2, Preset::closed));
        expected.add_term(MilnorMonomial(), x(1), BaseScalar::one(2, Preset::closed));
        CHECK(d == expected);
    }
    SUBCASE("Delta(tau_1) = tau_1 x 1 + 1 x tau_1 + xi_1 x tau_0")
    {
        TensorElement d = coproduct(g_of(2, Preset::universal, t(1)));
        TensorElement expected(2, Preset::universal);
        BaseScalar one = BaseScalar::one(2, Preset::universal);
        expected.add_term(t(1), MilnorMonomial(), one);
        expected.add_term(MilnorMonomial(), t(1), one);
        expected.add_term(x(1), t(0), one);
        CHECK(d == expected);
    }
    SUBCASE("Delta(xi_2) at l = 2")
    {
        TensorElement d = coproduct(g_of(2, Preset::closed, x(2)));
        TensorElement expected(2, Preset::closed);
        BaseScalar one = BaseScalar::one(2, Preset::closed);
        expected.add_term(x(2), MilnorMonomial(), one);
        expected.add_term(MilnorMonomial(), x(2), one);
        expected.add_term(x(1, 2), x(1), one);
        CHECK(d == expected);
    }
}

TEST_CASE("counit pinned examples")
{
    CHECK(counit(g_of(2, Preset::closed, x(3))).is_zero());
    GammaElement mixed(2, Preset::closed);
    mixed.add_term(MilnorMonomial(), BaseScalar::tau(2, Preset::closed));
    mixed.add_term(MilnorMonomial::make(1, {1}), BaseScalar::one(2, Preset::closed));
    CHECK(counit(mixed) == BaseScalar::tau(2, Preset::closed));
    CHECK(counit(GammaElement::unit(3, Preset::closed)).is_one());
}

TEST_CASE("antipode pinned examples")
{
    SUBCASE("c(xi_1) = -xi_1")
    {
        CHECK(antipode(g_of(3, Preset::closed, x(1))) ==
              g_of(3, Preset::closed, x(1)).scaled(-BaseScalar::one(3, Preset::closed)));
        CHECK(antipode(g_of(2, Preset::closed, x(1))) == g_of(2, Preset::closed, x(1)));
    }
    SUBCASE("c(xi_2) = xi_2 + xi_1^3 at l = 2")
    {
        GammaElement expected(2, Preset::closed);
        expected.add_term(x(2), BaseScalar::one(2, Preset::closed));
        expected.add_term(x(1, 3), BaseScalar::one(2, Preset::closed));
        CHECK(antipode(g_of(2, Preset::closed, x(2))) == expected);
    }
    SUBCASE("c(tau_0) = -tau_0")
    {
        CHECK(antipode(g_of(3, Preset::closed, t(0))) ==
              g_of(3, Preset::closed, t(0)).scaled(-BaseScalar::one(3, Preset::closed)));
    }
}

TEST_CASE("antipode recursions and the twisted unit identity")
{
    for (auto [ell, preset] : std::vector<std::pair<std::uint32_t, Preset>>{
             {2, Preset::closed}, {2, Preset::universal}, {3, Preset::closed}}) {
        for (std::uint32_t r = 1; r <= 4; ++r) {
            GammaElement xi_acc(ell, preset);
            for (std::uint32_t i = 0; i <= r; ++i) {
                std::uint64_t e = 1;
                for (std::uint32_t k = 0; k < i; ++k)
                    e *= ell;
                GammaElement head = i == r ? GammaElement::unit(ell, preset)
                                           : g_of(ell, preset,
                                                  x(r - i, static_cast<std::uint32_t>(e)));
                xi_acc = xi_acc + gamma_multiply(head, antipode_xi_gen(ell, preset, i));
            }
            CHECK(xi_acc.is_zero());

            GammaElement tau_acc = g_of(ell, preset, t(r)) + antipode_tau_gen(ell, preset, r);
            for (std::uint32_t i = 0; i < r; ++i) {
                std::uint64_t e = 1;
                for (std::uint32_t k = 0; k < i; ++k)
                    e *= ell;
                tau_acc = tau_acc + gamma_multiply(g_of(ell, preset,
                                                        x(r - i, static_cast<std::uint32_t>(e))),
                                                   antipode_tau_gen(ell, preset, i));
            }
            CHECK(tau_acc.is_zero());
        }
    }
    // c(eta_L(tau)) = eta_R(tau) in the universal preset
    GammaElement tau_elem(2, Preset::universal);
    tau_elem.add_term(MilnorMonomial(), BaseScalar::tau(2, Preset::universal));
    GammaElement expected(2, Preset::universal);
    expected.add_term(MilnorMonomial(), BaseScalar::tau(2, Preset::universal));
    expected.add_term(t(0), BaseScalar::rho(2, Preset::universal));
    CHECK(antipode(tau_elem) == expected);
}

TEST_CASE("antipode is involutive on tested range")
{
    // Experimental finding (the twisted setting does not assert this a
    // priori): c(c(x)) = x for every monomial tested.
    for (auto [ell, preset] : std::vector<std::pair<std::uint32_t, Preset>>{
             {2, Preset::closed}, {2, Preset::universal}, {3, Preset::closed}}) {
        for (long long d = 0; d <= 40; ++d)
            for (const auto& m : milnor_monomials_of_degree(d, ell)) {
                GammaElement g = g_of(ell, preset, m);
                CHECK(antipode(antipode(g)) == g);
            }
    }
}

TEST_CASE("tensor_normalize pinned examples")
{
    SUBCASE("1 x tau xi_1 in the universal preset")
    {
        RawTensorTerm raw{MilnorMonomial(), BaseScalar::one(2, Preset::universal), x(1),
                          BaseScalar::tau(2, Preset::universal)};
        TensorElement got = tensor_normalize(2, Preset::universal, {raw});
        TensorElement expected(2, Preset::universal);
        expected.add_term(MilnorMonomial(), x(1), BaseScalar::tau(2, Preset::universal));
        expected.add_term(t(0), x(1), BaseScalar::rho(2, Preset::universal));
        CHECK(got == expected);
    }
    SUBCASE("1 x tau xi_1 in the closed preset")
    {
        RawTensorTerm raw{MilnorMonomial(), BaseScalar::one(2, Preset::closed), x(1),
                          BaseScalar::tau(2, Preset::closed)};
        TensorElement got = tensor_normalize(2, Preset::closed, {raw});
        TensorElement expected(2, Preset::closed);
        expected.add_term(MilnorMonomial(), x(1), BaseScalar::tau(2, Preset::closed));
        CHECK(got == expected);
    }
    SUBCASE("1 x rho tau_0")
    {
        RawTensorTerm raw{MilnorMonomial(), BaseScalar::one(2, Preset::universal), t(0),
                          BaseScalar::rho(2, Preset::universal)};
        TensorElement got = tensor_normalize(2, Preset::universal, {raw});
        TensorElement expected(2, Preset::universal);
        expected.add_term(MilnorMonomial(), t(0), BaseScalar::rho(2, Preset::universal));
        CHECK(got == expected);
    }
    SUBCASE("idempotence")
    {
        RawTensorTerm raw{t(0), BaseScalar::one(2, Preset::universal), x(1),
                          BaseScalar::tau(2, Preset::universal)};
        TensorElement once = tensor_normalize(2, Preset::universal, {raw});
        std::vector<RawTensorTerm> again;
        for (const auto& [k, c] : once.terms())
            again.push_back(RawTensorTerm{k.first, c, k.second,
                                          BaseScalar::one(2, Preset::universal)});
        CHECK(tensor_normalize(2, Preset::universal, again) == once);
    }
}

TEST_CASE("milnor_basis pinned examples and brute-force oracle")
{
    auto b31 = milnor_basis(3, 1, 2);
    REQUIRE(b31.size() == 2);
    CHECK(b31[0] == t(1));
    CHECK(b31[1] == MilnorMonomial::make(1, {1}));  // tau_0 xi_1

    auto b10 = milnor_basis(1, 0, 5);
    REQUIRE(b10.size() == 1);
    CHECK(b10[0] == t(0));

    auto b21 = milnor_basis(2, 1, 2);
    REQUIRE(b21.size() == 1);
    CHECK(b21[0] == x(1));

    for (std::uint32_t ell : {2u, 3u})
        for (long long p = 0; p <= 14; ++p)
            for (long long q = 0; q <= p; ++q) {
                auto fast = milnor_basis(p, q, ell);
                auto brute = brute_milnor(p, q, ell);
                REQUIRE(fast.size() == brute.size());
                for (const auto& m : fast)
                    CHECK(brute.count(m) == 1);
            }
}

TEST_CASE("coassociativity and counit laws")
{
    for (auto [ell, preset] : std::vector<std::pair<std::uint32_t, Preset>>{
             {2, Preset::closed}, {2, Preset::universal}, {3, Preset::closed}}) {
        std::vector<MilnorMonomial> samples;
        for (std::uint32_t r = 0; r <= 3; ++r) {
            samples.push_back(t(r));
            if (r >= 1)
                samples.push_back(x(r));
        }
        samples.push_back(MilnorMonomial::make(0b11, {2}));      // tau_0 tau_1 xi_1^2
        samples.push_back(MilnorMonomial::make(0b101, {0, 1}));  // tau_0 tau_2 xi_2
        for (const auto& m : samples) {
            GammaElement g = g_of(ell, preset, m);
            TensorElement d = coproduct(g);
            CHECK(coproduct_left_then(d) == coproduct_right_then(d));
            CHECK(collapse_left_counit(d) == g);
            CHECK(collapse_right_counit(d) == g);
        }
    }
}

TEST_CASE("coproduct is an algebra map, including the tau^2 rewrite")
{
    for (auto [ell, preset] : std::vector<std::pair<std::uint32_t, Preset>>{
             {2, Preset::closed}, {2, Preset::universal}, {3, Preset::closed}}) {
        std::vector<MilnorMonomial> pool;
        for (long long d = 0; d <= 10; ++d)
            for (const auto& m : milnor_monomials_of_degree(d, ell))
                pool.push_back(m);
        std::mt19937 rng(404 + ell);
        for (int trial = 0; trial < 60; ++trial) {
            const MilnorMonomial& a = pool[rng() % pool.size()];
            const MilnorMonomial& b = pool[rng() % pool.size()];
            GammaElement ga = g_of(ell, preset, a);
            GammaElement gb = g_of(ell, preset, b);
            CHECK(coproduct(gamma_multiply(ga, gb)) ==
                  tensor_multiply(coproduct(ga), coproduct(gb)));
        }
        // the forced tau^2 case
        GammaElement t0 = g_of(ell, preset, t(0));
        CHECK(coproduct(gamma_multiply(t0, t0)) ==
              tensor_multiply(coproduct(t0), coproduct(t0)));
    }
}

TEST_CASE("generator index caps are enforced")
{
    CHECK_THROWS_AS(MilnorMonomial::tau_gen(kMaxGenIndex + 1), Error);
    CHECK_THROWS_AS(MilnorMonomial::xi_gen(0), Error);
}
