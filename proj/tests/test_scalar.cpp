#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "motsteen/scalar.hpp"

using namespace motsteen;

namespace {

// Independent oracle: big-integer Pascal triangle. C(64,32) < 2^63, so
// uint64 rows up to n = 64 are exact.
std::vector<std::vector<std::uint64_t>> pascal_rows(int max_n)
{
    std::vector<std::vector<std::uint64_t>> rows(max_n + 1);
    for (int n = 0; n <= max_n; ++n) {
        rows[n].assign(n + 1, 1);
        for (int k = 1; k < n; ++k)
            rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
    }
    return rows;
}

BaseScalar rand_scalar(std::mt19937& rng, std::uint32_t ell, Preset preset)
{
    BaseScalar s(ell, preset);
    int terms = static_cast<int>(rng() % 4);
    for (int i = 0; i < terms; ++i) {
        std::uint32_t rho = preset == Preset::universal ? rng() % 3 : 0;
        std::uint32_t tau = ell == 2 ? rng() % 4 : 0;
        s.add_term(ScalarKey{rho, tau}, rng() % ell);
    }
    return s;
}

}  // namespace

TEST_CASE("binom_mod matches the Pascal oracle")
{
    auto rows = pascal_rows(64);
    for (std::uint32_t ell : {2u, 3u, 5u})
        for (int n = 0; n <= 64; ++n)
            for (int k = 0; k <= n; ++k)
                CHECK(binom_mod(n, k, ell) == rows[n][k] % ell);
}

TEST_CASE("binom_mod pinned values and edge cases")
{
    CHECK(binom_mod(4, 2, 2) == 0);   // C(4,2) = 6
    CHECK(binom_mod(5, 2, 3) == 1);   // C(5,2) = 10
    CHECK(binom_mod(7, 0, 5) == 1);
    CHECK(binom_mod(-1, 0, 3) == 0);
    CHECK(binom_mod(3, -1, 3) == 0);
    CHECK(binom_mod(3, 4, 3) == 0);
}

TEST_CASE("scalar multiplication examples")
{
    BaseScalar tau = BaseScalar::tau(2, Preset::closed);
    CHECK(tau * tau == BaseScalar::monomial(2, Preset::closed, 0, 2, 1));

    BaseScalar rho = BaseScalar::rho(2, Preset::universal);
    BaseScalar tau_u = BaseScalar::tau(2, Preset::universal);
    BaseScalar one_u = BaseScalar::one(2, Preset::universal);
    BaseScalar prod = rho * (tau_u + one_u);
    BaseScalar expected(2, Preset::universal);
    expected.add_term(ScalarKey{1, 1}, 1);
    expected.add_term(ScalarKey{1, 0}, 1);
    CHECK(prod == expected);

    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        BaseScalar x = rand_scalar(rng, 2, Preset::universal);
        CHECK(BaseScalar::one(2, Preset::universal) * x == x);
    }
}

TEST_CASE("scalar ring laws on random triples")
{
    std::mt19937 rng(99);
    for (auto [ell, preset] : std::vector<std::pair<std::uint32_t, Preset>>{
             {2, Preset::universal}, {2, Preset::closed}, {5, Preset::closed}}) {
        for (int i = 0; i < 200; ++i) {
            BaseScalar a = rand_scalar(rng, ell, preset);
            BaseScalar b = rand_scalar(rng, ell, preset);
            BaseScalar c = rand_scalar(rng, ell, preset);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a + b) + c == a + (b + c));
        }
    }
}

TEST_CASE("specialize evaluates and is a ring map")
{
    BaseScalar tau2 = BaseScalar::monomial(2, Preset::universal, 0, 2, 1);
    CHECK(tau2.specialize(0, 1) == 1);

    BaseScalar mix(2, Preset::universal);  // rho tau + tau^3
    mix.add_term(ScalarKey{1, 1}, 1);
    mix.add_term(ScalarKey{0, 3}, 1);
    CHECK(mix.specialize(0, 1) == 1);

    CHECK(BaseScalar::rho(2, Preset::universal).specialize(0, 1) == 0);

    std::mt19937 rng(1234);
    for (int i = 0; i < 200; ++i) {
        BaseScalar a = rand_scalar(rng, 2, Preset::universal);
        BaseScalar b = rand_scalar(rng, 2, Preset::universal);
        CHECK((a * b).specialize(0, 1) == mul_mod(a.specialize(0, 1), b.specialize(0, 1), 2));
    }
}

TEST_CASE("coefficient Bockstein is a derivation with beta(tau) = rho")
{
    BaseScalar tau = BaseScalar::tau(2, Preset::universal);
    BaseScalar rho = BaseScalar::rho(2, Preset::universal);
    CHECK(tau.bockstein() == rho);
    CHECK(rho.bockstein().is_zero());
    // beta(tau^2) = 2 rho tau = 0 mod 2
    CHECK((tau * tau).bockstein().is_zero());
    // beta(rho tau) = rho^2
    CHECK((rho * tau).bockstein() == rho * rho);
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        BaseScalar a = rand_scalar(rng, 2, Preset::universal);
        BaseScalar b = rand_scalar(rng, 2, Preset::universal);
        CHECK((a * b).bockstein() == a.bockstein() * b + a * b.bockstein());
    }
}

TEST_CASE("preset invariants are enforced")
{
    CHECK_THROWS_AS(BaseScalar::rho(2, Preset::closed), Error);
    CHECK_THROWS_AS(BaseScalar::tau(3, Preset::closed), Error);
    CHECK_THROWS_AS(BaseScalar(3, Preset::universal), Error);
    CHECK_THROWS_AS(BaseScalar(4, Preset::closed), Error);
    BaseScalar a = BaseScalar::one(2, Preset::closed);
    BaseScalar b = BaseScalar::one(2, Preset::universal);
    CHECK_THROWS_AS(a * b, Error);
}

TEST_CASE("scalar bidegrees")
{
    CHECK(BaseScalar::rho(2, Preset::universal).bidegree() == Bidegree{1, 1});
    CHECK(BaseScalar::tau(2, Preset::universal).bidegree() == Bidegree{0, 1});
    BaseScalar m = BaseScalar::monomial(2, Preset::universal, 2, 3, 1);
    CHECK(m.bidegree() == Bidegree{2, 5});
}
