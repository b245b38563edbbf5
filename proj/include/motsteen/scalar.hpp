#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "motsteen/bidegree.hpp"
#include "motsteen/error.hpp"

namespace motsteen {

using Residue = std::uint32_t;

// Coefficient presets. `closed` models an algebraically closed base: F_l for
// odd l, F_2[tau] for l = 2. `universal` is F_2[rho,tau] and exists only at
// l = 2.
enum class Preset { closed, universal };

const char* preset_name(Preset p);

// C(n,k) mod l by base-l digit comparison; 0 when n < 0, k < 0 or k > n.
Residue binom_mod(long long n, long long k, std::uint32_t ell);

Residue add_mod(Residue a, Residue b, std::uint32_t ell);
Residue mul_mod(Residue a, Residue b, std::uint32_t ell);
Residue neg_mod(Residue a, std::uint32_t ell);
Residue inv_mod(Residue a, std::uint32_t ell);

// A monomial rho^a tau^b in the coefficient ring.
struct ScalarKey {
    std::uint32_t rho = 0;
    std::uint32_t tau = 0;
    friend auto operator<=>(const ScalarKey&, const ScalarKey&) = default;
};

// Element of the graded coefficient ring, kept in canonical sparse form
// (no zero coefficients). rho has bidegree (1,1), tau has bidegree (0,1).
class BaseScalar {
public:
    BaseScalar(std::uint32_t ell, Preset preset);

    static BaseScalar zero(std::uint32_t ell, Preset preset) { return BaseScalar(ell, preset); }
    static BaseScalar constant(std::uint32_t ell, Preset preset, long long value);
    static BaseScalar one(std::uint32_t ell, Preset preset) { return constant(ell, preset, 1); }
    static BaseScalar monomial(std::uint32_t ell, Preset preset, std::uint32_t rho_exp,
                               std::uint32_t tau_exp, Residue coeff);
    static BaseScalar rho(std::uint32_t ell, Preset preset) { return monomial(ell, preset, 1, 0, 1); }
    static BaseScalar tau(std::uint32_t ell, Preset preset) { return monomial(ell, preset, 0, 1, 1); }

    std::uint32_t prime() const { return ell_; }
    Preset preset() const { return preset_; }
    const std::map<ScalarKey, Residue>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    // True when the element lies in the prime field (a constant).
    bool in_prime_field() const;
    Residue constant_term() const;

    void add_term(ScalarKey key, Residue coeff);

    BaseScalar operator+(const BaseScalar& rhs) const;
    BaseScalar operator*(const BaseScalar& rhs) const;
    BaseScalar operator-() const;
    friend bool operator==(const BaseScalar&, const BaseScalar&) = default;

    BaseScalar scaled(Residue c) const;

    // Evaluation at rho = rho_value, tau = tau_value. The classical
    // specialization is (0, 1).
    Residue specialize(Residue rho_value, Residue tau_value) const;

    // Bockstein of the coefficient as a class: beta(tau) = rho, beta(rho) = 0,
    // extended as a derivation. Only meaningful at l = 2.
    BaseScalar bockstein() const;

    // Bidegree of monomial rho^a tau^b is (a, a+b).
    static Bidegree key_bidegree(ScalarKey k)
    {
        return {static_cast<long long>(k.rho),
                static_cast<long long>(k.rho) + static_cast<long long>(k.tau)};
    }
    // Bidegree when homogeneous; throws for mixed or zero scalars.
    Bidegree bidegree() const;
    bool is_homogeneous() const;

private:
    void check_compatible(const BaseScalar& rhs) const;
    void check_key(ScalarKey key) const;

    std::uint32_t ell_;
    Preset preset_;
    std::map<ScalarKey, Residue> terms_;
};

}  // namespace motsteen
