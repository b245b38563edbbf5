#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "motsteen/bidegree.hpp"
#include "motsteen/scalar.hpp"

namespace motsteen {

// Generator of the operation algebra: the Bockstein or a reduced power P^i.
// P^0 is the identity and is never stored. At l = 2 the Sq notation is an
// IO-level alias: Sq^{2i} = P^i, Sq^{2i+1} = beta P^i.
struct OpGen {
    std::uint32_t power = 0;  // 0 encodes the Bockstein

    static OpGen bockstein() { return OpGen{0}; }
    static OpGen P(std::uint32_t i);
    bool is_beta() const { return power == 0; }
    friend auto operator<=>(const OpGen&, const OpGen&) = default;
};

// beta has bidegree (1,0); P^i has bidegree (2i(l-1), i(l-1)).
Bidegree gen_bidegree(OpGen g, std::uint32_t ell);

// Composition word, read left to right. Invariants: no adjacent Bocksteins
// (beta^2 = 0 collapses to the zero element before storage), no P^0 entries.
class OpMonomial {
public:
    OpMonomial() = default;  // identity operation

    // Drops P^0 factors; returns nullopt when the word contains beta beta.
    static std::optional<OpMonomial> make(std::vector<OpGen> word);

    const std::vector<OpGen>& word() const { return word_; }
    bool is_identity() const { return word_.empty(); }
    Bidegree bidegree(std::uint32_t ell) const;

    friend auto operator<=>(const OpMonomial&, const OpMonomial&) = default;

private:
    std::vector<OpGen> word_;
};

// Total order: cohomological degree, then weight, then lexicographic word.
struct WordLess {
    std::uint32_t ell;
    bool operator()(const OpMonomial& a, const OpMonomial& b) const;
};

// Admissibility: every adjacent power pair
// P^{i} ... beta^{eps} P^{j} (i left of j) satisfies i >= l*j + eps.
bool is_admissible(const OpMonomial& m, std::uint32_t ell);

// Left-coefficient combination of operation monomials in canonical sparse
// form. Mixed bidegrees are allowed.
class OpElement {
public:
    OpElement(std::uint32_t ell, Preset preset);

    static OpElement zero(std::uint32_t ell, Preset preset) { return OpElement(ell, preset); }
    static OpElement from_monomial(std::uint32_t ell, Preset preset, const OpMonomial& m,
                                   const BaseScalar& coeff);
    static OpElement from_monomial(std::uint32_t ell, Preset preset, const OpMonomial& m);

    std::uint32_t prime() const { return ell_; }
    Preset preset() const { return preset_; }
    const std::map<OpMonomial, BaseScalar, WordLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const OpMonomial& m, const BaseScalar& coeff);
    OpElement operator+(const OpElement& rhs) const;
    OpElement scaled(const BaseScalar& c) const;
    friend bool operator==(const OpElement& a, const OpElement& b);

private:
    std::uint32_t ell_;
    Preset preset_;
    std::map<OpMonomial, BaseScalar, WordLess> terms_;
};

inline constexpr std::uint64_t kDefaultFuel = 10'000'000;

// One Adem rewrite. `left`/`right` are single letters: [P^i] or [beta, P^i]
// ([beta, P^i] on the left only at l = 2, where the letter reads Sq^{2i+1}).
// Throws bad_argument when the pair is already admissible or matches no
// relation hypothesis.
OpElement adem_step(std::uint32_t ell, Preset preset, const std::vector<OpGen>& left,
                    const std::vector<OpGen>& right);

// Admissible normal form. Rewrites the leftmost inadmissible pair until none
// remains; `fuel` bounds the number of elementary rewrites.
OpElement normalize(const OpElement& e, std::uint64_t fuel = kDefaultFuel);

// Concatenate, commute right-hand coefficients leftward, normalize.
OpElement multiply(const OpElement& x, const OpElement& y, std::uint64_t fuel = kDefaultFuel);

// Moves a coefficient sitting to the right of `word` out to the left.
// In the closed preset scalars are central; in the universal preset only the
// Bockstein passes scalars (as a derivation), and a power operation meeting a
// non-prime-field scalar throws unsupported_scalar_commutation.
std::vector<std::pair<BaseScalar, std::vector<OpGen>>> commute_scalar_left(
    std::vector<OpGen> word, const BaseScalar& s);

// All admissible monomials of exact bidegree (p,q), canonically ordered.
std::vector<OpMonomial> op_basis(long long p, long long q, std::uint32_t ell);

// All admissible monomials of cohomological degree <= max_p.
std::vector<OpMonomial> admissibles_up_to_degree(long long max_p, std::uint32_t ell);

}  // namespace motsteen
