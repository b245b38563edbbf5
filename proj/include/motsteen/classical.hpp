#pragma once

#include <cstdint>
#include <map>

#include "motsteen/ops.hpp"
#include "motsteen/scalar.hpp"

namespace motsteen {

// Element of the topological mod-l Steenrod algebra: prime-field coefficients
// over the same monomial alphabet as the motivic side.
class ClassicalElement {
public:
    explicit ClassicalElement(std::uint32_t ell);

    static ClassicalElement zero(std::uint32_t ell) { return ClassicalElement(ell); }
    static ClassicalElement from_monomial(std::uint32_t ell, const OpMonomial& m,
                                          Residue coeff = 1);

    std::uint32_t prime() const { return ell_; }
    const std::map<OpMonomial, Residue, WordLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const OpMonomial& m, Residue coeff);
    ClassicalElement operator+(const ClassicalElement& rhs) const;
    friend bool operator==(const ClassicalElement& a, const ClassicalElement& b);

private:
    std::uint32_t ell_;
    std::map<OpMonomial, Residue, WordLess> terms_;
};

// Admissible normal form under the topological Adem relations. This engine is
// a separate code path from the motivic one (its own representation, tables
// and rightmost-first strategy) so it can serve as an oracle.
ClassicalElement classical_normalize(const ClassicalElement& e,
                                     std::uint64_t fuel = kDefaultFuel);

ClassicalElement classical_multiply(const ClassicalElement& x, const ClassicalElement& y,
                                    std::uint64_t fuel = kDefaultFuel);

// Coefficient specialization rho -> 0, tau -> 1, keeping monomials.
ClassicalElement realize(const OpElement& e);

}  // namespace motsteen
