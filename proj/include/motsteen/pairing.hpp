#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "motsteen/dual.hpp"
#include "motsteen/ops.hpp"

namespace motsteen {

// Order convention for evaluating a word against a coproduct: whether the
// leftmost operation letter pairs against the left tensor slot of Delta(m),
// and whether a Koszul sign is applied across the slots at odd l. Pinned by
// agreement of the convolution model with the Adem normal form (the
// cross-model suite); see kPairingConvention below.
struct PairingConvention {
    bool leftmost_to_left_slot;
    bool koszul_sign;
};

inline constexpr PairingConvention kPairingConvention{true, true};

// <w, m> for a word w and a coefficient-free Milnor monomial m. Base cases:
// <1,m> = eps(m), <beta, m> = [m = tau_0], <P^k, m> = [m = xi_1^k]; composite
// words decompose through Delta(m). Closed presets only.
BaseScalar pair_value(const OpMonomial& w, const MilnorMonomial& m, std::uint32_t ell,
                      Preset preset, PairingConvention conv = kPairingConvention);

BaseScalar pair_element(const OpElement& e, const MilnorMonomial& m,
                        PairingConvention conv = kPairingConvention);

// M**-linear functional on the dual algebra, determined by its values on
// coefficient-free monomials of the first degrees it is supported on.
class DualFunctional {
public:
    DualFunctional(std::uint32_t ell, Preset preset);

    static DualFunctional of(const OpElement& e, PairingConvention conv = kPairingConvention);

    std::uint32_t prime() const { return ell_; }
    Preset preset() const { return preset_; }
    const std::set<long long>& degrees() const { return degrees_; }
    const std::map<MilnorMonomial, BaseScalar, MilnorLess>& values() const { return values_; }

    BaseScalar evaluate(const MilnorMonomial& m) const;
    void set_value(const MilnorMonomial& m, const BaseScalar& v);
    void add_degree(long long d) { degrees_.insert(d); }

    // Functionals are equal when their nonzero values agree.
    friend bool operator==(const DualFunctional& a, const DualFunctional& b);

private:
    std::uint32_t ell_;
    Preset preset_;
    std::set<long long> degrees_;
    std::map<MilnorMonomial, BaseScalar, MilnorLess> values_;
};

// (f*g)(m) = sum f(m_L) g(m_R) over Delta(m), same conventions as pair_value.
DualFunctional convolution_multiply(const DualFunctional& f, const DualFunctional& g,
                                    PairingConvention conv = kPairingConvention);

using FpMatrix = std::vector<std::vector<Residue>>;

// Constant terms of the equal-bidegree pairing, rows indexed by op_basis and
// columns by milnor_basis. Throws when the two bases disagree in size.
FpMatrix pairing_matrix(long long p, long long q, std::uint32_t ell,
                        PairingConvention conv = kPairingConvention);

// Determinant nonzero over F_l (Gaussian elimination).
bool matrix_invertible(FpMatrix m, std::uint32_t ell);

}  // namespace motsteen
