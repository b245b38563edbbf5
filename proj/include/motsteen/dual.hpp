#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "motsteen/bidegree.hpp"
#include "motsteen/scalar.hpp"

namespace motsteen {

// Generator indices are capped so that all bidegrees fit in 64 bits.
inline constexpr std::uint32_t kMaxGenIndex = 25;

// tau_0^{e_0} tau_1^{e_1} ... xi_1^{s_1} xi_2^{s_2} ... with e_r in {0,1}.
// tau_r has bidegree (2 l^r - 1, l^r - 1) and is odd; xi_r has bidegree
// (2 l^r - 2, l^r - 1) and is even.
class MilnorMonomial {
public:
    MilnorMonomial() = default;  // the unit monomial

    static MilnorMonomial tau_gen(std::uint32_t r);
    static MilnorMonomial xi_gen(std::uint32_t r, std::uint32_t exp = 1);
    static MilnorMonomial make(std::uint64_t tau_mask, std::vector<std::uint32_t> xi_exps);

    std::uint64_t tau_mask() const { return tau_mask_; }
    // xi_exps()[k] is the exponent of xi_{k+1}; trailing zeros are trimmed.
    const std::vector<std::uint32_t>& xi_exps() const { return xi_exps_; }

    bool is_unit() const { return tau_mask_ == 0 && xi_exps_.empty(); }
    Bidegree bidegree(std::uint32_t ell) const;
    // First-degree parity; tau generators are odd, xi generators even.
    int parity() const;

    friend auto operator<=>(const MilnorMonomial&, const MilnorMonomial&) = default;

private:
    std::uint64_t tau_mask_ = 0;
    std::vector<std::uint32_t> xi_exps_;
};

struct MilnorLess {
    std::uint32_t ell;
    bool operator()(const MilnorMonomial& a, const MilnorMonomial& b) const;
};

// Element of Gamma (tensored with the preset coefficient ring), canonical
// sparse form. Multiplication rewrites tau_i^2 via
// tau_i^2 = tau xi_{i+1} + rho tau_{i+1} + rho tau_0 xi_{i+1}.
class GammaElement {
public:
    GammaElement(std::uint32_t ell, Preset preset);

    static GammaElement zero(std::uint32_t ell, Preset preset) { return GammaElement(ell, preset); }
    static GammaElement unit(std::uint32_t ell, Preset preset);
    static GammaElement from_monomial(std::uint32_t ell, Preset preset, const MilnorMonomial& m);
    static GammaElement from_monomial(std::uint32_t ell, Preset preset, const MilnorMonomial& m,
                                      const BaseScalar& coeff);

    std::uint32_t prime() const { return ell_; }
    Preset preset() const { return preset_; }
    const std::map<MilnorMonomial, BaseScalar, MilnorLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MilnorMonomial& m, const BaseScalar& coeff);
    GammaElement operator+(const GammaElement& rhs) const;
    GammaElement scaled(const BaseScalar& c) const;
    friend bool operator==(const GammaElement& a, const GammaElement& b);

private:
    std::uint32_t ell_;
    Preset preset_;
    std::map<MilnorMonomial, BaseScalar, MilnorLess> terms_;
};

GammaElement gamma_multiply(const GammaElement& x, const GammaElement& y);

// Normalized element of Gamma tensor_A Gamma: every coefficient lives on the
// left slot, right slots are coefficient-free monomials.
class TensorElement {
public:
    TensorElement(std::uint32_t ell, Preset preset);

    static TensorElement unit(std::uint32_t ell, Preset preset);

    std::uint32_t prime() const { return ell_; }
    Preset preset() const { return preset_; }
    using Key = std::pair<MilnorMonomial, MilnorMonomial>;
    const std::map<Key, BaseScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const MilnorMonomial& left, const MilnorMonomial& right,
                  const BaseScalar& coeff);
    TensorElement operator+(const TensorElement& rhs) const;
    friend bool operator==(const TensorElement& a, const TensorElement& b);

private:
    std::uint32_t ell_;
    Preset preset_;
    std::map<Key, BaseScalar> terms_;
};

TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y);

// One raw summand coeff_left * (left tensor coeff_right * right).
struct RawTensorTerm {
    MilnorMonomial left;
    BaseScalar left_coeff;
    MilnorMonomial right;
    BaseScalar right_coeff;
};

// Transports right-slot coefficients through eta_R (tau -> tau + rho tau_0,
// rho -> rho) until the right slots are coefficient-free.
TensorElement tensor_normalize(std::uint32_t ell, Preset preset,
                               const std::vector<RawTensorTerm>& raw);

// eta_R applied to a coefficient, as an element of Gamma.
GammaElement eta_R_scalar(std::uint32_t ell, Preset preset, const BaseScalar& s);

TensorElement coproduct(const GammaElement& x);
BaseScalar counit(const GammaElement& x);
GammaElement antipode(const GammaElement& x);

// Antipode on a single generator (memoized recursion).
GammaElement antipode_tau_gen(std::uint32_t ell, Preset preset, std::uint32_t r);
GammaElement antipode_xi_gen(std::uint32_t ell, Preset preset, std::uint32_t r);

// (eps tensor id) and (id tensor eps) collapses of a normalized tensor.
GammaElement collapse_left_counit(const TensorElement& t);
GammaElement collapse_right_counit(const TensorElement& t);

// Three-fold tensors, used for the coassociativity checks.
using Tensor3 = std::map<std::tuple<MilnorMonomial, MilnorMonomial, MilnorMonomial>, BaseScalar>;
Tensor3 coproduct_left_then(const TensorElement& t);   // (Delta tensor id)
Tensor3 coproduct_right_then(const TensorElement& t);  // (id tensor Delta)

// All coefficient-free monomials of exact homological bidegree (p,q).
std::vector<MilnorMonomial> milnor_basis(long long p, long long q, std::uint32_t ell);

// All coefficient-free monomials of first degree exactly d.
std::vector<MilnorMonomial> milnor_monomials_of_degree(long long d, std::uint32_t ell);

}  // namespace motsteen
