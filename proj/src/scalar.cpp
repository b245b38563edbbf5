#include "motsteen/scalar.hpp"

namespace motsteen {

const char* preset_name(Preset p)
{
    return p == Preset::closed ? "closed" : "universal";
}

Residue binom_mod(long long n, long long k, std::uint32_t ell)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    // Lucas: compare base-l digits.
    Residue result = 1;
    unsigned long long un = static_cast<unsigned long long>(n);
    unsigned long long uk = static_cast<unsigned long long>(k);
    while (uk > 0 || un > 0) {
        unsigned long long nd = un % ell;
        unsigned long long kd = uk % ell;
        if (kd > nd)
            return 0;
        // C(nd, kd) for digits < l fits comfortably in 64 bits (l is small).
        unsigned long long c = 1;
        for (unsigned long long i = 0; i < kd; ++i)
            c = c * (nd - i) / (i + 1);
        result = mul_mod(result, static_cast<Residue>(c % ell), ell);
        un /= ell;
        uk /= ell;
    }
    return result;
}

Residue add_mod(Residue a, Residue b, std::uint32_t ell)
{
    return (a + b) % ell;
}

Residue mul_mod(Residue a, Residue b, std::uint32_t ell)
{
    return static_cast<Residue>((static_cast<std::uint64_t>(a) * b) % ell);
}

Residue neg_mod(Residue a, std::uint32_t ell)
{
    return a == 0 ? 0 : ell - a;
}

Residue inv_mod(Residue a, std::uint32_t ell)
{
    // Fermat; l is prime and a != 0.
    if (a % ell == 0)
        throw Error(ErrorCode::bad_argument, "inverse of zero residue");
    Residue result = 1, base = a % ell;
    std::uint32_t e = ell - 2;
    while (e) {
        if (e & 1)
            result = mul_mod(result, base, ell);
        base = mul_mod(base, base, ell);
        e >>= 1;
    }
    return result;
}

BaseScalar::BaseScalar(std::uint32_t ell, Preset preset) : ell_(ell), preset_(preset)
{
    if (!is_prime(ell))
        throw Error(ErrorCode::bad_argument, "prime required");
    if (preset == Preset::universal && ell != 2)
        throw Error(ErrorCode::bad_argument, "universal preset requires l = 2");
}

BaseScalar BaseScalar::constant(std::uint32_t ell, Preset preset, long long value)
{
    BaseScalar s(ell, preset);
    long long r = value % static_cast<long long>(ell);
    if (r < 0)
        r += ell;
    s.add_term(ScalarKey{0, 0}, static_cast<Residue>(r));
    return s;
}

BaseScalar BaseScalar::monomial(std::uint32_t ell, Preset preset, std::uint32_t rho_exp,
                                std::uint32_t tau_exp, Residue coeff)
{
    BaseScalar s(ell, preset);
    s.add_term(ScalarKey{rho_exp, tau_exp}, coeff % ell);
    return s;
}

bool BaseScalar::is_one() const
{
    return terms_.size() == 1 && terms_.begin()->first == ScalarKey{0, 0} &&
           terms_.begin()->second == 1;
}

bool BaseScalar::in_prime_field() const
{
    if (terms_.empty())
        return true;
    return terms_.size() == 1 && terms_.begin()->first == ScalarKey{0, 0};
}

Residue BaseScalar::constant_term() const
{
    auto it = terms_.find(ScalarKey{0, 0});
    return it == terms_.end() ? 0 : it->second;
}

void BaseScalar::check_key(ScalarKey key) const
{
    if (preset_ == Preset::closed) {
        if (key.rho != 0)
            throw Error(ErrorCode::bad_argument, "rho is zero in the closed preset");
        if (ell_ != 2 && key.tau != 0)
            throw Error(ErrorCode::bad_argument, "tau is zero in the closed preset at odd l");
    }
}

void BaseScalar::add_term(ScalarKey key, Residue coeff)
{
    coeff %= ell_;
    if (coeff == 0)
        return;
    check_key(key);
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second = add_mod(it->second, coeff, ell_);
        if (it->second == 0)
            terms_.erase(it);
    }
}

void BaseScalar::check_compatible(const BaseScalar& rhs) const
{
    if (ell_ != rhs.ell_ || preset_ != rhs.preset_)
        throw Error(ErrorCode::preset_mismatch, "scalar preset/prime mismatch");
}

BaseScalar BaseScalar::operator+(const BaseScalar& rhs) const
{
    check_compatible(rhs);
    BaseScalar out = *this;
    for (const auto& [k, c] : rhs.terms_)
        out.add_term(k, c);
    return out;
}

BaseScalar BaseScalar::operator*(const BaseScalar& rhs) const
{
    check_compatible(rhs);
    BaseScalar out(ell_, preset_);
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : rhs.terms_)
            out.add_term(ScalarKey{ka.rho + kb.rho, ka.tau + kb.tau}, mul_mod(ca, cb, ell_));
    return out;
}

BaseScalar BaseScalar::operator-() const
{
    BaseScalar out(ell_, preset_);
    for (const auto& [k, c] : terms_)
        out.add_term(k, neg_mod(c, ell_));
    return out;
}

BaseScalar BaseScalar::scaled(Residue c) const
{
    BaseScalar out(ell_, preset_);
    for (const auto& [k, v] : terms_)
        out.add_term(k, mul_mod(v, c % ell_, ell_));
    return out;
}

Residue BaseScalar::specialize(Residue rho_value, Residue tau_value) const
{
    Residue total = 0;
    for (const auto& [k, c] : terms_) {
        Residue v = c;
        for (std::uint32_t i = 0; i < k.rho; ++i)
            v = mul_mod(v, rho_value % ell_, ell_);
        for (std::uint32_t i = 0; i < k.tau; ++i)
            v = mul_mod(v, tau_value % ell_, ell_);
        total = add_mod(total, v, ell_);
    }
    return total;
}

BaseScalar BaseScalar::bockstein() const
{
    // beta(rho^a tau^b) = b rho^{a+1} tau^{b-1}; zero unless b is odd mod 2.
    BaseScalar out(ell_, preset_);
    for (const auto& [k, c] : terms_) {
        if (k.tau == 0)
            continue;
        Residue factor = mul_mod(c, k.tau % ell_, ell_);
        out.add_term(ScalarKey{k.rho + 1, k.tau - 1}, factor);
    }
    return out;
}

bool BaseScalar::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    Bidegree d = key_bidegree(terms_.begin()->first);
    for (const auto& [k, c] : terms_)
        if (key_bidegree(k) != d)
            return false;
    return true;
}

Bidegree BaseScalar::bidegree() const
{
    if (terms_.empty() || !is_homogeneous())
        throw Error(ErrorCode::bad_argument, "scalar is zero or mixed-bidegree");
    return key_bidegree(terms_.begin()->first);
}

}  // namespace motsteen
