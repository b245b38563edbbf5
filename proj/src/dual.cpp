#include "motsteen/dual.hpp"

#include <algorithm>
#include <bit>
#include <mutex>

#include "motsteen/error.hpp"

namespace motsteen {

namespace {

    // l^i with overflow guard; generator degrees must fit in 64 bits.
    std::uint64_t pow_checked(std::uint32_t ell, std::uint32_t e)
    {
        std::uint64_t r = 1;
        for (std::uint32_t k = 0; k < e; ++k) {
            if (r > (std::uint64_t(1) << 61) / ell)
                throw Error(ErrorCode::bad_argument, "generator degree overflows");
            r *= ell;
        }
        return r;
    }

    Bidegree tau_bidegree(std::uint32_t r, std::uint32_t ell)
    {
        long long lr = static_cast<long long>(pow_checked(ell, r));
        return {2 * lr - 1, lr - 1};
    }

    Bidegree xi_bidegree(std::uint32_t r, std::uint32_t ell)
    {
        long long lr = static_cast<long long>(pow_checked(ell, r));
        return {2 * lr - 2, lr - 1};
    }

    void check_index(std::uint32_t r)
    {
        if (r > kMaxGenIndex)
            throw Error(ErrorCode::bad_argument, "generator index exceeds supported range");
    }

    // Inversions between the odd generators of two monomials: pairs (i,j)
    // with tau_i from the left factor, tau_j from the right one and i > j.
    int tau_inversions(std::uint64_t left_mask, std::uint64_t right_mask)
    {
        int inv = 0;
        for (std::uint64_t m = right_mask; m; m &= m - 1) {
            int j = std::countr_zero(m);
            inv += std::popcount(left_mask >> (j + 1));
        }
        return inv;
    }

    BaseScalar tau_or_zero(std::uint32_t ell, Preset preset)
    {
        return ell == 2 ? BaseScalar::tau(ell, preset) : BaseScalar::zero(ell, preset);
    }

    BaseScalar rho_or_zero(std::uint32_t ell, Preset preset)
    {
        return preset == Preset::universal ? BaseScalar::rho(ell, preset)
                                           : BaseScalar::zero(ell, preset);
    }

    // Product of two coefficient-free monomials, with Koszul sign and the
    // tau_i^2 relation applied until all tau exponents are <= 1.
    GammaElement monomial_product(std::uint32_t ell, Preset preset, const MilnorMonomial& m1,
                                  const MilnorMonomial& m2)
    {
        GammaElement out(ell, preset);
        int inv = tau_inversions(m1.tau_mask(), m2.tau_mask());
        BaseScalar start = BaseScalar::one(ell, preset);
        if (inv % 2 == 1)
            start = -start;

        struct Item {
            BaseScalar c;
            std::vector<std::uint8_t> tau;
            std::vector<std::uint32_t> xi;
        };
        auto tau_vec = [](std::uint64_t mask) {
            std::vector<std::uint8_t> v;
            for (int r = 0; r < 64; ++r)
                if (mask >> r & 1) {
                    if (v.size() <= static_cast<std::size_t>(r))
                        v.resize(r + 1, 0);
                    v[r] = 1;
                }
            return v;
        };

        Item first{start, tau_vec(m1.tau_mask()), {}};
        {
            auto t2 = tau_vec(m2.tau_mask());
            if (first.tau.size() < t2.size())
                first.tau.resize(t2.size(), 0);
            for (std::size_t r = 0; r < t2.size(); ++r)
                first.tau[r] = static_cast<std::uint8_t>(first.tau[r] + t2[r]);
        }
        first.xi = m1.xi_exps();
        if (first.xi.size() < m2.xi_exps().size())
            first.xi.resize(m2.xi_exps().size(), 0);
        for (std::size_t k = 0; k < m2.xi_exps().size(); ++k)
            first.xi[k] += m2.xi_exps()[k];

        BaseScalar tau_s = tau_or_zero(ell, preset);
        BaseScalar rho_s = rho_or_zero(ell, preset);

        std::vector<Item> work{std::move(first)};
        while (!work.empty()) {
            Item it = std::move(work.back());
            work.pop_back();
            if (it.c.is_zero())
                continue;
            std::size_t sq = it.tau.size();
            for (std::size_t r = 0; r < it.tau.size(); ++r)
                if (it.tau[r] >= 2) {
                    sq = r;
                    break;
                }
            if (sq == it.tau.size()) {
                std::uint64_t mask = 0;
                for (std::size_t r = 0; r < it.tau.size(); ++r)
                    if (it.tau[r])
                        mask |= std::uint64_t(1) << r;
                out.add_term(MilnorMonomial::make(mask, it.xi), it.c);
                continue;
            }
            check_index(static_cast<std::uint32_t>(sq + 1));
            // tau_sq^2 = tau xi_{sq+1} + rho tau_{sq+1} + rho tau_0 xi_{sq+1};
            // exactly two copies are replaced (the exponent can sit at 3 when
            // a rho branch feeds an index that already carries a square).
            auto branch = [&](const BaseScalar& factor, bool add_tau_next, bool add_tau_zero,
                              bool add_xi_next) {
                if (factor.is_zero())
                    return;
                Item next = it;
                next.c = it.c * factor;
                next.tau[sq] = static_cast<std::uint8_t>(next.tau[sq] - 2);
                if (add_tau_next) {
                    if (next.tau.size() <= sq + 1)
                        next.tau.resize(sq + 2, 0);
                    ++next.tau[sq + 1];
                }
                if (add_tau_zero)
                    ++next.tau[0];
                if (add_xi_next) {
                    if (next.xi.size() <= sq)
                        next.xi.resize(sq + 1, 0);
                    ++next.xi[sq];
                }
                work.push_back(std::move(next));
            };
            branch(tau_s, false, false, true);
            branch(rho_s, true, false, false);
            branch(rho_s, false, true, true);
        }
        return out;
    }

    GammaElement gamma_pow(const GammaElement& g, std::uint32_t e)
    {
        GammaElement out = GammaElement::unit(g.prime(), g.preset());
        for (std::uint32_t k = 0; k < e; ++k)
            out = gamma_multiply(out, g);
        return out;
    }

}  // namespace

MilnorMonomial MilnorMonomial::tau_gen(std::uint32_t r)
{
    check_index(r);
    MilnorMonomial m;
    m.tau_mask_ = std::uint64_t(1) << r;
    return m;
}

MilnorMonomial MilnorMonomial::xi_gen(std::uint32_t r, std::uint32_t exp)
{
    if (r == 0)
        throw Error(ErrorCode::bad_argument, "xi_0 is the unit and is never stored");
    check_index(r);
    MilnorMonomial m;
    if (exp == 0)
        return m;
    m.xi_exps_.assign(r, 0);
    m.xi_exps_[r - 1] = exp;
    return m;
}

MilnorMonomial MilnorMonomial::make(std::uint64_t tau_mask, std::vector<std::uint32_t> xi_exps)
{
    while (!xi_exps.empty() && xi_exps.back() == 0)
        xi_exps.pop_back();
    if (tau_mask >> (kMaxGenIndex + 1))
        throw Error(ErrorCode::bad_argument, "generator index exceeds supported range");
    if (xi_exps.size() > kMaxGenIndex)
        throw Error(ErrorCode::bad_argument, "generator index exceeds supported range");
    MilnorMonomial m;
    m.tau_mask_ = tau_mask;
    m.xi_exps_ = std::move(xi_exps);
    return m;
}

Bidegree MilnorMonomial::bidegree(std::uint32_t ell) const
{
    Bidegree d;
    for (std::uint64_t m = tau_mask_; m; m &= m - 1)
        d += tau_bidegree(static_cast<std::uint32_t>(std::countr_zero(m)), ell);
    for (std::size_t k = 0; k < xi_exps_.size(); ++k) {
        Bidegree g = xi_bidegree(static_cast<std::uint32_t>(k + 1), ell);
        d.p += g.p * xi_exps_[k];
        d.q += g.q * xi_exps_[k];
    }
    return d;
}

int MilnorMonomial::parity() const
{
    return std::popcount(tau_mask_) & 1;
}

bool MilnorLess::operator()(const MilnorMonomial& a, const MilnorMonomial& b) const
{
    Bidegree da = a.bidegree(ell), db = b.bidegree(ell);
    if (da.p != db.p)
        return da.p < db.p;
    if (da.q != db.q)
        return da.q < db.q;
    if (a.xi_exps() != b.xi_exps())
        return a.xi_exps() < b.xi_exps();
    return a.tau_mask() < b.tau_mask();
}

GammaElement::GammaElement(std::uint32_t ell, Preset preset)
    : ell_(ell), preset_(preset), terms_(MilnorLess{ell})
{
    if (!is_prime(ell))
        throw Error(ErrorCode::bad_argument, "prime required");
    if (preset == Preset::universal && ell != 2)
        throw Error(ErrorCode::bad_argument, "universal preset requires l = 2");
}

GammaElement GammaElement::unit(std::uint32_t ell, Preset preset)
{
    return from_monomial(ell, preset, MilnorMonomial());
}

GammaElement GammaElement::from_monomial(std::uint32_t ell, Preset preset, const MilnorMonomial& m)
{
    return from_monomial(ell, preset, m, BaseScalar::one(ell, preset));
}

GammaElement GammaElement::from_monomial(std::uint32_t ell, Preset preset, const MilnorMonomial& m,
                                         const BaseScalar& coeff)
{
    GammaElement g(ell, preset);
    g.add_term(m, coeff);
    return g;
}

void GammaElement::add_term(const MilnorMonomial& m, const BaseScalar& coeff)
{
    if (coeff.prime() != ell_ || coeff.preset() != preset_)
        throw Error(ErrorCode::preset_mismatch, "coefficient preset/prime mismatch");
    if (coeff.is_zero())
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
        return;
    }
    it->second = it->second + coeff;
    if (it->second.is_zero())
        terms_.erase(it);
}

GammaElement GammaElement::operator+(const GammaElement& rhs) const
{
    if (ell_ != rhs.ell_ || preset_ != rhs.preset_)
        throw Error(ErrorCode::preset_mismatch, "element preset/prime mismatch");
    GammaElement out = *this;
    for (const auto& [m, c] : rhs.terms_)
        out.add_term(m, c);
    return out;
}

GammaElement GammaElement::scaled(const BaseScalar& c) const
{
    GammaElement out(ell_, preset_);
    for (const auto& [m, v] : terms_)
        out.add_term(m, v * c);
    return out;
}

bool operator==(const GammaElement& a, const GammaElement& b)
{
    return a.ell_ == b.ell_ && a.preset_ == b.preset_ &&
           std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end());
}

GammaElement gamma_multiply(const GammaElement& x, const GammaElement& y)
{
    if (x.prime() != y.prime() || x.preset() != y.preset())
        throw Error(ErrorCode::preset_mismatch, "element preset/prime mismatch");
    GammaElement out(x.prime(), x.preset());
    for (const auto& [m1, c1] : x.terms())
        for (const auto& [m2, c2] : y.terms()) {
            GammaElement p = monomial_product(x.prime(), x.preset(), m1, m2);
            for (const auto& [m, c] : p.terms())
                out.add_term(m, c * c1 * c2);
        }
    return out;
}

TensorElement::TensorElement(std::uint32_t ell, Preset preset) : ell_(ell), preset_(preset)
{
    if (!is_prime(ell))
        throw Error(ErrorCode::bad_argument, "prime required");
    if (preset == Preset::universal && ell != 2)
        throw Error(ErrorCode::bad_argument, "universal preset requires l = 2");
}

TensorElement TensorElement::unit(std::uint32_t ell, Preset preset)
{
    TensorElement t(ell, preset);
    t.add_term(MilnorMonomial(), MilnorMonomial(), BaseScalar::one(ell, preset));
    return t;
}

void TensorElement::add_term(const MilnorMonomial& left, const MilnorMonomial& right,
                             const BaseScalar& coeff)
{
    if (coeff.prime() != ell_ || coeff.preset() != preset_)
        throw Error(ErrorCode::preset_mismatch, "coefficient preset/prime mismatch");
    if (coeff.is_zero())
        return;
    Key key{left, right};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), coeff);
        return;
    }
    it->second = it->second + coeff;
    if (it->second.is_zero())
        terms_.erase(it);
}

TensorElement TensorElement::operator+(const TensorElement& rhs) const
{
    if (ell_ != rhs.ell_ || preset_ != rhs.preset_)
        throw Error(ErrorCode::preset_mismatch, "element preset/prime mismatch");
    TensorElement out = *this;
    for (const auto& [k, c] : rhs.terms_)
        out.add_term(k.first, k.second, c);
    return out;
}

bool operator==(const TensorElement& a, const TensorElement& b)
{
    return a.ell_ == b.ell_ && a.preset_ == b.preset_ && a.terms_ == b.terms_;
}

GammaElement eta_R_scalar(std::uint32_t ell, Preset preset, const BaseScalar& s)
{
    GammaElement out(ell, preset);
    // eta_R(tau) = tau + rho tau_0, eta_R(rho) = rho.
    GammaElement eta_tau(ell, preset);
    eta_tau.add_term(MilnorMonomial(), tau_or_zero(ell, preset));
    if (preset == Preset::universal)
        eta_tau.add_term(MilnorMonomial::tau_gen(0), rho_or_zero(ell, preset));
    for (const auto& [k, c] : s.terms()) {
        BaseScalar head = BaseScalar::monomial(ell, preset, k.rho, 0, c);
        GammaElement g = GammaElement::from_monomial(ell, preset, MilnorMonomial(), head);
        for (std::uint32_t b = 0; b < k.tau; ++b)
            g = gamma_multiply(g, eta_tau);
        out = out + g;
    }
    return out;
}

TensorElement tensor_normalize(std::uint32_t ell, Preset preset,
                               const std::vector<RawTensorTerm>& raw)
{
    TensorElement out(ell, preset);
    for (const RawTensorTerm& t : raw) {
        GammaElement eta = eta_R_scalar(ell, preset, t.right_coeff);
        for (const auto& [em, ec] : eta.terms()) {
            GammaElement left = monomial_product(ell, preset, t.left, em);
            for (const auto& [fm, fc] : left.terms())
                out.add_term(fm, t.right, t.left_coeff * ec * fc);
        }
    }
    return out;
}

TensorElement tensor_multiply(const TensorElement& x, const TensorElement& y)
{
    if (x.prime() != y.prime() || x.preset() != y.preset())
        throw Error(ErrorCode::preset_mismatch, "element preset/prime mismatch");
    const std::uint32_t ell = x.prime();
    const Preset preset = x.preset();
    TensorElement out(ell, preset);
    for (const auto& [k1, c1] : x.terms())
        for (const auto& [k2, c2] : y.terms()) {
            // Koszul sign for moving the right slot of x past the left slot
            // of y.
            BaseScalar c = c1 * c2;
            if ((k1.second.parity() & k2.first.parity()) != 0)
                c = -c;
            GammaElement left = monomial_product(ell, preset, k1.first, k2.first);
            GammaElement right = monomial_product(ell, preset, k1.second, k2.second);
            for (const auto& [rm, rc] : right.terms()) {
                GammaElement eta = eta_R_scalar(ell, preset, rc);
                for (const auto& [em, ec] : eta.terms())
                    for (const auto& [lm, lc] : left.terms()) {
                        GammaElement fixed = monomial_product(ell, preset, lm, em);
                        for (const auto& [fm, fc] : fixed.terms())
                            out.add_term(fm, rm, c * lc * ec * fc);
                    }
            }
        }
    return out;
}

namespace {

    TensorElement delta_tau_gen(std::uint32_t ell, Preset preset, std::uint32_t r)
    {
        TensorElement t(ell, preset);
        BaseScalar one = BaseScalar::one(ell, preset);
        t.add_term(MilnorMonomial::tau_gen(r), MilnorMonomial(), one);
        for (std::uint32_t i = 0; i <= r; ++i) {
            std::uint64_t e = pow_checked(ell, i);
            MilnorMonomial left = i == r ? MilnorMonomial()
                                         : MilnorMonomial::xi_gen(r - i, static_cast<std::uint32_t>(e));
            t.add_term(left, MilnorMonomial::tau_gen(i), one);
        }
        return t;
    }

    TensorElement delta_xi_gen(std::uint32_t ell, Preset preset, std::uint32_t r)
    {
        TensorElement t(ell, preset);
        BaseScalar one = BaseScalar::one(ell, preset);
        for (std::uint32_t i = 0; i <= r; ++i) {
            std::uint64_t e = pow_checked(ell, i);
            MilnorMonomial left = i == r ? MilnorMonomial()
                                         : MilnorMonomial::xi_gen(r - i, static_cast<std::uint32_t>(e));
            MilnorMonomial right = i == 0 ? MilnorMonomial() : MilnorMonomial::xi_gen(i);
            t.add_term(left, right, one);
        }
        return t;
    }

    std::mutex g_coproduct_mutex;
    std::map<std::tuple<std::uint32_t, int, MilnorMonomial>, TensorElement> g_coproduct_memo;

    TensorElement coproduct_monomial(std::uint32_t ell, Preset preset, const MilnorMonomial& m)
    {
        std::tuple<std::uint32_t, int, MilnorMonomial> key{ell, static_cast<int>(preset), m};
        {
            std::lock_guard<std::mutex> lock(g_coproduct_mutex);
            auto it = g_coproduct_memo.find(key);
            if (it != g_coproduct_memo.end())
                return it->second;
        }
        TensorElement t = TensorElement::unit(ell, preset);
        for (std::uint64_t mask = m.tau_mask(); mask; mask &= mask - 1)
            t = tensor_multiply(
                t, delta_tau_gen(ell, preset, static_cast<std::uint32_t>(std::countr_zero(mask))));
        for (std::size_t k = 0; k < m.xi_exps().size(); ++k) {
            if (m.xi_exps()[k] == 0)
                continue;
            TensorElement d = delta_xi_gen(ell, preset, static_cast<std::uint32_t>(k + 1));
            for (std::uint32_t e = 0; e < m.xi_exps()[k]; ++e)
                t = tensor_multiply(t, d);
        }
        std::lock_guard<std::mutex> lock(g_coproduct_mutex);
        g_coproduct_memo.emplace(std::move(key), t);
        return t;
    }

}  // namespace

TensorElement coproduct(const GammaElement& x)
{
    TensorElement out(x.prime(), x.preset());
    for (const auto& [m, c] : x.terms()) {
        TensorElement d = coproduct_monomial(x.prime(), x.preset(), m);
        for (const auto& [k, v] : d.terms())
            out.add_term(k.first, k.second, c * v);
    }
    return out;
}

BaseScalar counit(const GammaElement& x)
{
    BaseScalar out = BaseScalar::zero(x.prime(), x.preset());
    for (const auto& [m, c] : x.terms())
        if (m.is_unit())
            out = out + c;
    return out;
}

GammaElement antipode_xi_gen(std::uint32_t ell, Preset preset, std::uint32_t r)
{
    static std::mutex mutex;
    static std::map<std::tuple<std::uint32_t, int, std::uint32_t>, GammaElement> memo;
    if (r == 0)
        return GammaElement::unit(ell, preset);
    std::tuple<std::uint32_t, int, std::uint32_t> key{ell, static_cast<int>(preset), r};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
    }
    GammaElement acc =
        GammaElement::from_monomial(ell, preset, MilnorMonomial::xi_gen(r)).scaled(
            -BaseScalar::one(ell, preset));
    for (std::uint32_t i = 1; i < r; ++i) {
        std::uint64_t e = pow_checked(ell, i);
        GammaElement head = GammaElement::from_monomial(
            ell, preset, MilnorMonomial::xi_gen(r - i, static_cast<std::uint32_t>(e)));
        GammaElement prod = gamma_multiply(head, antipode_xi_gen(ell, preset, i));
        acc = acc + prod.scaled(-BaseScalar::one(ell, preset));
    }
    std::lock_guard<std::mutex> lock(mutex);
    memo.emplace(std::move(key), acc);
    return acc;
}

GammaElement antipode_tau_gen(std::uint32_t ell, Preset preset, std::uint32_t r)
{
    static std::mutex mutex;
    static std::map<std::tuple<std::uint32_t, int, std::uint32_t>, GammaElement> memo;
    std::tuple<std::uint32_t, int, std::uint32_t> key{ell, static_cast<int>(preset), r};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
    }
    GammaElement acc =
        GammaElement::from_monomial(ell, preset, MilnorMonomial::tau_gen(r)).scaled(
            -BaseScalar::one(ell, preset));
    for (std::uint32_t i = 0; i < r; ++i) {
        std::uint64_t e = pow_checked(ell, i);
        GammaElement head = GammaElement::from_monomial(
            ell, preset, MilnorMonomial::xi_gen(r - i, static_cast<std::uint32_t>(e)));
        GammaElement prod = gamma_multiply(head, antipode_tau_gen(ell, preset, i));
        acc = acc + prod.scaled(-BaseScalar::one(ell, preset));
    }
    std::lock_guard<std::mutex> lock(mutex);
    memo.emplace(std::move(key), acc);
    return acc;
}

GammaElement antipode(const GammaElement& x)
{
    const std::uint32_t ell = x.prime();
    const Preset preset = x.preset();
    GammaElement out(ell, preset);
    for (const auto& [m, c] : x.terms()) {
        // The coefficient rule c(tau) = tau + rho tau_0, c(rho) = rho agrees
        // with eta_R on coefficients.
        GammaElement g = eta_R_scalar(ell, preset, c);
        for (std::uint64_t mask = m.tau_mask(); mask; mask &= mask - 1)
            g = gamma_multiply(g, antipode_tau_gen(ell, preset,
                                                   static_cast<std::uint32_t>(std::countr_zero(mask))));
        for (std::size_t k = 0; k < m.xi_exps().size(); ++k)
            if (m.xi_exps()[k] > 0)
                g = gamma_multiply(g, gamma_pow(antipode_xi_gen(ell, preset,
                                                                static_cast<std::uint32_t>(k + 1)),
                                                m.xi_exps()[k]));
        out = out + g;
    }
    return out;
}

GammaElement collapse_left_counit(const TensorElement& t)
{
    GammaElement out(t.prime(), t.preset());
    for (const auto& [k, c] : t.terms())
        if (k.first.is_unit())
            out.add_term(k.second, c);
    return out;
}

GammaElement collapse_right_counit(const TensorElement& t)
{
    GammaElement out(t.prime(), t.preset());
    for (const auto& [k, c] : t.terms())
        if (k.second.is_unit())
            out.add_term(k.first, c);
    return out;
}

Tensor3 coproduct_left_then(const TensorElement& t)
{
    Tensor3 out;
    const std::uint32_t ell = t.prime();
    for (const auto& [k, c] : t.terms()) {
        TensorElement d = coproduct(GammaElement::from_monomial(ell, t.preset(), k.first));
        for (const auto& [dk, dc] : d.terms()) {
            BaseScalar v = c * dc;
            if (v.is_zero())
                continue;
            auto key = std::make_tuple(dk.first, dk.second, k.second);
            auto it = out.find(key);
            if (it == out.end())
                out.emplace(std::move(key), v);
            else {
                it->second = it->second + v;
                if (it->second.is_zero())
                    out.erase(it);
            }
        }
    }
    return out;
}

Tensor3 coproduct_right_then(const TensorElement& t)
{
    Tensor3 out;
    const std::uint32_t ell = t.prime();
    const Preset preset = t.preset();
    for (const auto& [k, c] : t.terms()) {
        TensorElement d = coproduct(GammaElement::from_monomial(ell, preset, k.second));
        for (const auto& [dk, dc] : d.terms()) {
            // dc belongs to the middle slot; transport it through the
            // leftmost factor via eta_R.
            GammaElement eta = eta_R_scalar(ell, preset, dc);
            for (const auto& [em, ec] : eta.terms()) {
                GammaElement left = monomial_product(ell, preset, k.first, em);
                for (const auto& [fm, fc] : left.terms()) {
                    BaseScalar v = c * ec * fc;
                    if (v.is_zero())
                        continue;
                    auto key = std::make_tuple(fm, dk.first, dk.second);
                    auto it = out.find(key);
                    if (it == out.end())
                        out.emplace(std::move(key), v);
                    else {
                        it->second = it->second + v;
                        if (it->second.is_zero())
                            out.erase(it);
                    }
                }
            }
        }
    }
    return out;
}

namespace {

    void milnor_dfs(std::uint32_t ell, std::uint32_t r, long long rem_p, long long rem_q,
                    std::uint64_t mask, std::vector<std::uint32_t>& xi,
                    std::vector<MilnorMonomial>& out)
    {
        if (rem_p < 0 || rem_q < 0)
            return;
        if (rem_p == 0 && rem_q == 0) {
            out.push_back(MilnorMonomial::make(mask, xi));
            return;
        }
        if (r > kMaxGenIndex)
            return;
        Bidegree td = tau_bidegree(r, ell);
        if (r >= 1) {
            Bidegree xd = xi_bidegree(r, ell);
            if (xd.p > rem_p && td.p > rem_p)
                return;  // every later generator is even larger
            long long smax = xd.p > 0 ? rem_p / xd.p : 0;
            for (long long s = 0; s <= smax; ++s) {
                if (s > 0) {
                    if (xi.size() < r)
                        xi.resize(r, 0);
                    xi[r - 1] = static_cast<std::uint32_t>(s);
                }
                for (int e = 0; e <= 1; ++e) {
                    long long p2 = rem_p - s * xd.p - e * td.p;
                    long long q2 = rem_q - s * xd.q - e * td.q;
                    std::uint64_t mask2 = e ? mask | (std::uint64_t(1) << r) : mask;
                    milnor_dfs(ell, r + 1, p2, q2, mask2, xi, out);
                }
            }
            if (xi.size() >= r)
                xi[r - 1] = 0;
            while (!xi.empty() && xi.back() == 0)
                xi.pop_back();
            return;
        }
        if (td.p > rem_p)
            return;
        for (int e = 0; e <= 1; ++e)
            milnor_dfs(ell, 1, rem_p - e * td.p, rem_q - e * td.q,
                       e ? mask | 1 : mask, xi, out);
    }

}  // namespace

std::vector<MilnorMonomial> milnor_basis(long long p, long long q, std::uint32_t ell)
{
    std::vector<MilnorMonomial> out;
    if (p < 0 || q < 0)
        return out;
    std::vector<std::uint32_t> xi;
    milnor_dfs(ell, 0, p, q, 0, xi, out);
    std::sort(out.begin(), out.end(), [&](const MilnorMonomial& a, const MilnorMonomial& b) {
        return MilnorLess{ell}(a, b);
    });
    return out;
}

std::vector<MilnorMonomial> milnor_monomials_of_degree(long long d, std::uint32_t ell)
{
    std::vector<MilnorMonomial> out;
    for (long long q = 0; q <= d; ++q) {
        auto part = milnor_basis(d, q, ell);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace motsteen
