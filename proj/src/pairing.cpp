#include "motsteen/pairing.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

namespace motsteen {

namespace {

    void require_closed(Preset preset)
    {
        if (preset != Preset::closed)
            throw Error(ErrorCode::unsupported_scalar_commutation,
                        "pairing is only defined in the closed presets");
    }

    // <g, m> on single letters.
    BaseScalar single_pair(OpGen g, const MilnorMonomial& m, std::uint32_t ell, Preset preset)
    {
        bool hit = g.is_beta() ? m == MilnorMonomial::tau_gen(0)
                               : m == MilnorMonomial::xi_gen(1, g.power);
        return hit ? BaseScalar::one(ell, preset) : BaseScalar::zero(ell, preset);
    }

    std::mutex g_pair_mutex;
    std::map<std::tuple<std::uint32_t, int, OpMonomial, MilnorMonomial>, BaseScalar> g_pair_memo;

    int conv_key(PairingConvention conv)
    {
        return (conv.leftmost_to_left_slot ? 1 : 0) | (conv.koszul_sign ? 2 : 0);
    }

}  // namespace

BaseScalar pair_value(const OpMonomial& w, const MilnorMonomial& m, std::uint32_t ell,
                      Preset preset, PairingConvention conv)
{
    require_closed(preset);
    if (w.is_identity()) {
        return m.is_unit() ? BaseScalar::one(ell, preset) : BaseScalar::zero(ell, preset);
    }
    // Cheap pruning: first degrees must match exactly (tau shifts only move
    // the weight).
    if (w.bidegree(ell).p != m.bidegree(ell).p)
        return BaseScalar::zero(ell, preset);
    std::tuple<std::uint32_t, int, OpMonomial, MilnorMonomial> key{
        ell, conv_key(conv) | (static_cast<int>(preset) << 2), w, m};
    {
        std::lock_guard<std::mutex> lock(g_pair_mutex);
        auto it = g_pair_memo.find(key);
        if (it != g_pair_memo.end())
            return it->second;
    }
    OpGen head = w.word().front();
    OpMonomial rest = *OpMonomial::make(
        std::vector<OpGen>(w.word().begin() + 1, w.word().end()));
    TensorElement d = coproduct(GammaElement::from_monomial(ell, preset, m));
    BaseScalar acc = BaseScalar::zero(ell, preset);
    for (const auto& [k, c] : d.terms()) {
        const MilnorMonomial& left = k.first;
        const MilnorMonomial& right = k.second;
        const MilnorMonomial& head_slot = conv.leftmost_to_left_slot ? left : right;
        const MilnorMonomial& rest_slot = conv.leftmost_to_left_slot ? right : left;
        BaseScalar a = single_pair(head, head_slot, ell, preset);
        if (a.is_zero())
            continue;
        BaseScalar b = pair_value(rest, rest_slot, ell, preset, conv);
        if (b.is_zero())
            continue;
        BaseScalar term = c * a * b;
        if (conv.koszul_sign && (left.parity() & right.parity()) != 0)
            term = -term;
        acc = acc + term;
    }
    std::lock_guard<std::mutex> lock(g_pair_mutex);
    g_pair_memo.emplace(std::move(key), acc);
    return acc;
}

BaseScalar pair_element(const OpElement& e, const MilnorMonomial& m, PairingConvention conv)
{
    BaseScalar acc = BaseScalar::zero(e.prime(), e.preset());
    for (const auto& [w, c] : e.terms())
        acc = acc + c * pair_value(w, m, e.prime(), e.preset(), conv);
    return acc;
}

DualFunctional::DualFunctional(std::uint32_t ell, Preset preset)
    : ell_(ell), preset_(preset), values_(MilnorLess{ell})
{
    require_closed(preset);
}

DualFunctional DualFunctional::of(const OpElement& e, PairingConvention conv)
{
    DualFunctional f(e.prime(), e.preset());
    for (const auto& [w, c] : e.terms())
        f.degrees_.insert(w.bidegree(e.prime()).p);
    for (long long d : f.degrees_)
        for (const MilnorMonomial& m : milnor_monomials_of_degree(d, e.prime())) {
            BaseScalar v = pair_element(e, m, conv);
            if (!v.is_zero())
                f.values_.emplace(m, v);
        }
    return f;
}

BaseScalar DualFunctional::evaluate(const MilnorMonomial& m) const
{
    auto it = values_.find(m);
    return it == values_.end() ? BaseScalar::zero(ell_, preset_) : it->second;
}

void DualFunctional::set_value(const MilnorMonomial& m, const BaseScalar& v)
{
    if (v.is_zero())
        values_.erase(m);
    else
        values_.insert_or_assign(m, v);
}

bool operator==(const DualFunctional& a, const DualFunctional& b)
{
    return a.ell_ == b.ell_ && a.preset_ == b.preset_ &&
           std::equal(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end());
}

DualFunctional convolution_multiply(const DualFunctional& f, const DualFunctional& g,
                                    PairingConvention conv)
{
    if (f.prime() != g.prime() || f.preset() != g.preset())
        throw Error(ErrorCode::preset_mismatch, "functional preset/prime mismatch");
    const std::uint32_t ell = f.prime();
    const Preset preset = f.preset();
    DualFunctional out(ell, preset);
    for (long long df : f.degrees())
        for (long long dg : g.degrees())
            out.add_degree(df + dg);
    for (long long d : out.degrees()) {
        for (const MilnorMonomial& m : milnor_monomials_of_degree(d, ell)) {
            TensorElement delta = coproduct(GammaElement::from_monomial(ell, preset, m));
            BaseScalar acc = BaseScalar::zero(ell, preset);
            for (const auto& [k, c] : delta.terms()) {
                const MilnorMonomial& fslot = conv.leftmost_to_left_slot ? k.first : k.second;
                const MilnorMonomial& gslot = conv.leftmost_to_left_slot ? k.second : k.first;
                BaseScalar a = f.evaluate(fslot);
                if (a.is_zero())
                    continue;
                BaseScalar b = g.evaluate(gslot);
                if (b.is_zero())
                    continue;
                BaseScalar term = c * a * b;
                if (conv.koszul_sign && (k.first.parity() & k.second.parity()) != 0)
                    term = -term;
                acc = acc + term;
            }
            if (!acc.is_zero())
                out.set_value(m, acc);
        }
    }
    return out;
}

FpMatrix pairing_matrix(long long p, long long q, std::uint32_t ell, PairingConvention conv)
{
    std::vector<OpMonomial> rows = op_basis(p, q, ell);
    std::vector<MilnorMonomial> cols = milnor_basis(p, q, ell);
    if (rows.size() != cols.size())
        throw Error(ErrorCode::internal, "basis size mismatch between the two models");
    FpMatrix m(rows.size(), std::vector<Residue>(cols.size(), 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m[i][j] = pair_value(rows[i], cols[j], ell, Preset::closed, conv).constant_term();
    return m;
}

bool matrix_invertible(FpMatrix m, std::uint32_t ell)
{
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n)
            throw Error(ErrorCode::bad_argument, "matrix is not square");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] % ell == 0)
            ++pivot;
        if (pivot == n)
            return false;
        std::swap(m[col], m[pivot]);
        Residue inv = inv_mod(m[col][col], ell);
        for (std::size_t r = col + 1; r < n; ++r) {
            Residue factor = mul_mod(m[r][col], inv, ell);
            if (factor == 0)
                continue;
            for (std::size_t c = col; c < n; ++c)
                m[r][c] = add_mod(m[r][c], mul_mod(neg_mod(factor, ell), m[col][c], ell), ell);
        }
    }
    return true;
}

}  // namespace motsteen
