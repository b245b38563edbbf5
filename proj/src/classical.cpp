#include "motsteen/classical.hpp"

#include <algorithm>
#include <vector>

namespace motsteen {

ClassicalElement::ClassicalElement(std::uint32_t ell) : ell_(ell), terms_(WordLess{ell})
{
    if (!is_prime(ell))
        throw Error(ErrorCode::bad_argument, "prime required");
}

ClassicalElement ClassicalElement::from_monomial(std::uint32_t ell, const OpMonomial& m,
                                                 Residue coeff)
{
    ClassicalElement e(ell);
    e.add_term(m, coeff);
    return e;
}

void ClassicalElement::add_term(const OpMonomial& m, Residue coeff)
{
    coeff %= ell_;
    if (coeff == 0)
        return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, coeff);
        return;
    }
    it->second = add_mod(it->second, coeff, ell_);
    if (it->second == 0)
        terms_.erase(it);
}

ClassicalElement ClassicalElement::operator+(const ClassicalElement& rhs) const
{
    if (ell_ != rhs.ell_)
        throw Error(ErrorCode::preset_mismatch, "prime mismatch");
    ClassicalElement out = *this;
    for (const auto& [m, c] : rhs.terms_)
        out.add_term(m, c);
    return out;
}

bool operator==(const ClassicalElement& a, const ClassicalElement& b)
{
    return a.ell_ == b.ell_ &&
           std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end());
}

namespace {

    // The l = 2 engine works on sequences of Sq exponents.
    using SqWord = std::vector<std::uint64_t>;

    SqWord to_sq_word(const OpMonomial& m)
    {
        SqWord out;
        const auto& w = m.word();
        std::size_t k = 0;
        while (k < w.size()) {
            if (w[k].is_beta()) {
                if (k + 1 < w.size() && !w[k + 1].is_beta()) {
                    out.push_back(2ull * w[k + 1].power + 1);
                    k += 2;
                }
                else {
                    out.push_back(1);
                    ++k;
                }
            }
            else {
                out.push_back(2ull * w[k].power);
                ++k;
            }
        }
        return out;
    }

    OpMonomial from_sq_word(const SqWord& sq)
    {
        std::vector<OpGen> gens;
        for (std::uint64_t a : sq) {
            if (a % 2 == 1)
                gens.push_back(OpGen::bockstein());
            if (a / 2 > 0)
                gens.push_back(OpGen::P(static_cast<std::uint32_t>(a / 2)));
        }
        auto m = OpMonomial::make(std::move(gens));
        if (!m)
            throw Error(ErrorCode::internal, "Sq word produced beta beta");
        return *m;
    }

    void normalize_sq2(std::map<SqWord, Residue>& acc, SqWord start, Residue coeff,
                       std::uint64_t& fuel)
    {
        std::vector<std::pair<Residue, SqWord>> work{{coeff, std::move(start)}};
        while (!work.empty()) {
            auto [c, w] = std::move(work.back());
            work.pop_back();
            std::size_t bad = w.size();
            for (std::size_t k = w.size(); k >= 2; --k)
                if (w[k - 2] < 2 * w[k - 1]) {
                    bad = k - 2;
                    break;
                }
            if (bad == w.size()) {
                auto [it, inserted] = acc.emplace(w, c);
                if (!inserted) {
                    it->second = (it->second + c) % 2;
                    if (it->second == 0)
                        acc.erase(it);
                }
                continue;
            }
            if (fuel == 0)
                throw Error(ErrorCode::fuel_exhausted, "rewrite fuel exhausted");
            --fuel;
            std::uint64_t a = w[bad], b = w[bad + 1];
            for (std::uint64_t t = 0; t <= a / 2; ++t) {
                if (binom_mod(static_cast<long long>(b) - static_cast<long long>(t) - 1,
                              static_cast<long long>(a) - 2 * static_cast<long long>(t), 2) == 0)
                    continue;
                SqWord next(w.begin(), w.begin() + bad);
                next.push_back(a + b - t);
                if (t > 0)
                    next.push_back(t);
                next.insert(next.end(), w.begin() + bad + 2, w.end());
                work.emplace_back(c, std::move(next));
            }
        }
    }

    // The odd-primary engine works on words over {beta} u {P^i}, encoded as
    // 0 for beta and i for P^i.
    using PWord = std::vector<std::uint64_t>;

    PWord to_p_word(const OpMonomial& m)
    {
        PWord out;
        for (OpGen g : m.word())
            out.push_back(g.is_beta() ? 0 : g.power);
        return out;
    }

    OpMonomial from_p_word(const PWord& w)
    {
        std::vector<OpGen> gens;
        for (std::uint64_t x : w)
            gens.push_back(x == 0 ? OpGen::bockstein() : OpGen::P(static_cast<std::uint32_t>(x)));
        auto m = OpMonomial::make(std::move(gens));
        if (!m)
            throw Error(ErrorCode::internal, "odd-primary splice left beta beta uncollapsed");
        return *m;
    }

    struct OddPair {
        std::size_t begin;  // index of P^a
        std::size_t end;    // one past P^b
        std::uint64_t a, b;
        bool bockstein;
    };

    // Rightmost pair P^a [beta] P^b violating a >= l b + eps.
    bool rightmost_bad_pair(const PWord& w, std::uint32_t ell, OddPair& out)
    {
        std::size_t k = w.size();
        while (k > 0) {
            --k;
            if (w[k] == 0)
                continue;
            // w[k] = P^b; look left for the preceding power.
            std::size_t j = k;
            bool eps = false;
            if (j > 0 && w[j - 1] == 0) {
                eps = true;
                --j;
            }
            if (j == 0)
                continue;
            std::uint64_t a = w[j - 1];
            if (a == 0)
                continue;  // beta beta cannot occur in stored words
            std::uint64_t b = w[k];
            if (a < static_cast<std::uint64_t>(ell) * b + (eps ? 1 : 0)) {
                out = OddPair{j - 1, k + 1, a, b, eps};
                return true;
            }
        }
        return false;
    }

    void splice_odd(std::vector<std::pair<Residue, PWord>>& work, const PWord& w,
                    const OddPair& pair, Residue c, std::uint32_t ell)
    {
        auto push = [&](Residue coeff, const PWord& mid) {
            if (coeff == 0)
                return;
            PWord next(w.begin(), w.begin() + pair.begin);
            // collapse a beta meeting a beta across the splice boundary
            if (!mid.empty() && mid.front() == 0 && !next.empty() && next.back() == 0)
                return;
            next.insert(next.end(), mid.begin(), mid.end());
            std::size_t tail = pair.end;
            if (!next.empty() && next.back() == 0 && tail < w.size() && w[tail] == 0)
                return;
            next.insert(next.end(), w.begin() + tail, w.end());
            work.emplace_back(mul_mod(coeff, c, ell), std::move(next));
        };
        const long long e = ell - 1;
        const std::uint64_t a = pair.a, b = pair.b;
        auto sgn = [&](std::uint64_t exp, Residue v) {
            return exp % 2 == 1 ? neg_mod(v, ell) : v;
        };
        if (!pair.bockstein) {
            for (std::uint64_t t = 0; t <= a / ell; ++t) {
                Residue v = binom_mod(e * (static_cast<long long>(b) - static_cast<long long>(t)) - 1,
                                      static_cast<long long>(a - ell * t), ell);
                if (!v)
                    continue;
                PWord mid{a + b - t};
                if (t > 0)
                    mid.push_back(t);
                push(sgn(a + t, v), mid);
            }
            return;
        }
        for (std::uint64_t t = 0; t <= a / ell; ++t) {
            Residue v = binom_mod(e * (static_cast<long long>(b) - static_cast<long long>(t)),
                                  static_cast<long long>(a - ell * t), ell);
            if (!v)
                continue;
            PWord mid{0, a + b - t};
            if (t > 0)
                mid.push_back(t);
            push(sgn(a + t, v), mid);
        }
        for (std::uint64_t t = 0; t * ell + 1 <= a; ++t) {
            Residue v = binom_mod(e * (static_cast<long long>(b) - static_cast<long long>(t)) - 1,
                                  static_cast<long long>(a - ell * t - 1), ell);
            if (!v)
                continue;
            PWord mid{a + b - t, 0};
            if (t > 0)
                mid.push_back(t);
            push(sgn(a + t + 1, v), mid);
        }
    }

    void normalize_odd(std::map<PWord, Residue>& acc, PWord start, Residue coeff,
                       std::uint32_t ell, std::uint64_t& fuel)
    {
        std::vector<std::pair<Residue, PWord>> work{{coeff, std::move(start)}};
        while (!work.empty()) {
            auto [c, w] = std::move(work.back());
            work.pop_back();
            OddPair pair;
            if (!rightmost_bad_pair(w, ell, pair)) {
                auto [it, inserted] = acc.emplace(w, c);
                if (!inserted) {
                    it->second = add_mod(it->second, c, ell);
                    if (it->second == 0)
                        acc.erase(it);
                }
                continue;
            }
            if (fuel == 0)
                throw Error(ErrorCode::fuel_exhausted, "rewrite fuel exhausted");
            --fuel;
            splice_odd(work, w, pair, c, ell);
        }
    }

}  // namespace

ClassicalElement classical_normalize(const ClassicalElement& e, std::uint64_t fuel)
{
    const std::uint32_t ell = e.prime();
    ClassicalElement out(ell);
    if (ell == 2) {
        std::map<SqWord, Residue> acc;
        for (const auto& [m, c] : e.terms())
            normalize_sq2(acc, to_sq_word(m), c, fuel);
        for (const auto& [w, c] : acc)
            out.add_term(from_sq_word(w), c);
        return out;
    }
    std::map<PWord, Residue> acc;
    for (const auto& [m, c] : e.terms())
        normalize_odd(acc, to_p_word(m), c, ell, fuel);
    for (const auto& [w, c] : acc)
        out.add_term(from_p_word(w), c);
    return out;
}

ClassicalElement classical_multiply(const ClassicalElement& x, const ClassicalElement& y,
                                    std::uint64_t fuel)
{
    if (x.prime() != y.prime())
        throw Error(ErrorCode::preset_mismatch, "prime mismatch");
    ClassicalElement raw(x.prime());
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms()) {
            std::vector<OpGen> gens = wx.word();
            gens.insert(gens.end(), wy.word().begin(), wy.word().end());
            auto m = OpMonomial::make(std::move(gens));
            if (m)
                raw.add_term(*m, mul_mod(cx, cy, x.prime()));
        }
    return classical_normalize(raw, fuel);
}

ClassicalElement realize(const OpElement& e)
{
    ClassicalElement out(e.prime());
    for (const auto& [m, c] : e.terms())
        out.add_term(m, c.specialize(0, 1));
    return out;
}

}  // namespace motsteen
