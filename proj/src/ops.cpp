#include "motsteen/ops.hpp"

#include <algorithm>

namespace motsteen {

OpGen OpGen::P(std::uint32_t i)
{
    if (i == 0)
        throw Error(ErrorCode::bad_argument, "P^0 is the identity and is never stored");
    return OpGen{i};
}

Bidegree gen_bidegree(OpGen g, std::uint32_t ell)
{
    if (g.is_beta())
        return {1, 0};
    long long i = g.power;
    long long e = ell - 1;
    return {2 * i * e, i * e};
}

std::optional<OpMonomial> OpMonomial::make(std::vector<OpGen> word)
{
    for (std::size_t k = 1; k < word.size(); ++k)
        if (word[k].is_beta() && word[k - 1].is_beta())
            return std::nullopt;  // beta beta = 0
    OpMonomial m;
    m.word_ = std::move(word);
    return m;
}

Bidegree OpMonomial::bidegree(std::uint32_t ell) const
{
    Bidegree d;
    for (OpGen g : word_)
        d += gen_bidegree(g, ell);
    return d;
}

bool WordLess::operator()(const OpMonomial& a, const OpMonomial& b) const
{
    Bidegree da = a.bidegree(ell), db = b.bidegree(ell);
    if (da.p != db.p)
        return da.p < db.p;
    if (da.q != db.q)
        return da.q < db.q;
    return a.word() < b.word();
}

namespace {

    // A letter is beta^{beta} P^i; a word is a run of letters plus an
    // optional trailing Bockstein.
    struct Letter {
        bool beta;
        std::uint32_t i;
        std::size_t gen_begin;  // index of the letter's first generator
    };

    struct LetterView {
        std::vector<Letter> letters;
        bool trailing_beta = false;
    };

    LetterView split_letters(const std::vector<OpGen>& w)
    {
        LetterView view;
        std::size_t k = 0;
        while (k < w.size()) {
            if (w[k].is_beta()) {
                if (k + 1 < w.size()) {
                    view.letters.push_back(Letter{true, w[k + 1].power, k});
                    k += 2;
                }
                else {
                    view.trailing_beta = true;
                    ++k;
                }
            }
            else {
                view.letters.push_back(Letter{false, w[k].power, k});
                ++k;
            }
        }
        return view;
    }

    bool pair_admissible(const Letter& left, const Letter& right, std::uint32_t ell)
    {
        return static_cast<std::uint64_t>(left.i) >=
               static_cast<std::uint64_t>(ell) * right.i + (right.beta ? 1 : 0);
    }

    // Index of the leftmost inadmissible adjacent letter pair, or npos.
    std::size_t leftmost_inadmissible(const LetterView& v, std::uint32_t ell)
    {
        for (std::size_t k = 0; k + 1 < v.letters.size(); ++k)
            if (!pair_admissible(v.letters[k], v.letters[k + 1], ell))
                return k;
        return static_cast<std::size_t>(-1);
    }

    // Sq^A as generators; Sq^0 is empty, Sq^1 is the bare Bockstein.
    std::vector<OpGen> sq_gens(std::uint64_t A)
    {
        std::vector<OpGen> out;
        if (A == 0)
            return out;
        if (A % 2 == 1)
            out.push_back(OpGen::bockstein());
        if (A / 2 > 0)
            out.push_back(OpGen::P(static_cast<std::uint32_t>(A / 2)));
        return out;
    }

    using TermList = std::vector<std::pair<BaseScalar, std::vector<OpGen>>>;

    void append_joined(std::vector<OpGen>& dst, const std::vector<OpGen>& a,
                       const std::vector<OpGen>& b)
    {
        dst = a;
        dst.insert(dst.end(), b.begin(), b.end());
    }

    // Sq^a Sq^b with 0 < a < 2b, the four parity cases. Coefficients pick up
    // tau^{t mod 2} and rho factors; in the closed preset rho is zero and the
    // rho terms drop out.
    TermList adem_rhs_l2(std::uint32_t ell, Preset preset, std::uint64_t a, std::uint64_t b)
    {
        TermList out;
        BaseScalar rho = preset == Preset::universal ? BaseScalar::rho(ell, preset)
                                                     : BaseScalar::zero(ell, preset);
        auto plain = [&](std::uint64_t t, Residue c) {
            std::vector<OpGen> w;
            append_joined(w, sq_gens(a + b - t), sq_gens(t));
            BaseScalar s = t % 2 == 1 ? BaseScalar::tau(ell, preset)
                                      : BaseScalar::one(ell, preset);
            // tau^{t mod 2} only occurs in the even/even case; other cases
            // pass c through unchanged.
            out.emplace_back(s.scaled(c), std::move(w));
        };
        auto untwisted = [&](std::uint64_t t, Residue c) {
            std::vector<OpGen> w;
            append_joined(w, sq_gens(a + b - t), sq_gens(t));
            out.emplace_back(BaseScalar::constant(ell, preset, c), std::move(w));
        };
        auto rho_term = [&](std::uint64_t t, Residue c) {
            if (rho.is_zero() || c == 0)
                return;
            std::vector<OpGen> w;
            append_joined(w, sq_gens(a + b - t - 1), sq_gens(t));
            out.emplace_back(rho.scaled(c), std::move(w));
        };

        bool a_even = a % 2 == 0, b_even = b % 2 == 0;
        for (std::uint64_t t = 0; t <= a / 2; ++t) {
            long long n = static_cast<long long>(b) - static_cast<long long>(t) - 1;
            long long k = static_cast<long long>(a) - 2 * static_cast<long long>(t);
            if (a_even && b_even) {
                if (Residue c = binom_mod(n, k, ell))
                    plain(t, c);
            }
            else if (a_even && !b_even) {
                if (Residue c = binom_mod(n, k, ell)) {
                    untwisted(t, c);
                    if (t % 2 == 1)
                        rho_term(t, c);
                }
            }
            else if (!a_even && b_even) {
                if (t % 2 == 0) {
                    if (Residue c = binom_mod(n, k, ell))
                        untwisted(t, c);
                }
                else if (Residue c = binom_mod(n, k - 1, ell)) {
                    rho_term(t, c);
                }
            }
            else {  // a odd, b odd
                if (t % 2 == 1)
                    if (Residue c = binom_mod(n, k, ell))
                        untwisted(t, c);
            }
        }
        return out;
    }

    // P^a P^b (eps = 0, 0 < a < lb) and P^a beta P^b (eps = 1, 0 < a <= lb)
    // at odd l. Coefficients are prime-field.
    TermList adem_rhs_odd(std::uint32_t ell, Preset preset, std::uint64_t a, bool eps,
                          std::uint64_t b)
    {
        TermList out;
        auto signed_coeff = [&](std::uint64_t sign_exp, Residue c) {
            return sign_exp % 2 == 1 ? neg_mod(c, ell) : c;
        };
        auto power_pair = [&](std::uint64_t t) {
            std::vector<OpGen> w;
            w.push_back(OpGen::P(static_cast<std::uint32_t>(a + b - t)));
            if (t > 0)
                w.push_back(OpGen::P(static_cast<std::uint32_t>(t)));
            return w;
        };
        long long e = ell - 1;
        if (!eps) {
            for (std::uint64_t t = 0; t <= a / ell; ++t) {
                long long n = e * (static_cast<long long>(b) - static_cast<long long>(t)) - 1;
                long long k = static_cast<long long>(a) - static_cast<long long>(ell) * t;
                Residue c = binom_mod(n, k, ell);
                if (!c)
                    continue;
                out.emplace_back(BaseScalar::constant(ell, preset, signed_coeff(a + t, c)),
                                 power_pair(t));
            }
            return out;
        }
        for (std::uint64_t t = 0; t <= a / ell; ++t) {
            long long n = e * (static_cast<long long>(b) - static_cast<long long>(t));
            long long k = static_cast<long long>(a) - static_cast<long long>(ell) * t;
            Residue c = binom_mod(n, k, ell);
            if (!c)
                continue;
            std::vector<OpGen> w;
            w.push_back(OpGen::bockstein());
            auto pp = power_pair(t);
            w.insert(w.end(), pp.begin(), pp.end());
            out.emplace_back(BaseScalar::constant(ell, preset, signed_coeff(a + t, c)),
                             std::move(w));
        }
        if (a >= 1) {
            for (std::uint64_t t = 0; t <= (a - 1) / ell; ++t) {
                long long n = e * (static_cast<long long>(b) - static_cast<long long>(t)) - 1;
                long long k =
                    static_cast<long long>(a) - static_cast<long long>(ell) * t - 1;
                Residue c = binom_mod(n, k, ell);
                if (!c)
                    continue;
                std::vector<OpGen> w;
                w.push_back(OpGen::P(static_cast<std::uint32_t>(a + b - t)));
                w.push_back(OpGen::bockstein());
                if (t > 0)
                    w.push_back(OpGen::P(static_cast<std::uint32_t>(t)));
                out.emplace_back(BaseScalar::constant(ell, preset, signed_coeff(a + t + 1, c)),
                                 std::move(w));
            }
        }
        return out;
    }

    // Expansion of the inadmissible pair formed by letters (dl,i) (dr,j).
    // At l = 2 the left Bockstein flag folds into the Sq exponent and is
    // consumed; at odd l the left flag must be handled by the caller.
    TermList pair_expansion(std::uint32_t ell, Preset preset, bool dl, std::uint32_t i, bool dr,
                            std::uint32_t j)
    {
        if (ell == 2)
            return adem_rhs_l2(ell, preset, 2ull * i + (dl ? 1 : 0), 2ull * j + (dr ? 1 : 0));
        return adem_rhs_odd(ell, preset, i, dr, j);
    }

}  // namespace

bool is_admissible(const OpMonomial& m, std::uint32_t ell)
{
    LetterView v = split_letters(m.word());
    return leftmost_inadmissible(v, ell) == static_cast<std::size_t>(-1);
}

OpElement::OpElement(std::uint32_t ell, Preset preset)
    : ell_(ell), preset_(preset), terms_(WordLess{ell})
{
    if (!is_prime(ell))
        throw Error(ErrorCode::bad_argument, "prime required");
    if (preset == Preset::universal && ell != 2)
        throw Error(ErrorCode::bad_argument, "universal preset requires l = 2");
}

OpElement OpElement::from_monomial(std::uint32_t ell, Preset preset, const OpMonomial& m,
                                   const BaseScalar& coeff)
{
    OpElement e(ell, preset);
    e.add_term(m, coeff);
    return e;
}

OpElement OpElement::from_monomial(std::uint32_t ell, Preset preset, const OpMonomial& m)
{
    return from_monomial(ell, preset, m, BaseScalar::one(ell, preset));
}

void OpElement::add_term(const OpMonomial& m, const BaseScalar& coeff)
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

OpElement OpElement::operator+(const OpElement& rhs) const
{
    if (ell_ != rhs.ell_ || preset_ != rhs.preset_)
        throw Error(ErrorCode::preset_mismatch, "element preset/prime mismatch");
    OpElement out = *this;
    for (const auto& [m, c] : rhs.terms_)
        out.add_term(m, c);
    return out;
}

OpElement OpElement::scaled(const BaseScalar& c) const
{
    OpElement out(ell_, preset_);
    for (const auto& [m, v] : terms_)
        out.add_term(m, v * c);
    return out;
}

bool operator==(const OpElement& a, const OpElement& b)
{
    return a.ell_ == b.ell_ && a.preset_ == b.preset_ &&
           std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end());
}

OpElement adem_step(std::uint32_t ell, Preset preset, const std::vector<OpGen>& left,
                    const std::vector<OpGen>& right)
{
    auto as_letter = [](const std::vector<OpGen>& run) -> Letter {
        if (run.size() == 1 && !run[0].is_beta())
            return Letter{false, run[0].power, 0};
        if (run.size() == 2 && run[0].is_beta() && !run[1].is_beta())
            return Letter{true, run[1].power, 0};
        throw Error(ErrorCode::bad_argument, "run must be P^i or beta P^i");
    };
    Letter l = as_letter(left), r = as_letter(right);
    if (ell != 2 && l.beta)
        throw Error(ErrorCode::bad_argument,
                    "no relation hypothesis matches a left Bockstein at odd l");
    if (pair_admissible(l, r, ell))
        throw Error(ErrorCode::bad_argument, "pair is already admissible");
    OpElement out(ell, preset);
    for (auto& [coeff, gens] : pair_expansion(ell, preset, l.beta, l.i, r.beta, r.i)) {
        auto mon = OpMonomial::make(std::move(gens));
        if (mon)
            out.add_term(*mon, coeff);
    }
    return out;
}

std::vector<std::pair<BaseScalar, std::vector<OpGen>>> commute_scalar_left(
    std::vector<OpGen> word, const BaseScalar& s)
{
    if (s.is_zero())
        return {};
    if (word.empty() || s.in_prime_field() || s.preset() == Preset::closed)
        return {{s, std::move(word)}};
    OpGen last = word.back();
    word.pop_back();
    if (!last.is_beta())
        throw Error(ErrorCode::unsupported_scalar_commutation,
                    "cannot commute rho/tau past a power operation in the universal preset");
    // beta (s x) = beta(s) x + s beta(x)
    std::vector<std::pair<BaseScalar, std::vector<OpGen>>> out;
    for (auto& [c, w] : commute_scalar_left(word, s.bockstein()))
        out.emplace_back(std::move(c), std::move(w));
    for (auto& [c, w] : commute_scalar_left(std::move(word), s)) {
        w.push_back(OpGen::bockstein());
        out.emplace_back(std::move(c), std::move(w));
    }
    return out;
}

OpElement normalize(const OpElement& e, std::uint64_t fuel)
{
    OpElement result(e.prime(), e.preset());
    const std::uint32_t ell = e.prime();
    std::vector<std::pair<BaseScalar, OpMonomial>> work;
    work.reserve(e.terms().size());
    for (const auto& [m, c] : e.terms())
        work.emplace_back(c, m);

    while (!work.empty()) {
        auto [coeff, mon] = std::move(work.back());
        work.pop_back();
        if (coeff.is_zero())
            continue;
        const std::vector<OpGen>& w = mon.word();
        LetterView view = split_letters(w);
        std::size_t k = leftmost_inadmissible(view, ell);
        if (k == static_cast<std::size_t>(-1)) {
            result.add_term(mon, coeff);
            continue;
        }
        if (fuel == 0)
            throw Error(ErrorCode::fuel_exhausted, "rewrite fuel exhausted");
        --fuel;

        const Letter& L = view.letters[k];
        const Letter& R = view.letters[k + 1];
        // At l = 2 the pair consumes the left letter's Bockstein flag; at odd
        // l that flag stays in the prefix.
        std::size_t seg_begin = ell == 2 ? L.gen_begin : L.gen_begin + (L.beta ? 1 : 0);
        std::size_t seg_end = R.gen_begin + (R.beta ? 2 : 1);
        std::vector<OpGen> prefix(w.begin(), w.begin() + seg_begin);
        std::vector<OpGen> suffix(w.begin() + seg_end, w.end());

        for (auto& [c_mid, mid] : pair_expansion(ell, e.preset(), ell == 2 && L.beta, L.i,
                                                 R.beta, R.i)) {
            for (auto& [c_out, pre] : commute_scalar_left(prefix, c_mid)) {
                std::vector<OpGen> gens = std::move(pre);
                gens.insert(gens.end(), mid.begin(), mid.end());
                gens.insert(gens.end(), suffix.begin(), suffix.end());
                auto next = OpMonomial::make(std::move(gens));
                if (!next)
                    continue;
                BaseScalar c_total = coeff * c_out;
                if (!c_total.is_zero())
                    work.emplace_back(std::move(c_total), std::move(*next));
            }
        }
    }
    return result;
}

OpElement multiply(const OpElement& x, const OpElement& y, std::uint64_t fuel)
{
    if (x.prime() != y.prime() || x.preset() != y.preset())
        throw Error(ErrorCode::preset_mismatch, "element preset/prime mismatch");
    OpElement raw(x.prime(), x.preset());
    for (const auto& [wx, cx] : x.terms()) {
        for (const auto& [wy, cy] : y.terms()) {
            for (auto& [c_mid, head] : commute_scalar_left(wx.word(), cy)) {
                std::vector<OpGen> gens = std::move(head);
                gens.insert(gens.end(), wy.word().begin(), wy.word().end());
                auto mon = OpMonomial::make(std::move(gens));
                if (!mon)
                    continue;
                raw.add_term(*mon, cx * c_mid);
            }
        }
    }
    return normalize(raw, fuel);
}

namespace {

    void basis_dfs(std::uint32_t ell, long long rem_p, long long rem_q, std::uint32_t last_power,
                   bool beta_pending, bool exact, std::vector<OpGen>& rev,
                   std::vector<OpMonomial>& out)
    {
        if (rem_p < 0 || rem_q < 0)
            return;
        if (!exact || (rem_p == 0 && rem_q == 0)) {
            std::vector<OpGen> w(rev.rbegin(), rev.rend());
            out.push_back(*OpMonomial::make(std::move(w)));
        }
        // Place a Bockstein to the left of what has been built.
        if (!beta_pending && rem_p >= 1) {
            rev.push_back(OpGen::bockstein());
            basis_dfs(ell, rem_p - 1, rem_q, last_power, true, exact, rev, out);
            rev.pop_back();
        }
        // Place the next power; admissibility bounds it from below.
        long long e = ell - 1;
        std::uint64_t lb = last_power == 0
                               ? 1
                               : static_cast<std::uint64_t>(ell) * last_power + (beta_pending ? 1 : 0);
        for (std::uint64_t i = lb; 2 * static_cast<long long>(i) * e <= rem_p &&
                                   static_cast<long long>(i) * e <= rem_q;
             ++i) {
            rev.push_back(OpGen::P(static_cast<std::uint32_t>(i)));
            basis_dfs(ell, rem_p - 2 * i * e, rem_q - i * e, static_cast<std::uint32_t>(i), false,
                      exact, rev, out);
            rev.pop_back();
        }
    }

}  // namespace

std::vector<OpMonomial> op_basis(long long p, long long q, std::uint32_t ell)
{
    std::vector<OpMonomial> out;
    if (p < 0 || q < 0)
        return out;
    std::vector<OpGen> rev;
    basis_dfs(ell, p, q, 0, false, true, rev, out);
    std::sort(out.begin(), out.end(), [&](const OpMonomial& a, const OpMonomial& b) {
        return WordLess{ell}(a, b);
    });
    return out;
}

std::vector<OpMonomial> admissibles_up_to_degree(long long max_p, std::uint32_t ell)
{
    std::vector<OpMonomial> out;
    if (max_p < 0)
        return out;
    std::vector<OpGen> rev;
    basis_dfs(ell, max_p, max_p, 0, false, false, rev, out);
    std::sort(out.begin(), out.end(), [&](const OpMonomial& a, const OpMonomial& b) {
        return WordLess{ell}(a, b);
    });
    return out;
}

}  // namespace motsteen
