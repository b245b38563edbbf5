#include "motsteen/text.hpp"

#include <cctype>
#include <sstream>

namespace motsteen {

const char* mode_name(Mode m)
{
    switch (m) {
        case Mode::op: return "op";
        case Mode::dual: return "dual";
        case Mode::classical: return "classical";
    }
    return "?";
}

Mode mode_from_name(std::string_view name)
{
    if (name == "op")
        return Mode::op;
    if (name == "dual")
        return Mode::dual;
    if (name == "classical")
        return Mode::classical;
    throw Error(ErrorCode::bad_argument, "unknown mode: " + std::string(name));
}

namespace {

    struct Cursor {
        std::string_view s;
        std::size_t i = 0;

        void skip_ws()
        {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
                ++i;
        }
        bool done()
        {
            skip_ws();
            return i >= s.size();
        }
        char peek()
        {
            skip_ws();
            return s[i];
        }
    };

    [[noreturn]] void fail(std::size_t pos, const std::string& msg)
    {
        throw Error(ErrorCode::parse, msg + " (offset " + std::to_string(pos) + ")", pos);
    }

    std::uint64_t read_digits(Cursor& c, const char* what)
    {
        c.skip_ws();
        std::size_t start = c.i;
        if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
            fail(start, std::string("expected digits after ") + what);
        std::uint64_t v = 0;
        while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            v = v * 10 + (c.s[c.i] - '0');
            if (v > (std::uint64_t(1) << 40))
                fail(start, "number too large");
            ++c.i;
        }
        return v;
    }

    // Immediately-following digits (no whitespace), as in `t0` or `P3`.
    bool peek_digit_no_ws(const Cursor& c)
    {
        return c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]));
    }

    std::uint64_t read_exponent(Cursor& c)
    {
        c.skip_ws();
        if (c.i < c.s.size() && c.s[c.i] == '^') {
            ++c.i;
            return read_digits(c, "'^'");
        }
        return 1;
    }

    struct ScalarAtoms {
        BaseScalar coeff;
        bool any = false;
    };

    void scalar_integer(ScalarAtoms& sc, std::uint64_t v, std::uint32_t ell, Preset preset)
    {
        sc.coeff = sc.coeff * BaseScalar::constant(ell, preset, static_cast<long long>(v % ell));
        sc.any = true;
    }

}  // namespace

OpElement parse_op(std::string_view text, std::uint32_t ell, Preset preset)
{
    OpElement out(ell, preset);
    Cursor c{text};
    if (c.done())
        fail(0, "empty input");
    bool expect_term = true;
    while (expect_term) {
        ScalarAtoms sc{BaseScalar::one(ell, preset), false};
        std::vector<OpGen> word;
        bool any_atom = false;
        while (!c.done() && c.peek() != '+') {
            std::size_t pos = c.i;
            char ch = c.peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                if (!word.empty())
                    fail(pos, "coefficients must precede generators");
                scalar_integer(sc, read_digits(c, "digit"), ell, preset);
            }
            else if (ch == 'S') {
                ++c.i;
                if (c.i >= c.s.size() || c.s[c.i] != 'q')
                    fail(pos, "unknown token; did you mean Sq<k>?");
                ++c.i;
                std::uint64_t k = read_digits(c, "Sq");
                if (ell != 2)
                    fail(pos, "Sq notation requires l = 2");
                if (k == 0)
                    fail(pos, "Sq0 is the identity and is rejected");
                if (k % 2 == 1)
                    word.push_back(OpGen::bockstein());
                if (k / 2 > 0)
                    word.push_back(OpGen::P(static_cast<std::uint32_t>(k / 2)));
            }
            else if (ch == 'P') {
                ++c.i;
                std::uint64_t i = read_digits(c, "P");
                if (i == 0)
                    fail(pos, "P0 is the identity and is rejected");
                word.push_back(OpGen::P(static_cast<std::uint32_t>(i)));
            }
            else if (ch == 'b') {
                ++c.i;
                word.push_back(OpGen::bockstein());
            }
            else if (ch == 'r') {
                ++c.i;
                if (!word.empty())
                    fail(pos, "coefficients must precede generators");
                if (preset != Preset::universal)
                    fail(pos, "rho requires the universal preset");
                std::uint64_t e = read_exponent(c);
                sc.coeff = sc.coeff * BaseScalar::monomial(ell, preset,
                                                           static_cast<std::uint32_t>(e), 0, 1);
                sc.any = true;
            }
            else if (ch == 't') {
                ++c.i;
                if (!word.empty())
                    fail(pos, "coefficients must precede generators");
                if (ell != 2)
                    fail(pos, "tau requires l = 2");
                std::uint64_t e = read_exponent(c);
                sc.coeff = sc.coeff * BaseScalar::monomial(ell, preset, 0,
                                                           static_cast<std::uint32_t>(e), 1);
                sc.any = true;
            }
            else {
                fail(pos, std::string("unexpected character '") + ch + "'");
            }
            any_atom = true;
        }
        if (!any_atom)
            fail(c.i, "empty term");
        auto mon = OpMonomial::make(std::move(word));
        if (mon)
            out.add_term(*mon, sc.coeff);
        expect_term = false;
        if (!c.done() && c.peek() == '+') {
            ++c.i;
            expect_term = true;
        }
    }
    if (!c.done())
        fail(c.i, "trailing input");
    return out;
}

GammaElement parse_dual(std::string_view text, std::uint32_t ell, Preset preset)
{
    GammaElement out(ell, preset);
    Cursor c{text};
    if (c.done())
        fail(0, "empty input");
    bool expect_term = true;
    while (expect_term) {
        ScalarAtoms sc{BaseScalar::one(ell, preset), false};
        GammaElement mono = GammaElement::unit(ell, preset);
        bool seen_gen = false;
        bool any_atom = false;
        while (!c.done() && c.peek() != '+') {
            std::size_t pos = c.i;
            char ch = c.peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                if (seen_gen)
                    fail(pos, "coefficients must precede generators");
                scalar_integer(sc, read_digits(c, "digit"), ell, preset);
            }
            else if (ch == 'r') {
                ++c.i;
                if (seen_gen)
                    fail(pos, "coefficients must precede generators");
                if (preset != Preset::universal)
                    fail(pos, "rho requires the universal preset");
                std::uint64_t e = read_exponent(c);
                sc.coeff = sc.coeff * BaseScalar::monomial(ell, preset,
                                                           static_cast<std::uint32_t>(e), 0, 1);
                sc.any = true;
            }
            else if (ch == 't') {
                ++c.i;
                if (peek_digit_no_ws(c)) {
                    std::uint64_t r = read_digits(c, "t");
                    std::uint64_t e = read_exponent(c);
                    if (r > kMaxGenIndex)
                        fail(pos, "generator index out of range");
                    GammaElement gen = GammaElement::from_monomial(
                        ell, preset, MilnorMonomial::tau_gen(static_cast<std::uint32_t>(r)));
                    for (std::uint64_t k = 0; k < e; ++k)
                        mono = gamma_multiply(mono, gen);
                    seen_gen = true;
                }
                else {
                    if (seen_gen)
                        fail(pos, "coefficients must precede generators");
                    if (ell != 2)
                        fail(pos, "tau requires l = 2");
                    std::uint64_t e = read_exponent(c);
                    sc.coeff = sc.coeff * BaseScalar::monomial(ell, preset, 0,
                                                               static_cast<std::uint32_t>(e), 1);
                    sc.any = true;
                }
            }
            else if (ch == 'x') {
                ++c.i;
                std::uint64_t r = read_digits(c, "x");
                if (r == 0)
                    fail(pos, "x0 is the unit and is rejected");
                if (r > kMaxGenIndex)
                    fail(pos, "generator index out of range");
                std::uint64_t e = read_exponent(c);
                mono = gamma_multiply(mono, GammaElement::from_monomial(
                                                ell, preset,
                                                MilnorMonomial::xi_gen(static_cast<std::uint32_t>(r),
                                                                       static_cast<std::uint32_t>(e))));
                seen_gen = true;
            }
            else {
                fail(pos, std::string("unexpected character '") + ch + "' in dual mode");
            }
            any_atom = true;
        }
        if (!any_atom)
            fail(c.i, "empty term");
        out = out + mono.scaled(sc.coeff);
        expect_term = false;
        if (!c.done() && c.peek() == '+') {
            ++c.i;
            expect_term = true;
        }
    }
    if (!c.done())
        fail(c.i, "trailing input");
    return out;
}

ClassicalElement parse_classical(std::string_view text, std::uint32_t ell)
{
    ClassicalElement out(ell);
    Cursor c{text};
    if (c.done())
        fail(0, "empty input");
    bool expect_term = true;
    while (expect_term) {
        Residue coeff = 1;
        std::vector<OpGen> word;
        bool any_atom = false;
        while (!c.done() && c.peek() != '+') {
            std::size_t pos = c.i;
            char ch = c.peek();
            if (std::isdigit(static_cast<unsigned char>(ch))) {
                if (!word.empty())
                    fail(pos, "coefficients must precede generators");
                coeff = mul_mod(coeff, static_cast<Residue>(read_digits(c, "digit") % ell), ell);
            }
            else if (ch == 'S') {
                ++c.i;
                if (c.i >= c.s.size() || c.s[c.i] != 'q')
                    fail(pos, "unknown token; did you mean Sq<k>?");
                ++c.i;
                std::uint64_t k = read_digits(c, "Sq");
                if (ell != 2)
                    fail(pos, "Sq notation requires l = 2");
                if (k == 0)
                    fail(pos, "Sq0 is the identity and is rejected");
                if (k % 2 == 1)
                    word.push_back(OpGen::bockstein());
                if (k / 2 > 0)
                    word.push_back(OpGen::P(static_cast<std::uint32_t>(k / 2)));
            }
            else if (ch == 'P') {
                ++c.i;
                std::uint64_t i = read_digits(c, "P");
                if (i == 0)
                    fail(pos, "P0 is the identity and is rejected");
                word.push_back(OpGen::P(static_cast<std::uint32_t>(i)));
            }
            else if (ch == 'b') {
                ++c.i;
                word.push_back(OpGen::bockstein());
            }
            else {
                fail(pos, std::string("unexpected character '") + ch + "' in classical mode");
            }
            any_atom = true;
        }
        if (!any_atom)
            fail(c.i, "empty term");
        auto mon = OpMonomial::make(std::move(word));
        if (mon)
            out.add_term(*mon, coeff);
        expect_term = false;
        if (!c.done() && c.peek() == '+') {
            ++c.i;
            expect_term = true;
        }
    }
    if (!c.done())
        fail(c.i, "trailing input");
    return out;
}

namespace {

    std::string scalar_monomial_str(ScalarKey k, Residue c, bool lone)
    {
        std::vector<std::string> parts;
        if (c != 1 || (k.rho == 0 && k.tau == 0 && lone))
            parts.push_back(std::to_string(c));
        if (k.rho == 1)
            parts.push_back("r");
        else if (k.rho > 1)
            parts.push_back("r^" + std::to_string(k.rho));
        if (k.tau == 1)
            parts.push_back("t");
        else if (k.tau > 1)
            parts.push_back("t^" + std::to_string(k.tau));
        std::string out;
        for (const auto& p : parts) {
            if (!out.empty())
                out += ' ';
            out += p;
        }
        return out;
    }

    void join_piece(std::string& s, const std::string& piece)
    {
        if (piece.empty())
            return;
        if (!s.empty())
            s += ' ';
        s += piece;
    }

}  // namespace

std::string print_scalar(const BaseScalar& s)
{
    if (s.is_zero())
        return "0";
    std::string out;
    for (const auto& [k, c] : s.terms()) {
        if (!out.empty())
            out += " + ";
        out += scalar_monomial_str(k, c, true);
    }
    return out;
}

std::string print_op_monomial(const OpMonomial& m, std::uint32_t ell)
{
    const auto& w = m.word();
    std::string out;
    if (ell == 2) {
        std::size_t k = 0;
        while (k < w.size()) {
            std::uint64_t sq;
            if (w[k].is_beta()) {
                if (k + 1 < w.size() && !w[k + 1].is_beta()) {
                    sq = 2ull * w[k + 1].power + 1;
                    k += 2;
                }
                else {
                    sq = 1;
                    ++k;
                }
            }
            else {
                sq = 2ull * w[k].power;
                ++k;
            }
            join_piece(out, "Sq" + std::to_string(sq));
        }
        return out;
    }
    for (OpGen g : w)
        join_piece(out, g.is_beta() ? std::string("b") : "P" + std::to_string(g.power));
    return out;
}

std::string print_milnor_monomial(const MilnorMonomial& m)
{
    std::string out;
    for (int r = 0; r < 64; ++r)
        if (m.tau_mask() >> r & 1)
            join_piece(out, "t" + std::to_string(r));
    for (std::size_t k = 0; k < m.xi_exps().size(); ++k) {
        if (m.xi_exps()[k] == 0)
            continue;
        std::string piece = "x" + std::to_string(k + 1);
        if (m.xi_exps()[k] > 1)
            piece += "^" + std::to_string(m.xi_exps()[k]);
        join_piece(out, piece);
    }
    return out;
}

namespace {

    // Shared shape of the element printers: per canonical term, per scalar
    // monomial, print coefficient then generator word.
    std::string print_terms(const std::vector<std::pair<std::string, const BaseScalar*>>& items)
    {
        std::string out;
        for (const auto& [mono_str, coeff] : items) {
            for (const auto& [k, c] : coeff->terms()) {
                std::string piece = scalar_monomial_str(k, c, mono_str.empty());
                join_piece(piece, mono_str);
                if (piece.empty())
                    piece = "1";
                if (!out.empty())
                    out += " + ";
                out += piece;
            }
        }
        return out.empty() ? "0" : out;
    }

}  // namespace

std::string print_op(const OpElement& e)
{
    std::vector<std::pair<std::string, const BaseScalar*>> items;
    for (const auto& [m, c] : e.terms())
        items.emplace_back(print_op_monomial(m, e.prime()), &c);
    return print_terms(items);
}

std::string print_dual(const GammaElement& e)
{
    std::vector<std::pair<std::string, const BaseScalar*>> items;
    for (const auto& [m, c] : e.terms())
        items.emplace_back(print_milnor_monomial(m), &c);
    return print_terms(items);
}

std::string print_tensor(const TensorElement& t)
{
    if (t.is_zero())
        return "0";
    std::string out;
    for (const auto& [key, coeff] : t.terms()) {
        std::string left_mono = print_milnor_monomial(key.first);
        std::string right = print_milnor_monomial(key.second);
        if (right.empty())
            right = "1";
        for (const auto& [k, c] : coeff.terms()) {
            std::string left = scalar_monomial_str(k, c, left_mono.empty());
            join_piece(left, left_mono);
            if (left.empty())
                left = "1";
            if (!out.empty())
                out += " + ";
            out += "(" + left + ") | (" + right + ")";
        }
    }
    return out;
}

std::string print_classical(const ClassicalElement& e)
{
    if (e.is_zero())
        return "0";
    std::string out;
    for (const auto& [m, c] : e.terms()) {
        std::string word = print_op_monomial(m, e.prime());
        std::string piece;
        if (c != 1 || word.empty())
            piece = std::to_string(c);
        join_piece(piece, word);
        if (!out.empty())
            out += " + ";
        out += piece;
    }
    return out;
}

nlohmann::ordered_json structured_scalar_body(const BaseScalar& s)
{
    nlohmann::ordered_json monos = nlohmann::ordered_json::array();
    for (const auto& [k, c] : s.terms())
        monos.push_back({k.rho, k.tau, c});
    return {{"monomials", std::move(monos)}};
}

namespace {

    nlohmann::ordered_json word_codes(const OpMonomial& m)
    {
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (OpGen g : m.word()) {
            if (g.is_beta())
                w.push_back("b");
            else
                w.push_back(nlohmann::ordered_json::array({"P", g.power}));
        }
        return w;
    }

    nlohmann::ordered_json milnor_codes(const MilnorMonomial& m)
    {
        nlohmann::ordered_json tau = nlohmann::ordered_json::array();
        for (int r = 0; r < 64; ++r)
            if (m.tau_mask() >> r & 1)
                tau.push_back(r);
        nlohmann::ordered_json xi = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < m.xi_exps().size(); ++k)
            if (m.xi_exps()[k] > 0)
                xi.push_back(nlohmann::ordered_json::array({k + 1, m.xi_exps()[k]}));
        return {{"tau", std::move(tau)}, {"xi", std::move(xi)}};
    }

}  // namespace

nlohmann::ordered_json structured_op(const OpElement& e)
{
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : e.terms())
        terms.push_back({{"coefficient", structured_scalar_body(c)}, {"word", word_codes(m)}});
    return {{"prime", e.prime()},
            {"preset", preset_name(e.preset())},
            {"mode", "op"},
            {"terms", std::move(terms)}};
}

nlohmann::ordered_json structured_dual(const GammaElement& e)
{
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : e.terms()) {
        nlohmann::ordered_json t = {{"coefficient", structured_scalar_body(c)}};
        t.update(milnor_codes(m));
        terms.push_back(std::move(t));
    }
    return {{"prime", e.prime()},
            {"preset", preset_name(e.preset())},
            {"mode", "dual"},
            {"terms", std::move(terms)}};
}

nlohmann::ordered_json structured_tensor(const TensorElement& t)
{
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [key, c] : t.terms())
        terms.push_back({{"coefficient", structured_scalar_body(c)},
                         {"left", milnor_codes(key.first)},
                         {"right", milnor_codes(key.second)}});
    return {{"prime", t.prime()},
            {"preset", preset_name(t.preset())},
            {"mode", "tensor"},
            {"terms", std::move(terms)}};
}

nlohmann::ordered_json structured_classical(const ClassicalElement& e)
{
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : e.terms()) {
        nlohmann::ordered_json coeff = {{"monomials", nlohmann::ordered_json::array(
                                                          {nlohmann::ordered_json::array({0, 0, c})})}};
        terms.push_back({{"coefficient", std::move(coeff)}, {"word", word_codes(m)}});
    }
    return {{"prime", e.prime()}, {"mode", "classical"}, {"terms", std::move(terms)}};
}

nlohmann::ordered_json structured_scalar(const BaseScalar& s)
{
    return {{"prime", s.prime()},
            {"preset", preset_name(s.preset())},
            {"mode", "scalar"},
            {"coefficient", structured_scalar_body(s)}};
}

nlohmann::ordered_json structured_basis(Mode mode, long long p, long long q, std::uint32_t ell)
{
    nlohmann::ordered_json elems = nlohmann::ordered_json::array();
    if (mode == Mode::dual) {
        for (const auto& m : milnor_basis(p, q, ell)) {
            std::string s = print_milnor_monomial(m);
            elems.push_back(s.empty() ? "1" : s);
        }
    }
    else {
        for (const auto& m : op_basis(p, q, ell)) {
            std::string s = print_op_monomial(m, ell);
            elems.push_back(s.empty() ? "1" : s);
        }
    }
    return {{"prime", ell},
            {"mode", "basis"},
            {"basis", mode == Mode::dual ? "dual" : "op"},
            {"bidegree", nlohmann::ordered_json::array({p, q})},
            {"elements", std::move(elems)}};
}

nlohmann::ordered_json structured_pairing_matrix(long long p, long long q, std::uint32_t ell)
{
    auto rows = op_basis(p, q, ell);
    auto cols = milnor_basis(p, q, ell);
    FpMatrix m = pairing_matrix(p, q, ell);
    nlohmann::ordered_json jrows = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        std::string s = print_op_monomial(r, ell);
        jrows.push_back(s.empty() ? "1" : s);
    }
    nlohmann::ordered_json jcols = nlohmann::ordered_json::array();
    for (const auto& c : cols) {
        std::string s = print_milnor_monomial(c);
        jcols.push_back(s.empty() ? "1" : s);
    }
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& row : m)
        entries.push_back(row);
    return {{"prime", ell},
            {"mode", "pairing-matrix"},
            {"bidegree", nlohmann::ordered_json::array({p, q})},
            {"invertible", matrix_invertible(m, ell)},
            {"rows", std::move(jrows)},
            {"cols", std::move(jcols)},
            {"entries", std::move(entries)}};
}

std::string render_basis_text(Mode mode, long long p, long long q, std::uint32_t ell)
{
    std::ostringstream os;
    if (mode == Mode::dual) {
        for (const auto& m : milnor_basis(p, q, ell)) {
            std::string s = print_milnor_monomial(m);
            os << (s.empty() ? "1" : s) << "\n";
        }
    }
    else {
        for (const auto& m : op_basis(p, q, ell)) {
            std::string s = print_op_monomial(m, ell);
            os << (s.empty() ? "1" : s) << "\n";
        }
    }
    return os.str();
}

std::string render_pairing_matrix_text(long long p, long long q, std::uint32_t ell)
{
    auto rows = op_basis(p, q, ell);
    auto cols = milnor_basis(p, q, ell);
    FpMatrix m = pairing_matrix(p, q, ell);
    std::ostringstream os;
    os << "bidegree (" << p << "," << q << ")  size " << rows.size() << "x" << cols.size()
       << "  invertible " << (matrix_invertible(m, ell) ? "yes" : "no") << "\n";
    os << "cols:";
    for (const auto& c : cols) {
        std::string s = print_milnor_monomial(c);
        os << " [" << (s.empty() ? "1" : s) << "]";
    }
    os << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::string s = print_op_monomial(rows[i], ell);
        os << (s.empty() ? "1" : s) << ":";
        for (Residue v : m[i])
            os << " " << v;
        os << "\n";
    }
    return os.str();
}

}  // namespace motsteen
