// Command-line front end for the motsteen shared library. All computation
// goes through the C API in motsteen/motsteen.h.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "motsteen/motsteen.h"

namespace {

struct Options {
    std::uint32_t prime = 2;
    std::string preset = "closed";
    std::string format = "text";
    std::string mode = "op";
    std::uint64_t fuel = 0;  // 0 = library default
    std::string bidegree;
    long long max_p = -1;
    long long max_degree = -1;
};

int exit_code_for(mst_status st, long long verify_failures = 0)
{
    if (st == MST_OK)
        return verify_failures > 0 ? 3 : 0;
    if (st == MST_ERR_UNSUPPORTED_SCALAR)
        return 2;
    return 1;
}

// Arguments starting with '@' name a file holding the element text.
std::string read_arg(const std::string& arg)
{
    if (arg.empty() || arg[0] != '@')
        return arg;
    std::ifstream in(arg.substr(1));
    if (!in)
        throw CLI::ValidationError("input", "cannot read file " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string s = ss.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r'))
        s.pop_back();
    return s;
}

struct Session {
    mst_session* s = nullptr;
    explicit Session(const Options& o)
    {
        if (mst_session_new(o.prime, o.preset.c_str(), o.fuel, &s) != MST_OK) {
            std::cerr << "error: invalid prime/preset combination\n";
            std::exit(1);
        }
    }
    ~Session() { mst_session_free(s); }
    Session(const Session&) = delete;
    Session& operator=(const Session&) = delete;
};

int report_error(mst_session* s, mst_status st)
{
    std::cerr << "error: " << mst_last_error(s) << "\n";
    return exit_code_for(st);
}

struct Elem {
    mst_element* e = nullptr;
    ~Elem() { mst_element_free(e); }
};

struct Str {
    char* p = nullptr;
    ~Str() { mst_string_free(p); }
};

int print_element(mst_session* s, const mst_element* e, const std::string& format)
{
    Str out;
    if (mst_status st = mst_format(s, e, format.c_str(), &out.p); st != MST_OK)
        return report_error(s, st);
    std::cout << out.p << "\n";
    return 0;
}

bool parse_bidegree(const std::string& text, long long& p, long long& q)
{
    std::istringstream ss(text);
    char comma = 0;
    return static_cast<bool>(ss >> p >> comma >> q) && comma == ',' && ss.eof();
}

void add_common(CLI::App* cmd, Options& o, bool with_preset = true, bool with_fuel = true)
{
    cmd->add_option("--prime,-p", o.prime, "prime l (default 2)");
    if (with_preset)
        cmd->add_option("--preset", o.preset, "coefficient preset: closed|universal")
            ->check(CLI::IsMember({"closed", "universal"}));
    cmd->add_option("--format", o.format, "output format: text|structured")
        ->check(CLI::IsMember({"text", "structured"}));
    if (with_fuel)
        cmd->add_option("--fuel", o.fuel, "rewrite step bound per normalization (default 10^7)");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact arithmetic in the mod-l motivic Steenrod algebra and its dual"};
    app.require_subcommand(1);
    Options o;

    std::string lhs, rhs;

    auto* mul = app.add_subcommand("mul", "multiply two elements and normalize");
    add_common(mul, o);
    mul->add_option("--mode", o.mode, "element mode: op|dual|classical")
        ->check(CLI::IsMember({"op", "dual", "classical"}));
    mul->add_option("left", lhs, "left element (or @file)")->required();
    mul->add_option("right", rhs, "right element (or @file)")->required();

    auto* norm = app.add_subcommand("normalize", "rewrite to the admissible basis");
    add_common(norm, o);
    norm->add_option("--mode", o.mode, "element mode: op|classical")
        ->check(CLI::IsMember({"op", "classical"}));
    norm->add_option("element", lhs, "element (or @file)")->required();

    auto* basis = app.add_subcommand("basis", "admissible or Milnor basis of one bidegree");
    add_common(basis, o, false, false);
    basis->add_option("--mode", o.mode, "basis side: op|dual")
        ->check(CLI::IsMember({"op", "dual"}));
    basis->add_option("--bidegree", o.bidegree, "target bidegree P,Q")->required();

    auto* cop = app.add_subcommand("coproduct", "coproduct of a dual element");
    add_common(cop, o);
    cop->add_option("element", lhs, "dual element (or @file)")->required();

    auto* anti = app.add_subcommand("antipode", "coinverse of a dual element");
    add_common(anti, o);
    anti->add_option("element", lhs, "dual element (or @file)")->required();

    auto* cou = app.add_subcommand("counit", "counit of a dual element");
    add_common(cou, o);
    cou->add_option("element", lhs, "dual element (or @file)")->required();

    auto* pair = app.add_subcommand("pair", "Milnor pairing of an op element and a dual element");
    add_common(pair, o);
    pair->add_option("op", lhs, "op element (or @file)")->required();
    pair->add_option("dual", rhs, "dual element (or @file)")->required();

    auto* pm = app.add_subcommand("pairing-matrix", "pairing matrix at one bidegree");
    add_common(pm, o, false, false);
    pm->add_option("--bidegree", o.bidegree, "target bidegree P,Q")->required();

    auto* real = app.add_subcommand("realize", "specialize rho -> 0, tau -> 1");
    add_common(real, o);
    real->add_option("element", lhs, "op element (or @file)")->required();

    std::string suite;
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    add_common(ver, o);
    ver->add_option("--suite", suite,
                    "adem-oracle|associativity|coassoc|antipode|basis-count|pairing|cross-model")
        ->required();
    ver->add_option("--max-p", o.max_p, "bidegree bound for basis/pairing suites");
    ver->add_option("--max-degree", o.max_degree, "degree bound for the other suites");

    auto* table = app.add_subcommand("table", "multiplication table of admissible monomials");
    add_common(table, o);
    table->add_option("--max-degree", o.max_degree, "degree bound (default 10)");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    Session session(o);
    mst_session* s = session.s;

    try {
        if (mul->parsed()) {
            Elem a, b, c;
            if (auto st = mst_parse(s, o.mode.c_str(), read_arg(lhs).c_str(), &a.e); st != MST_OK)
                return report_error(s, st);
            if (auto st = mst_parse(s, o.mode.c_str(), read_arg(rhs).c_str(), &b.e); st != MST_OK)
                return report_error(s, st);
            if (auto st = mst_multiply(s, a.e, b.e, &c.e); st != MST_OK)
                return report_error(s, st);
            return print_element(s, c.e, o.format);
        }
        if (norm->parsed()) {
            Elem a, b;
            if (auto st = mst_parse(s, o.mode.c_str(), read_arg(lhs).c_str(), &a.e); st != MST_OK)
                return report_error(s, st);
            if (auto st = mst_normalize(s, a.e, &b.e); st != MST_OK)
                return report_error(s, st);
            return print_element(s, b.e, o.format);
        }
        if (basis->parsed()) {
            long long p = 0, q = 0;
            if (!parse_bidegree(o.bidegree, p, q)) {
                std::cerr << "usage error: --bidegree expects P,Q\n";
                return 1;
            }
            Str out;
            if (auto st = mst_basis(s, o.mode.c_str(), p, q, o.format.c_str(), &out.p);
                st != MST_OK)
                return report_error(s, st);
            std::cout << out.p;
            if (o.format == "structured")
                std::cout << "\n";
            return 0;
        }
        if (cop->parsed() || anti->parsed() || cou->parsed()) {
            Elem a, b;
            if (auto st = mst_parse(s, "dual", read_arg(lhs).c_str(), &a.e); st != MST_OK)
                return report_error(s, st);
            mst_status st = cop->parsed()   ? mst_coproduct(s, a.e, &b.e)
                            : anti->parsed() ? mst_antipode(s, a.e, &b.e)
                                             : mst_counit(s, a.e, &b.e);
            if (st != MST_OK)
                return report_error(s, st);
            return print_element(s, b.e, o.format);
        }
        if (pair->parsed()) {
            Elem a, b, c;
            if (auto st = mst_parse(s, "op", read_arg(lhs).c_str(), &a.e); st != MST_OK)
                return report_error(s, st);
            if (auto st = mst_parse(s, "dual", read_arg(rhs).c_str(), &b.e); st != MST_OK)
                return report_error(s, st);
            if (auto st = mst_pair(s, a.e, b.e, &c.e); st != MST_OK)
                return report_error(s, st);
            return print_element(s, c.e, o.format);
        }
        if (pm->parsed()) {
            long long p = 0, q = 0;
            if (!parse_bidegree(o.bidegree, p, q)) {
                std::cerr << "usage error: --bidegree expects P,Q\n";
                return 1;
            }
            Str out;
            if (auto st = mst_pairing_matrix(s, p, q, o.format.c_str(), &out.p); st != MST_OK)
                return report_error(s, st);
            std::cout << out.p;
            if (o.format == "structured")
                std::cout << "\n";
            return 0;
        }
        if (real->parsed()) {
            Elem a, b;
            if (auto st = mst_parse(s, "op", read_arg(lhs).c_str(), &a.e); st != MST_OK)
                return report_error(s, st);
            if (auto st = mst_realize(s, a.e, &b.e); st != MST_OK)
                return report_error(s, st);
            return print_element(s, b.e, o.format);
        }
        if (ver->parsed()) {
            Str out;
            long long failures = 0;
            if (auto st = mst_verify(s, suite.c_str(), o.max_p, o.max_degree, o.format.c_str(),
                                     &out.p, &failures);
                st != MST_OK)
                return report_error(s, st);
            std::cout << out.p;
            if (o.format == "structured")
                std::cout << "\n";
            return failures > 0 ? 3 : 0;
        }
        if (table->parsed()) {
            long long d = o.max_degree < 0 ? 10 : o.max_degree;
            Str out;
            if (auto st = mst_table(s, d, o.format.c_str(), &out.p); st != MST_OK)
                return report_error(s, st);
            std::cout << out.p;
            if (o.format == "structured")
                std::cout << "\n";
            return 0;
        }
    }
    catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
