// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 8 drives the installed CLI binary (path in the
// MOTSTEEN_CLI environment variable).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "motsteen/classical.hpp"
#include "motsteen/pairing.hpp"
#include "motsteen/text.hpp"
#include "motsteen/verify.hpp"

using namespace motsteen;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& label, const std::function<void()>& body)
{
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
        body();
    }
    catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty()) {
        std::printf("PASS  criterion %d  (%.1fs)  %s\n", number, secs, label.c_str());
    }
    else {
        std::printf("FAIL  criterion %d  (%.1fs)  %s\n      %s\n", number, secs, label.c_str(),
                    error.c_str());
        ++g_failures;
    }
    std::fflush(stdout);
}

[[noreturn]] void fail(const std::string& msg)
{
    throw std::runtime_error(msg);
}

void expect(bool cond, const std::string& msg)
{
    if (!cond)
        fail(msg);
}

// ---------------------------------------------------------------- criterion 1

void criterion_adem_oracle()
{
    for (long long a = 1; a <= 40; ++a)
        for (long long b = 1; a + b <= 40; ++b) {
            if (!(a < 2 * b))
                continue;
            std::string text = "Sq" + std::to_string(a) + " Sq" + std::to_string(b);
            OpElement motivic = parse_op(text, 2, Preset::universal);
            ClassicalElement lhs = realize(normalize(motivic));
            ClassicalElement rhs = classical_normalize(parse_classical(text, 2));
            expect(lhs == rhs, "l=2 mismatch at " + text);
        }
    for (std::uint32_t ell : {3u, 5u}) {
        long long e = ell - 1;
        for (long long a = 1; 2 * a * e <= 40; ++a)
            for (long long b = 1; 2 * (a + b) * e <= 40; ++b)
                for (int eps = 0; eps <= 1; ++eps) {
                    if (2 * (a + b) * e + eps > 40)
                        continue;
                    std::vector<OpGen> gens{OpGen::P(static_cast<std::uint32_t>(a))};
                    if (eps)
                        gens.push_back(OpGen::bockstein());
                    gens.push_back(OpGen::P(static_cast<std::uint32_t>(b)));
                    auto m = OpMonomial::make(gens);
                    OpElement motivic = OpElement::from_monomial(ell, Preset::closed, *m);
                    ClassicalElement lhs = realize(normalize(motivic));
                    ClassicalElement rhs =
                        classical_normalize(ClassicalElement::from_monomial(ell, *m));
                    expect(lhs == rhs, "l=" + std::to_string(ell) + " mismatch at P" +
                                           std::to_string(a) + (eps ? " B" : " P") +
                                           std::to_string(b));
                }
    }
}

// ---------------------------------------------------------------- criterion 2

void criterion_known_identities()
{
    auto check_eq = [](const OpElement& got, const OpElement& want, const std::string& what) {
        expect(got == want, what + ": got " + print_op(got) + ", want " + print_op(want));
    };
    for (Preset preset : {Preset::closed, Preset::universal}) {
        auto P = [&](const char* s) { return parse_op(s, 2, preset); };
        check_eq(multiply(P("Sq1"), P("Sq1")), OpElement::zero(2, preset), "Sq1 Sq1 = 0");
        check_eq(multiply(P("Sq1"), P("Sq2")), P("Sq3"), "Sq1 Sq2 = Sq3");
        check_eq(multiply(P("Sq2"), P("Sq2")), P("t Sq3 Sq1"), "Sq2 Sq2 = t Sq3 Sq1");
    }
    check_eq(multiply(parse_op("Sq2", 2, Preset::universal), parse_op("Sq3", 2, Preset::universal)),
             parse_op("Sq5 + Sq4 Sq1 + r Sq3 Sq1", 2, Preset::universal),
             "Sq2 Sq3 = Sq5 + Sq4 Sq1 + r Sq3 Sq1");
    auto P3 = [](const char* s) { return parse_op(s, 3, Preset::closed); };
    check_eq(multiply(P3("P1"), P3("P1")), P3("2 P2"), "P1 P1 = 2 P2");
    check_eq(multiply(P3("P1"), P3("b P1")), P3("b P2 + P2 b"), "P1 B1 = b P2 + P2 b");
}

// ---------------------------------------------------------------- criterion 3

void criterion_basis_count()
{
    expect(op_basis(1, 0, 2).size() == 1, "spot (1,0) at l=2");
    expect(op_basis(2, 1, 2).size() == 1, "spot (2,1) at l=2");
    expect(op_basis(3, 1, 2).size() == 2, "spot (3,1) at l=2");
    for (std::uint32_t ell : {2u, 3u})
        for (long long p = 0; p <= 50; ++p)
            for (long long q = 0; q <= p; ++q) {
                std::size_t a = op_basis(p, q, ell).size();
                std::size_t b = milnor_basis(p, q, ell).size();
                expect(a == b, "count mismatch at l=" + std::to_string(ell) + " (" +
                                   std::to_string(p) + "," + std::to_string(q) + "): op " +
                                   std::to_string(a) + " vs milnor " + std::to_string(b));
            }
}

// ---------------------------------------------------------------- criterion 4

void criterion_rewrite_health()
{
    const int total_products = 10000;
    const int total_triples = 1000;
    std::mt19937 rng(0xacce97);
    std::vector<std::uint32_t> primes{2, 3, 5};
    for (std::uint32_t ell : primes) {
        auto monos = admissibles_up_to_degree(60, ell);
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        int products = total_products / static_cast<int>(primes.size()) +
                       (ell == 2 ? total_products % static_cast<int>(primes.size()) : 0);
        int done = 0;
        while (done < products) {
            const OpMonomial& u = monos[pick(rng)];
            const OpMonomial& v = monos[pick(rng)];
            Bidegree d = u.bidegree(ell) + v.bidegree(ell);
            if (d.p > 60)
                continue;
            ++done;
            OpElement prod = multiply(OpElement::from_monomial(ell, Preset::closed, u),
                                      OpElement::from_monomial(ell, Preset::closed, v));
            for (const auto& [m, c] : prod.terms()) {
                expect(is_admissible(m, ell), "inadmissible output monomial");
                for (const auto& [k, r] : c.terms())
                    expect(m.bidegree(ell) + BaseScalar::key_bidegree(k) == d,
                           "bidegree not conserved at l=" + std::to_string(ell));
            }
            expect(normalize(prod) == prod, "normalize is not idempotent");
        }
        int triples = total_triples / static_cast<int>(primes.size()) +
                      (ell == 2 ? total_triples % static_cast<int>(primes.size()) : 0);
        auto small = admissibles_up_to_degree(30, ell);
        std::uniform_int_distribution<std::size_t> pick_small(0, small.size() - 1);
        done = 0;
        while (done < triples) {
            const OpMonomial& u = small[pick_small(rng)];
            const OpMonomial& v = small[pick_small(rng)];
            const OpMonomial& w = small[pick_small(rng)];
            if (u.bidegree(ell).p + v.bidegree(ell).p + w.bidegree(ell).p > 30)
                continue;
            ++done;
            OpElement eu = OpElement::from_monomial(ell, Preset::closed, u);
            OpElement ev = OpElement::from_monomial(ell, Preset::closed, v);
            OpElement ew = OpElement::from_monomial(ell, Preset::closed, w);
            expect(multiply(multiply(eu, ev), ew) == multiply(eu, multiply(ev, ew)),
                   "associativity fails at l=" + std::to_string(ell));
        }
    }
}

// ---------------------------------------------------------------- criterion 5

void criterion_hopf_axioms()
{
    std::vector<std::pair<std::uint32_t, Preset>> settings{
        {2, Preset::closed}, {2, Preset::universal}, {3, Preset::closed}};
    for (auto [ell, preset] : settings) {
        // generators and random monomials up to degree 60
        std::vector<MilnorMonomial> samples;
        for (std::uint32_t r = 0; r <= 3; ++r) {
            samples.push_back(MilnorMonomial::tau_gen(r));
            if (r >= 1)
                samples.push_back(MilnorMonomial::xi_gen(r));
        }
        std::mt19937 rng(0x40f + ell + static_cast<int>(preset));
        std::vector<MilnorMonomial> pool;
        for (long long d = 0; d <= 20; ++d)
            for (const auto& m : milnor_monomials_of_degree(d, ell))
                pool.push_back(m);
        for (int i = 0; i < 50; ++i) {
            // combine pool entries into monomials of degree <= 60
            const MilnorMonomial& a = pool[rng() % pool.size()];
            const MilnorMonomial& b = pool[rng() % pool.size()];
            if (a.bidegree(ell).p + b.bidegree(ell).p > 60)
                continue;
            GammaElement prod = gamma_multiply(GammaElement::from_monomial(ell, preset, a),
                                               GammaElement::from_monomial(ell, preset, b));
            for (const auto& [m, c] : prod.terms())
                samples.push_back(m);
        }
        for (const auto& m : samples) {
            GammaElement g = GammaElement::from_monomial(ell, preset, m);
            TensorElement d = coproduct(g);
            expect(coproduct_left_then(d) == coproduct_right_then(d),
                   "coassociativity fails at l=" + std::to_string(ell) + " on " +
                       print_milnor_monomial(m));
            expect(collapse_left_counit(d) == g, "left counit law fails");
            expect(collapse_right_counit(d) == g, "right counit law fails");
        }
        // multiplicativity of Delta on random pairs (degree <= 40)
        for (int i = 0; i < 60; ++i) {
            const MilnorMonomial& a = pool[rng() % pool.size()];
            const MilnorMonomial& b = pool[rng() % pool.size()];
            if (a.bidegree(ell).p + b.bidegree(ell).p > 40)
                continue;
            GammaElement ga = GammaElement::from_monomial(ell, preset, a);
            GammaElement gb = GammaElement::from_monomial(ell, preset, b);
            expect(coproduct(gamma_multiply(ga, gb)) ==
                       tensor_multiply(coproduct(ga), coproduct(gb)),
                   "Delta is not multiplicative at l=" + std::to_string(ell));
        }
        // antipode recursions r <= 4
        for (std::uint32_t r = 1; r <= 4; ++r) {
            GammaElement xi_acc(ell, preset);
            for (std::uint32_t i = 0; i <= r; ++i) {
                std::uint64_t e = 1;
                for (std::uint32_t k = 0; k < i; ++k)
                    e *= ell;
                GammaElement head =
                    i == r ? GammaElement::unit(ell, preset)
                           : GammaElement::from_monomial(
                                 ell, preset,
                                 MilnorMonomial::xi_gen(r - i, static_cast<std::uint32_t>(e)));
                xi_acc = xi_acc + gamma_multiply(head, antipode_xi_gen(ell, preset, i));
            }
            expect(xi_acc.is_zero(), "xi antipode recursion fails at r=" + std::to_string(r));
            GammaElement tau_acc =
                GammaElement::from_monomial(ell, preset, MilnorMonomial::tau_gen(r)) +
                antipode_tau_gen(ell, preset, r);
            for (std::uint32_t i = 0; i < r; ++i) {
                std::uint64_t e = 1;
                for (std::uint32_t k = 0; k < i; ++k)
                    e *= ell;
                tau_acc = tau_acc +
                          gamma_multiply(GammaElement::from_monomial(
                                             ell, preset,
                                             MilnorMonomial::xi_gen(
                                                 r - i, static_cast<std::uint32_t>(e))),
                                         antipode_tau_gen(ell, preset, i));
            }
            expect(tau_acc.is_zero(), "tau antipode recursion fails at r=" + std::to_string(r));
        }
        if (ell == 2) {
            GammaElement tau_elem(ell, preset);
            tau_elem.add_term(MilnorMonomial(), BaseScalar::tau(ell, preset));
            expect(antipode(tau_elem) == eta_R_scalar(ell, preset, BaseScalar::tau(ell, preset)),
                   "c(eta_L(tau)) != eta_R(tau)");
        }
    }
}

// ---------------------------------------------------------------- criterion 6

void criterion_perfect_pairing()
{
    for (std::uint32_t ell : {2u, 3u})
        for (long long p = 0; p <= 30; ++p)
            for (long long q = 0; q <= p; ++q) {
                FpMatrix m = pairing_matrix(p, q, ell);  // throws on size mismatch
                if (m.empty())
                    continue;
                expect(matrix_invertible(m, ell),
                       "singular pairing matrix at l=" + std::to_string(ell) + " (" +
                           std::to_string(p) + "," + std::to_string(q) + ")");
            }
}

// ---------------------------------------------------------------- criterion 7

void criterion_cross_model()
{
    for (std::uint32_t ell : {2u, 3u}) {
        auto monos = admissibles_up_to_degree(24, ell);
        for (const auto& u : monos) {
            OpElement eu = OpElement::from_monomial(ell, Preset::closed, u);
            DualFunctional fu = DualFunctional::of(eu);
            for (const auto& v : monos) {
                if (u.bidegree(ell).p + v.bidegree(ell).p > 24)
                    continue;
                OpElement ev = OpElement::from_monomial(ell, Preset::closed, v);
                DualFunctional lhs = DualFunctional::of(multiply(eu, ev));
                DualFunctional rhs = convolution_multiply(fu, DualFunctional::of(ev));
                expect(lhs == rhs, "cross-model mismatch at l=" + std::to_string(ell) + " u=" +
                                       print_op_monomial(u, ell) + " v=" +
                                       print_op_monomial(v, ell));
            }
        }
    }
}

// ---------------------------------------------------------------- criterion 8

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args)
{
    const char* cli = std::getenv("MOTSTEEN_CLI");
    if (!cli)
        fail("MOTSTEEN_CLI is not set");
    std::string cmd = std::string(cli) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        fail("cannot spawn CLI");
    std::string output;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0)
        output.append(buf, n);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, output};
}

void criterion_cli_contract()
{
    // Round-trip property on 10^3 random elements.
    std::mt19937 rng(0xc11);
    int count = 0;
    for (auto [ell, preset] : std::vector<std::pair<std::uint32_t, Preset>>{
             {2, Preset::closed}, {2, Preset::universal}, {3, Preset::closed},
             {5, Preset::closed}}) {
        auto monos = admissibles_up_to_degree(16, ell);
        for (int i = 0; i < 250; ++i, ++count) {
            OpElement e(ell, preset);
            int terms = 1 + static_cast<int>(rng() % 3);
            for (int t = 0; t < terms; ++t) {
                BaseScalar c(ell, preset);
                std::uint32_t rho = preset == Preset::universal ? rng() % 3 : 0;
                std::uint32_t tau = ell == 2 ? rng() % 3 : 0;
                c.add_term(ScalarKey{rho, tau}, 1 + rng() % (ell - 1));
                e.add_term(monos[rng() % monos.size()], c);
            }
            expect(parse_op(print_op(e), ell, preset) == e,
                   "round-trip failed for " + print_op(e));
        }
    }
    expect(count >= 1000, "fewer than 1000 round-trip samples");

    // Byte-stable structured dumps across two CLI runs.
    CliResult a = run_cli("normalize --prime 2 --preset universal --format structured 'Sq2 Sq3'");
    CliResult b = run_cli("normalize --prime 2 --preset universal --format structured 'Sq2 Sq3'");
    expect(a.exit_code == 0, "structured normalize exited " + std::to_string(a.exit_code));
    expect(a.output == b.output, "structured dumps differ between runs");
    CliResult t1 = run_cli("table --prime 3 --max-degree 12 --format structured");
    CliResult t2 = run_cli("table --prime 3 --max-degree 12 --format structured");
    expect(t1.exit_code == 0 && t1.output == t2.output, "table dumps differ between runs");

    // Documented exit codes per error class.
    expect(run_cli("normalize --prime 2 'Sq2 Sq2'").exit_code == 0, "success should exit 0");
    expect(run_cli("normalize --prime 2 'Sq0'").exit_code == 1, "parse error should exit 1");
    expect(run_cli("frobnicate").exit_code == 1, "usage error should exit 1");
    expect(run_cli("mul --prime 2 --preset universal 'Sq4' 't Sq2'").exit_code == 2,
           "unsupported scalar commutation should exit 2");
    CliResult vf = run_cli("verify --suite cross-model --prime 2 --max-degree 12 --fuel 1");
    expect(vf.exit_code == 3,
           "verification failure should exit 3, got " + std::to_string(vf.exit_code));
    expect(vf.output.find("FAIL") != std::string::npos, "failed verify should print FAIL lines");
    CliResult ok = run_cli("verify --suite basis-count --prime 2 --max-p 20");
    expect(ok.exit_code == 0, "passing verify should exit 0");
}

}  // namespace

int main()
{
    run_criterion(1, "Adem oracle vs independent classical engine (deg <= 40, l = 2,3,5)",
                  criterion_adem_oracle);
    run_criterion(2, "known identities reproduced exactly", criterion_known_identities);
    run_criterion(3, "basis-count identity for p <= 50, l = 2,3", criterion_basis_count);
    run_criterion(4, "rewrite-system health on 10^4 products and 10^3 triples",
                  criterion_rewrite_health);
    run_criterion(5, "Hopf algebroid axioms at l = 2 (both presets) and l = 3",
                  criterion_hopf_axioms);
    run_criterion(6, "perfect pairing matrices for p <= 30, l = 2,3", criterion_perfect_pairing);
    run_criterion(7, "cross-model equivalence to degree 24, l = 2,3", criterion_cross_model);
    run_criterion(8, "CLI contract: round-trips, stable dumps, exit codes",
                  criterion_cli_contract);
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
