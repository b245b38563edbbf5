#include "motsteen/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "motsteen/classical.hpp"
#include "motsteen/pairing.hpp"
#include "motsteen/text.hpp"

namespace motsteen {

const char* suite_name(Suite s)
{
    switch (s) {
        case Suite::adem_oracle: return "adem-oracle";
        case Suite::associativity: return "associativity";
        case Suite::coassoc: return "coassoc";
        case Suite::antipode: return "antipode";
        case Suite::basis_count: return "basis-count";
        case Suite::pairing: return "pairing";
        case Suite::cross_model: return "cross-model";
    }
    return "?";
}

Suite suite_from_name(std::string_view name)
{
    for (Suite s : {Suite::adem_oracle, Suite::associativity, Suite::coassoc, Suite::antipode,
                    Suite::basis_count, Suite::pairing, Suite::cross_model})
        if (name == suite_name(s))
            return s;
    throw Error(ErrorCode::bad_argument, "unknown suite: " + std::string(name));
}

namespace {

    void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn)
    {
        if (n == 0)
            return;
        unsigned hw = std::thread::hardware_concurrency();
        if (hw == 0)
            hw = 2;
        std::size_t workers = std::min<std::size_t>(hw, n);
        if (workers <= 1) {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::exception_ptr err;
        std::mutex err_mutex;
        auto body = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                try {
                    fn(i);
                }
                catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err)
                        err = std::current_exception();
                    return;
                }
            }
        };
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(body);
        for (auto& t : pool)
            t.join();
        if (err)
            std::rethrow_exception(err);
    }

    struct Job {
        std::string name;
        // Returns an optional detail for the report; throws Error on failure.
        std::function<std::string()> run;
    };

    VerifyReport execute(Suite suite, std::vector<Job> jobs)
    {
        VerifyReport report;
        report.suite = suite_name(suite);
        report.checks.resize(jobs.size());
        parallel_for(jobs.size(), [&](std::size_t i) {
            CheckResult& r = report.checks[i];
            r.name = jobs[i].name;
            try {
                r.detail = jobs[i].run();
                r.pass = true;
            }
            catch (const Error& e) {
                r.pass = false;
                r.detail = e.what();
            }
        });
        std::sort(report.checks.begin(), report.checks.end(),
                  [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
        for (const auto& c : report.checks)
            if (!c.pass)
                ++report.failures;
        return report;
    }

    [[noreturn]] void check_fail(const std::string& msg)
    {
        throw Error(ErrorCode::internal, msg);
    }

    long long defaulted(long long v, long long def, long long max, const char* what)
    {
        if (v < 0)
            v = def;
        if (v > max)
            throw Error(ErrorCode::bad_argument,
                        std::string(what) + " exceeds the documented maximum " +
                            std::to_string(max));
        return v;
    }

    OpElement monomial_elem(std::uint32_t ell, Preset preset, const OpMonomial& m)
    {
        return OpElement::from_monomial(ell, preset, m);
    }

    // --- adem-oracle -----------------------------------------------------

    std::vector<Job> jobs_adem_oracle(std::uint32_t ell, Preset preset, long long maxdeg,
                                      std::uint64_t fuel)
    {
        std::vector<Job> jobs;
        auto add_pair = [&](std::vector<OpGen> left, std::vector<OpGen> right,
                            const std::string& name) {
            jobs.push_back(Job{name, [=]() {
                std::vector<OpGen> gens = left;
                gens.insert(gens.end(), right.begin(), right.end());
                auto mon = OpMonomial::make(gens);
                if (!mon)
                    return std::string();
                OpElement motivic = normalize(monomial_elem(ell, preset, *mon), fuel);
                ClassicalElement via_motivic = realize(motivic);
                ClassicalElement direct = classical_normalize(
                    ClassicalElement::from_monomial(ell, *mon), fuel);
                if (!(via_motivic == direct))
                    check_fail("realize(normalize(x)) = " + print_classical(via_motivic) +
                               " but classical_normalize = " + print_classical(direct));
                return std::string();
            }});
        };
        if (ell == 2) {
            for (long long a = 1; a <= maxdeg; ++a)
                for (long long b = 1; a + b <= maxdeg; ++b) {
                    if (!(0 < a && a < 2 * b))
                        continue;
                    std::vector<OpGen> left, right;
                    if (a % 2)
                        left.push_back(OpGen::bockstein());
                    if (a / 2)
                        left.push_back(OpGen::P(static_cast<std::uint32_t>(a / 2)));
                    if (b % 2)
                        right.push_back(OpGen::bockstein());
                    if (b / 2)
                        right.push_back(OpGen::P(static_cast<std::uint32_t>(b / 2)));
                    add_pair(left, right,
                             "adem-oracle l=2 Sq" + std::to_string(a) + " Sq" + std::to_string(b));
                }
            return jobs;
        }
        long long e = ell - 1;
        for (long long a = 1; 2 * a * e <= maxdeg; ++a)
            for (long long b = 1; 2 * (a + b) * e <= maxdeg; ++b)
                for (int eps = 0; eps <= 1; ++eps) {
                    if (2 * (a + b) * e + eps > maxdeg)
                        continue;
                    std::vector<OpGen> left{OpGen::P(static_cast<std::uint32_t>(a))};
                    std::vector<OpGen> right;
                    if (eps)
                        right.push_back(OpGen::bockstein());
                    right.push_back(OpGen::P(static_cast<std::uint32_t>(b)));
                    add_pair(left, right,
                             "adem-oracle l=" + std::to_string(ell) + " P" + std::to_string(a) +
                                 (eps ? " B" : " P") + std::to_string(b));
                }
        return jobs;
    }

    // --- associativity ----------------------------------------------------

    std::vector<Job> jobs_associativity(std::uint32_t ell, Preset preset, long long maxdeg,
                                        std::uint64_t fuel, std::size_t count)
    {
        auto monos = admissibles_up_to_degree(maxdeg, ell);
        std::vector<Job> jobs;
        std::mt19937 rng(0x5eed1234u + ell);
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        std::size_t n = 0;
        while (n < count) {
            OpMonomial u = monos[pick(rng)], v = monos[pick(rng)], w = monos[pick(rng)];
            if (u.bidegree(ell).p + v.bidegree(ell).p + w.bidegree(ell).p > maxdeg)
                continue;
            ++n;
            jobs.push_back(Job{
                "associativity l=" + std::to_string(ell) + " #" + std::to_string(n), [=]() {
                    OpElement eu = monomial_elem(ell, preset, u);
                    OpElement ev = monomial_elem(ell, preset, v);
                    OpElement ew = monomial_elem(ell, preset, w);
                    OpElement left = multiply(multiply(eu, ev, fuel), ew, fuel);
                    OpElement right = multiply(eu, multiply(ev, ew, fuel), fuel);
                    if (!(left == right))
                        check_fail("(uv)w = " + print_op(left) + " but u(vw) = " +
                                   print_op(right) + " for u=" + print_op_monomial(u, ell) +
                                   " v=" + print_op_monomial(v, ell) +
                                   " w=" + print_op_monomial(w, ell));
                    return std::string();
                }});
        }
        return jobs;
    }

    // --- coassoc (plus counit laws) ----------------------------------------

    std::vector<MilnorMonomial> coassoc_samples(std::uint32_t ell, long long maxdeg)
    {
        std::vector<MilnorMonomial> samples;
        for (std::uint32_t r = 0; r <= 3; ++r) {
            samples.push_back(MilnorMonomial::tau_gen(r));
            if (r >= 1)
                samples.push_back(MilnorMonomial::xi_gen(r));
        }
        std::mt19937 rng(0xc0a55u + ell);
        for (int n = 0; n < 40; ++n) {
            // random monomial under the degree bound
            std::uint64_t mask = 0;
            std::vector<std::uint32_t> xi;
            long long deg = 0;
            for (int tries = 0; tries < 8; ++tries) {
                std::uint32_t r = rng() % 4;
                bool use_tau = rng() % 2;
                MilnorMonomial g = use_tau ? MilnorMonomial::tau_gen(r)
                                           : (r == 0 ? MilnorMonomial::xi_gen(1)
                                                     : MilnorMonomial::xi_gen(r));
                long long gd = g.bidegree(ell).p;
                if (deg + gd > maxdeg)
                    continue;
                if (use_tau) {
                    if (mask >> r & 1)
                        continue;  // keep exponents in {0,1}
                    mask |= std::uint64_t(1) << r;
                }
                else {
                    std::uint32_t idx = r == 0 ? 1 : r;
                    if (xi.size() < idx)
                        xi.resize(idx, 0);
                    ++xi[idx - 1];
                }
                deg += gd;
            }
            samples.push_back(MilnorMonomial::make(mask, xi));
        }
        std::sort(samples.begin(), samples.end());
        samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
        return samples;
    }

    std::vector<Job> jobs_coassoc(std::uint32_t ell, Preset preset, long long maxdeg)
    {
        std::vector<Job> jobs;
        for (const MilnorMonomial& m : coassoc_samples(ell, maxdeg)) {
            std::string label = print_milnor_monomial(m);
            if (label.empty())
                label = "1";
            jobs.push_back(Job{"coassoc l=" + std::to_string(ell) + " " + label, [=]() {
                GammaElement g = GammaElement::from_monomial(ell, preset, m);
                TensorElement d = coproduct(g);
                if (coproduct_left_then(d) != coproduct_right_then(d))
                    check_fail("coassociativity fails");
                if (!(collapse_left_counit(d) == g))
                    check_fail("left counit law fails");
                if (!(collapse_right_counit(d) == g))
                    check_fail("right counit law fails");
                return std::string();
            }});
        }
        return jobs;
    }

    // --- antipode -----------------------------------------------------------

    std::vector<Job> jobs_antipode(std::uint32_t ell, Preset preset)
    {
        std::vector<Job> jobs;
        for (std::uint32_t r = 1; r <= 4; ++r) {
            jobs.push_back(Job{"antipode xi-recursion l=" + std::to_string(ell) +
                                   " r=" + std::to_string(r),
                               [=]() {
                                   GammaElement acc(ell, preset);
                                   for (std::uint32_t i = 0; i <= r; ++i) {
                                       std::uint64_t e = 1;
                                       for (std::uint32_t k = 0; k < i; ++k)
                                           e *= ell;
                                       GammaElement head =
                                           i == r ? GammaElement::unit(ell, preset)
                                                  : GammaElement::from_monomial(
                                                        ell, preset,
                                                        MilnorMonomial::xi_gen(
                                                            r - i, static_cast<std::uint32_t>(e)));
                                       acc = acc + gamma_multiply(head,
                                                                  antipode_xi_gen(ell, preset, i));
                                   }
                                   if (!acc.is_zero())
                                       check_fail("sum xi_{r-i}^{l^i} c(xi_i) != 0");
                                   return std::string();
                               }});
            jobs.push_back(Job{"antipode tau-recursion l=" + std::to_string(ell) +
                                   " r=" + std::to_string(r),
                               [=]() {
                                   GammaElement acc = GammaElement::from_monomial(
                                       ell, preset, MilnorMonomial::tau_gen(r));
                                   acc = acc + antipode_tau_gen(ell, preset, r);
                                   for (std::uint32_t i = 0; i < r; ++i) {
                                       std::uint64_t e = 1;
                                       for (std::uint32_t k = 0; k < i; ++k)
                                           e *= ell;
                                       GammaElement head = GammaElement::from_monomial(
                                           ell, preset,
                                           MilnorMonomial::xi_gen(r - i,
                                                                  static_cast<std::uint32_t>(e)));
                                       acc = acc + gamma_multiply(head,
                                                                  antipode_tau_gen(ell, preset, i));
                                   }
                                   if (!acc.is_zero())
                                       check_fail("tau_r + sum + c(tau_r) != 0");
                                   return std::string();
                               }});
        }
        jobs.push_back(Job{"antipode c(eta_L(tau)) = eta_R(tau) l=" + std::to_string(ell), [=]() {
            if (ell != 2)
                return std::string("vacuous: tau is zero in the odd closed preset");
            GammaElement tau_elem = GammaElement::from_monomial(
                ell, preset, MilnorMonomial(), BaseScalar::tau(ell, preset));
            GammaElement lhs = antipode(tau_elem);
            GammaElement rhs = eta_R_scalar(ell, preset, BaseScalar::tau(ell, preset));
            if (!(lhs == rhs))
                check_fail("c(tau) = " + print_dual(lhs) + " but eta_R(tau) = " + print_dual(rhs));
            return std::string();
        }});
        return jobs;
    }

    // --- basis-count ----------------------------------------------------------

    std::vector<Job> jobs_basis_count(std::uint32_t ell, long long max_p)
    {
        std::vector<Job> jobs;
        for (long long p = 0; p <= max_p; ++p) {
            jobs.push_back(Job{"basis-count l=" + std::to_string(ell) + " p=" + std::to_string(p),
                               [=]() {
                                   std::string counts;
                                   for (long long q = 0; q <= p; ++q) {
                                       std::size_t a = op_basis(p, q, ell).size();
                                       std::size_t b = milnor_basis(p, q, ell).size();
                                       if (a != b)
                                           check_fail("(" + std::to_string(p) + "," +
                                                      std::to_string(q) + "): op " +
                                                      std::to_string(a) + " vs milnor " +
                                                      std::to_string(b));
                                       if (a > 0) {
                                           if (!counts.empty())
                                               counts += ' ';
                                           counts += "(" + std::to_string(p) + "," +
                                                     std::to_string(q) + "):" +
                                                     std::to_string(a);
                                       }
                                   }
                                   return counts;
                               }});
        }
        return jobs;
    }

    // --- pairing ---------------------------------------------------------------

    std::vector<Job> jobs_pairing(std::uint32_t ell, long long max_p)
    {
        std::vector<Job> jobs;
        for (long long p = 0; p <= max_p; ++p) {
            jobs.push_back(Job{"pairing l=" + std::to_string(ell) + " p=" + std::to_string(p),
                               [=]() {
                                   for (long long q = 0; q <= p; ++q) {
                                       FpMatrix m = pairing_matrix(p, q, ell);
                                       if (m.empty())
                                           continue;
                                       if (!matrix_invertible(m, ell))
                                           check_fail("matrix at (" + std::to_string(p) + "," +
                                                      std::to_string(q) +
                                                      ") is singular over F_l");
                                   }
                                   return std::string();
                               }});
        }
        return jobs;
    }

    // --- cross-model -------------------------------------------------------------

    std::vector<Job> jobs_cross_model(std::uint32_t ell, long long maxdeg, std::uint64_t fuel)
    {
        auto monos = std::make_shared<std::vector<OpMonomial>>(
            admissibles_up_to_degree(maxdeg, ell));
        std::vector<Job> jobs;
        for (std::size_t i = 0; i < monos->size(); ++i) {
            const OpMonomial u = (*monos)[i];
            jobs.push_back(Job{"cross-model l=" + std::to_string(ell) + " u=" +
                                   (print_op_monomial(u, ell).empty()
                                        ? "1"
                                        : print_op_monomial(u, ell)),
                               [=]() {
                                   OpElement eu = monomial_elem(ell, Preset::closed, u);
                                   DualFunctional fu = DualFunctional::of(eu);
                                   for (const OpMonomial& v : *monos) {
                                       if (u.bidegree(ell).p + v.bidegree(ell).p > maxdeg)
                                           continue;
                                       OpElement ev = monomial_elem(ell, Preset::closed, v);
                                       OpElement prod = multiply(eu, ev, fuel);
                                       DualFunctional lhs = DualFunctional::of(prod);
                                       DualFunctional rhs =
                                           convolution_multiply(fu, DualFunctional::of(ev));
                                       if (!(lhs == rhs))
                                           check_fail("functional mismatch for v=" +
                                                      print_op_monomial(v, ell));
                                   }
                                   return std::string();
                               }});
        }
        return jobs;
    }

}  // namespace

VerifyReport run_verify(Suite suite, std::uint32_t ell, Preset preset, VerifyBounds bounds)
{
    if (!is_prime(ell))
        throw Error(ErrorCode::bad_argument, "prime required");
    switch (suite) {
        case Suite::adem_oracle: {
            long long d = defaulted(bounds.max_degree, 40, 60, "max-degree");
            return execute(suite, jobs_adem_oracle(ell, preset, d, bounds.fuel));
        }
        case Suite::associativity: {
            long long d = defaulted(bounds.max_degree, 30, 40, "max-degree");
            return execute(suite, jobs_associativity(ell, preset, d, bounds.fuel, 300));
        }
        case Suite::coassoc: {
            long long d = defaulted(bounds.max_degree, 60, 80, "max-degree");
            return execute(suite, jobs_coassoc(ell, preset, d));
        }
        case Suite::antipode:
            return execute(suite, jobs_antipode(ell, preset));
        case Suite::basis_count: {
            long long p = defaulted(bounds.max_p, 50, 60, "max-p");
            return execute(suite, jobs_basis_count(ell, p));
        }
        case Suite::pairing: {
            long long p = defaulted(bounds.max_p, 30, 40, "max-p");
            return execute(suite, jobs_pairing(ell, p));
        }
        case Suite::cross_model: {
            long long d = defaulted(bounds.max_degree, 24, 30, "max-degree");
            return execute(suite, jobs_cross_model(ell, d, bounds.fuel));
        }
    }
    throw Error(ErrorCode::internal, "unhandled suite");
}

std::string render_report_text(const VerifyReport& r)
{
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty())
            os << " : " << c.detail;
        os << "\n";
    }
    os << r.suite << ": " << (r.checks.size() - r.failures) << "/" << r.checks.size()
       << " checks passed\n";
    return os.str();
}

nlohmann::ordered_json structured_report(const VerifyReport& r, std::uint32_t ell, Preset preset)
{
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"prime", ell},
            {"preset", preset_name(preset)},
            {"mode", "verify"},
            {"suite", r.suite},
            {"failures", r.failures},
            {"checks", std::move(checks)}};
}

std::string render_table_text(std::uint32_t ell, Preset preset, long long max_degree,
                              std::uint64_t fuel)
{
    std::ostringstream os;
    auto monos = admissibles_up_to_degree(max_degree, ell);
    for (const auto& u : monos)
        for (const auto& v : monos) {
            if (u.is_identity() || v.is_identity())
                continue;
            if (u.bidegree(ell).p + v.bidegree(ell).p > max_degree)
                continue;
            OpElement prod = multiply(OpElement::from_monomial(ell, preset, u),
                                      OpElement::from_monomial(ell, preset, v), fuel);
            os << print_op_monomial(u, ell) << " . " << print_op_monomial(v, ell) << " = "
               << print_op(prod) << "\n";
        }
    return os.str();
}

nlohmann::ordered_json structured_table(std::uint32_t ell, Preset preset, long long max_degree,
                                        std::uint64_t fuel)
{
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    auto monos = admissibles_up_to_degree(max_degree, ell);
    for (const auto& u : monos)
        for (const auto& v : monos) {
            if (u.is_identity() || v.is_identity())
                continue;
            if (u.bidegree(ell).p + v.bidegree(ell).p > max_degree)
                continue;
            OpElement prod = multiply(OpElement::from_monomial(ell, preset, u),
                                      OpElement::from_monomial(ell, preset, v), fuel);
            entries.push_back({{"left", print_op_monomial(u, ell)},
                               {"right", print_op_monomial(v, ell)},
                               {"product", structured_op(prod)["terms"]}});
        }
    return {{"prime", ell},
            {"preset", preset_name(preset)},
            {"mode", "table"},
            {"max_degree", max_degree},
            {"entries", std::move(entries)}};
}

}  // namespace motsteen
