#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "motsteen/ops.hpp"

namespace motsteen {

enum class Suite {
    adem_oracle,
    associativity,
    coassoc,
    antipode,
    basis_count,
    pairing,
    cross_model,
};

const char* suite_name(Suite s);
Suite suite_from_name(std::string_view name);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::size_t failures = 0;
};

struct VerifyBounds {
    long long max_p = -1;       // -1 selects the suite default
    long long max_degree = -1;  // -1 selects the suite default
    std::uint64_t fuel = kDefaultFuel;
};

// Runs one verification suite, fanning independent work items to a worker
// pool. Bounds beyond the documented maxima are rejected.
VerifyReport run_verify(Suite suite, std::uint32_t ell, Preset preset, VerifyBounds bounds);

std::string render_report_text(const VerifyReport& r);
nlohmann::ordered_json structured_report(const VerifyReport& r, std::uint32_t ell, Preset preset);

// Multiplication table of admissible monomials up to a degree bound.
std::string render_table_text(std::uint32_t ell, Preset preset, long long max_degree,
                              std::uint64_t fuel);
nlohmann::ordered_json structured_table(std::uint32_t ell, Preset preset, long long max_degree,
                                        std::uint64_t fuel);

}  // namespace motsteen
