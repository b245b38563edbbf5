#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "motsteen/classical.hpp"
#include "motsteen/dual.hpp"
#include "motsteen/ops.hpp"
#include "motsteen/pairing.hpp"

namespace motsteen {

enum class Mode { op, dual, classical };

const char* mode_name(Mode m);
Mode mode_from_name(std::string_view name);

// Element grammar: terms separated by `+`, each an optional leading scalar
// (integer literal, `r`, `t`, `^` powers) followed by generators. Generators
// are `b`, `P<i>`, `Sq<k>` (l = 2 only) in op/classical mode and `t<r>`,
// `x<r>` in dual mode. Parse errors carry the byte offset of the offending
// token.
OpElement parse_op(std::string_view text, std::uint32_t ell, Preset preset);
GammaElement parse_dual(std::string_view text, std::uint32_t ell, Preset preset);
ClassicalElement parse_classical(std::string_view text, std::uint32_t ell);

std::string print_scalar(const BaseScalar& s);
std::string print_op_monomial(const OpMonomial& m, std::uint32_t ell);
std::string print_milnor_monomial(const MilnorMonomial& m);
std::string print_op(const OpElement& e);
std::string print_dual(const GammaElement& e);
std::string print_tensor(const TensorElement& t);
std::string print_classical(const ClassicalElement& e);

nlohmann::ordered_json structured_scalar_body(const BaseScalar& s);
nlohmann::ordered_json structured_op(const OpElement& e);
nlohmann::ordered_json structured_dual(const GammaElement& e);
nlohmann::ordered_json structured_tensor(const TensorElement& t);
nlohmann::ordered_json structured_classical(const ClassicalElement& e);
nlohmann::ordered_json structured_scalar(const BaseScalar& s);
nlohmann::ordered_json structured_basis(Mode mode, long long p, long long q, std::uint32_t ell);
nlohmann::ordered_json structured_pairing_matrix(long long p, long long q, std::uint32_t ell);

std::string render_basis_text(Mode mode, long long p, long long q, std::uint32_t ell);
std::string render_pairing_matrix_text(long long p, long long q, std::uint32_t ell);

}  // namespace motsteen
