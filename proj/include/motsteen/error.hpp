#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace motsteen {

enum class ErrorCode {
    bad_argument,
    parse,
    preset_mismatch,
    unsupported_scalar_commutation,
    fuel_exhausted,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::size_t position = npos)
        : std::runtime_error(std::move(message)), code_(code), position_(position)
    {
    }

    ErrorCode code() const { return code_; }
    // Byte offset into the input for parse errors, npos otherwise.
    std::size_t position() const { return position_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    ErrorCode code_;
    std::size_t position_;
};

}  // namespace motsteen
