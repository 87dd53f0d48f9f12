#pragma once

#include <stdexcept>
#include <string>

namespace magnon {

enum class Errc {
    invalid_argument,
    too_large,
    never_declines,
    degenerate_fit,
    empty_frame,
    unsupported_gate,
    parse_error,
    dimension_mismatch,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace magnon
