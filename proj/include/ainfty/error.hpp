#pragma once

#include <stdexcept>
#include <string>

namespace ainfty {

enum class errc {
    invalid_family,
    invalid_exponent,
    invalid_spec,
    invalid_weight,
    degenerate_input,
    not_computable,
    oracle_refused,
    io_failure,
};

inline const char* to_string(errc c) {
    switch (c) {
        case errc::invalid_family: return "invalid-family";
        case errc::invalid_exponent: return "invalid-exponent";
        case errc::invalid_spec: return "invalid-spec";
        case errc::invalid_weight: return "invalid-weight";
        case errc::degenerate_input: return "degenerate-input";
        case errc::not_computable: return "not-computable";
        case errc::oracle_refused: return "oracle-refused";
        case errc::io_failure: return "io-failure";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

}  // namespace ainfty
