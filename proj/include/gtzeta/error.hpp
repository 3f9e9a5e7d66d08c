#pragma once

#include <stdexcept>
#include <string>

namespace gtzeta {

enum class Errc {
    invalid_weight,
    invalid_pattern,
    invalid_extremal,
    invalid_exponent,
    length_mismatch,
    label_mismatch,
    index_out_of_range,
    singular_matrix,
    not_in_module,
    not_critical,
    not_prime,
    interlacing_violation,
    degree_mismatch,
    weight_mismatch,
    internal_consistency,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_weight: return "E_INVALID_WEIGHT";
        case Errc::invalid_pattern: return "E_INVALID_PATTERN";
        case Errc::invalid_extremal: return "E_INVALID_EXTREMAL";
        case Errc::invalid_exponent: return "E_INVALID_EXPONENT";
        case Errc::length_mismatch: return "E_LENGTH_MISMATCH";
        case Errc::label_mismatch: return "E_LABEL_MISMATCH";
        case Errc::index_out_of_range: return "E_INDEX_OUT_OF_RANGE";
        case Errc::singular_matrix: return "E_SINGULAR_MATRIX";
        case Errc::not_in_module: return "E_NOT_IN_MODULE";
        case Errc::not_critical: return "E_NOT_CRITICAL";
        case Errc::not_prime: return "E_NOT_PRIME";
        case Errc::interlacing_violation: return "E_INTERLACING_VIOLATION";
        case Errc::degree_mismatch: return "E_DEGREE_MISMATCH";
        case Errc::weight_mismatch: return "E_WEIGHT_MISMATCH";
        case Errc::internal_consistency: return "E_INTERNAL_CONSISTENCY";
    }
    return "E_UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }
    const char* code_name() const { return errc_name(code_); }

private:
    Errc code_;
};

}  // namespace gtzeta
