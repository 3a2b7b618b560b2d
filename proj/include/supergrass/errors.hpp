#pragma once

#include <stdexcept>
#include <string>

namespace supergrass {

// All library failures are reported through these exception types.
// Verification *results* (a failed identity check) are ordinary return
// values, not exceptions.

struct ring_mismatch_error : std::runtime_error {
    explicit ring_mismatch_error(const std::string& what) : std::runtime_error(what) {}
};

struct parity_error : std::runtime_error {
    explicit parity_error(const std::string& what) : std::runtime_error(what) {}
};

struct non_invertible_error : std::runtime_error {
    explicit non_invertible_error(const std::string& what) : std::runtime_error(what) {}
};

struct dimension_error : std::runtime_error {
    explicit dimension_error(const std::string& what) : std::runtime_error(what) {}
};

struct index_error : std::out_of_range {
    explicit index_error(const std::string& what) : std::out_of_range(what) {}
};

struct conjugation_error : std::runtime_error {
    explicit conjugation_error(const std::string& what) : std::runtime_error(what) {}
};

struct malformed_lift_error : std::runtime_error {
    explicit malformed_lift_error(const std::string& what) : std::runtime_error(what) {}
};

struct not_involution_error : std::runtime_error {
    explicit not_involution_error(const std::string& what) : std::runtime_error(what) {}
};

struct not_structure_error : std::runtime_error {
    explicit not_structure_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

struct unsupported_version_error : parse_error {
    explicit unsupported_version_error(const std::string& what) : parse_error(what) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace supergrass
