#pragma once

#include <stdexcept>
#include <string>

namespace termstore {

enum class ErrorCode {
    // schema construction and identity
    schema_error,
    wrong_schema,
    // name resolution
    unknown_type,
    unknown_association,
    unknown_attribute,
    unknown_role,
    // entity and link mutation
    duplicate_id,
    duplicate_link,
    dangling_endpoint,
    not_found,
    entity_still_linked,
    missing_required_attribute,
    value_outside_enumeration,
    invalid_identifier,
    // terminology builders
    term_already_assigned,
    already_has_superordinate,
    cycle_detected,
    self_link,
    not_a_type_characteristic,
    self_group,
    invalid_language,
    // serialization formats
    parse_error,
    conflict,
    invalid_iri,
    validation_failed,
    // tooling
    io_error,
    usage_error,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace termstore
