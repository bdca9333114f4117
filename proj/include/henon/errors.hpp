#pragma once

#include <stdexcept>
#include <string>

namespace henon {

/// Numerical procedure failed to converge or to stabilize under refinement.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A computed quantity contradicts one of the theorem-level assertions
/// (bound, monotonicity, two-route agreement, form comparison).
class VerificationFailure : public std::runtime_error {
public:
    explicit VerificationFailure(const std::string& what) : std::runtime_error(what) {}
};

/// A persisted document does not match the expected schema.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace henon
