#pragma once

#include <stdexcept>
#include <string>

namespace apartdomain {

/// Base class for all contract violations raised by the library.
/// Fuel exhaustion is never an error; semi-deciders answer Unknown instead.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& w) : Error("precondition violated: " + w) {}
};

struct InvalidCode : Error {
    explicit InvalidCode(const std::string& w) : Error("invalid code: " + w) {}
};

struct DescriptorMismatch : Error {
    explicit DescriptorMismatch(const std::string& w) : Error("descriptor mismatch: " + w) {}
};

struct MissingDeltaBot : Error {
    MissingDeltaBot() : Error("descriptor has no delta_bot decision") {}
};

struct MissingDelta : Error {
    explicit MissingDelta(const std::string& w) : Error("missing decidability data: " + w) {}
};

struct MissingRefineDecision : Error {
    MissingRefineDecision() : Error("descriptor has no refine decision") {}
};

struct MissingBoundednessData : Error {
    MissingBoundednessData() : Error("descriptor has no boundedness data (join2)") {}
};

struct OracleFailure : Error {
    explicit OracleFailure(const std::string& w) : Error("oracle failure: " + w) {}
};

struct FuelExhausted : Error {
    explicit FuelExhausted(const std::string& w) : Error("fuel exhausted: " + w) {}
};

struct UnboundedJoin : Error {
    explicit UnboundedJoin(const std::string& w) : Error("join does not exist: " + w) {}
};

struct InvalidPoset : Error {
    explicit InvalidPoset(const std::string& w) : Error("invalid poset: " + w) {}
};

struct SizeTooLarge : Error {
    explicit SizeTooLarge(const std::string& w) : Error("size too large: " + w) {}
};

struct ScheduleViolation : Error {
    explicit ScheduleViolation(const std::string& w) : Error("width schedule violated: " + w) {}
};

struct NotDecidable : Error {
    explicit NotDecidable(const std::string& w) : Error("not decidable: " + w) {}
};

} // namespace apartdomain
