#pragma once

/// Error types shared across the library. Resource gates (caps, budgets)
/// and cross-check failures are distinct types so callers can map them to
/// distinct exit codes.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilclean {

struct RingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Arithmetic between elements of different rings.
struct RingMismatchError : RingError {
    using RingError::RingError;
};

/// Positioned failure from the ring-spec grammar.
struct ParseError : RingError {
    std::size_t offset;
    std::vector<std::string> expected;

    ParseError(std::string message, std::size_t offset_, std::vector<std::string> expected_)
        : RingError(std::move(message)), offset(offset_), expected(std::move(expected_)) {}
};

/// An exhaustive computation was asked to run past its configured cap.
struct CapExceeded : RingError {
    std::string cap_name;
    std::uint64_t required;
    std::uint64_t cap;

    CapExceeded(std::string cap_name_, std::uint64_t required_, std::uint64_t cap_)
        : RingError(cap_name_ + " cap exceeded: need " + std::to_string(required_) +
                    ", cap is " + std::to_string(cap_)),
          cap_name(std::move(cap_name_)), required(required_), cap(cap_) {}
};

/// A scan ran out of its element-visit budget. Budgets are charged in
/// canonical scan order, so the outcome does not depend on thread count.
struct BudgetExceeded : RingError {
    std::string context;
    std::uint64_t budget;
    std::uint64_t consumed;

    BudgetExceeded(std::string context_, std::uint64_t budget_, std::uint64_t consumed_)
        : RingError("budget exceeded in " + context_ + ": " + std::to_string(consumed_) +
                    " visits against budget " + std::to_string(budget_)),
          context(std::move(context_)), budget(budget_), consumed(consumed_) {}
};

/// The fast decision path and the brute-force oracle disagreed. Always fatal.
struct MethodDiscrepancy : RingError {
    using RingError::RingError;
};

/// Structured refusal from the constructive pipeline: the quotient by the
/// radical is not Boolean; `witness` is its smallest non-idempotent element.
struct NonBooleanQuotient : RingError {
    std::uint64_t witness;
    std::string quotient_spec;

    NonBooleanQuotient(std::uint64_t witness_, std::string quotient_spec_)
        : RingError("quotient " + quotient_spec_ + " is not Boolean; element " +
                    std::to_string(witness_) + " is not idempotent"),
          witness(witness_), quotient_spec(std::move(quotient_spec_)) {}
};

/// The theorem-only decision path cannot answer (non-abelian ring, quotient
/// not Boolean); the caller should fall back to the oracle.
struct TheoremRefusal : RingError {
    using RingError::RingError;
};

}  // namespace nilclean
