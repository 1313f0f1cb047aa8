#pragma once

#include <stdexcept>
#include <string>

namespace kll {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An input violates an operation's precondition. The CLI maps these to exit code 2.
class PreconditionError : public Error {
public:
    PreconditionError(std::string kind, const std::string& detail)
        : Error(kind + ": " + detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// An enumeration hit its configured cap. The CLI maps these to exit code 3.
class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& detail) : Error("BudgetExceeded: " + detail) {}
};

#define KLL_DEFINE_PRECONDITION(Name)                                              \
    class Name : public PreconditionError {                                        \
    public:                                                                        \
        explicit Name(const std::string& detail) : PreconditionError(#Name, detail) {} \
    };

KLL_DEFINE_PRECONDITION(InvalidArgument)
KLL_DEFINE_PRECONDITION(ReduciblePolynomial)
KLL_DEFINE_PRECONDITION(NonMonogenicPrime)
KLL_DEFINE_PRECONDITION(NonUnimodular)
KLL_DEFINE_PRECONDITION(CommutingGenerators)
KLL_DEFINE_PRECONDITION(NonIntegralTraces)
KLL_DEFINE_PRECONDITION(CommonFixedPoint)
KLL_DEFINE_PRECONDITION(RelationFailure)
KLL_DEFINE_PRECONDITION(NotSurjective)
KLL_DEFINE_PRECONDITION(RelatorNotKilled)
KLL_DEFINE_PRECONDITION(EmptyLocus)
KLL_DEFINE_PRECONDITION(NotInvolution)
KLL_DEFINE_PRECONDITION(NotCommuting)
KLL_DEFINE_PRECONDITION(FirstBettiTooSmall)
KLL_DEFINE_PRECONDITION(HypothesisViolated)
KLL_DEFINE_PRECONDITION(DenominatorNotCoprime)
KLL_DEFINE_PRECONDITION(RelatorViolated)
KLL_DEFINE_PRECONDITION(TooLargeForExact)
KLL_DEFINE_PRECONDITION(Disconnected)
KLL_DEFINE_PRECONDITION(SchemaError)

#undef KLL_DEFINE_PRECONDITION

}  // namespace kll
