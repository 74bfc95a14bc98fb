#pragma once

#include <stdexcept>
#include <string>

namespace p1dyn {

// Computation-level errors. The CLI maps these to exit code 2; malformed
// input is reported before any of these can fire (exit code 1).

struct DegenerateMap : std::runtime_error {
    explicit DegenerateMap(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMobius : std::runtime_error {
    explicit SingularMobius(const std::string& what) : std::runtime_error(what) {}
};

struct NotACycle : std::runtime_error {
    explicit NotACycle(const std::string& what) : std::runtime_error(what) {}
};

struct DomainMismatch : std::runtime_error {
    explicit DomainMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroPolynomial : std::runtime_error {
    explicit ZeroPolynomial(const std::string& what) : std::runtime_error(what) {}
};

struct NotOnCurve : std::runtime_error {
    explicit NotOnCurve(const std::string& what) : std::runtime_error(what) {}
};

struct SingularPoint : std::runtime_error {
    explicit SingularPoint(const std::string& what) : std::runtime_error(what) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct NonExactDivision : std::runtime_error {
    explicit NonExactDivision(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateParameter : std::runtime_error {
    explicit DegenerateParameter(const std::string& what) : std::runtime_error(what) {}
};

struct NotRepelling : std::runtime_error {
    explicit NotRepelling(const std::string& what) : std::runtime_error(what) {}
};

struct RootFailure : std::runtime_error {
    explicit RootFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace p1dyn
