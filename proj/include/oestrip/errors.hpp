#pragma once
#include <stdexcept>
#include <string>

namespace oestrip {

// exit-code 3 class: anything that went wrong numerically
struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMatrix : NumericalFailure {
    explicit SingularMatrix(const std::string& msg) : NumericalFailure(msg) {}
};
struct BranchPointTooClose : NumericalFailure {
    explicit BranchPointTooClose(const std::string& msg) : NumericalFailure(msg) {}
};
struct BranchJump : NumericalFailure {
    explicit BranchJump(const std::string& msg) : NumericalFailure(msg) {}
};
struct DeformationFailed : NumericalFailure {
    explicit DeformationFailed(const std::string& msg) : NumericalFailure(msg) {}
};
struct TruncationTooLow : NumericalFailure {
    explicit TruncationTooLow(const std::string& msg) : NumericalFailure(msg) {}
};
struct IndexMismatch : NumericalFailure {
    explicit IndexMismatch(const std::string& msg) : NumericalFailure(msg) {}
};
struct DenominatorVanishes : NumericalFailure {
    explicit DenominatorVanishes(const std::string& msg) : NumericalFailure(msg) {}
};
struct DegenerateP : NumericalFailure {
    explicit DegenerateP(const std::string& msg) : NumericalFailure(msg) {}
};
struct ChartOverflow : NumericalFailure {
    explicit ChartOverflow(const std::string& msg) : NumericalFailure(msg) {}
};
struct PoleTooClose : NumericalFailure {
    explicit PoleTooClose(const std::string& msg) : NumericalFailure(msg) {}
};
struct DomainError : NumericalFailure {
    explicit DomainError(const std::string& msg) : NumericalFailure(msg) {}
};
struct SolveFailed : NumericalFailure {
    explicit SolveFailed(const std::string& msg) : NumericalFailure(msg) {}
};
struct CoincidentWavenumbers : NumericalFailure {
    explicit CoincidentWavenumbers(const std::string& msg) : NumericalFailure(msg) {}
};

// exit-code 2 and 4 classes
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};
struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace oestrip
