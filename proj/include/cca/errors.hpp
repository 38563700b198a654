#pragma once

#include <stdexcept>
#include <string>

namespace cca {

// Base class for all numerical failures raised by the library.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PoleProximity : NumericError {
    explicit PoleProximity(const std::string& msg) : NumericError(msg) {}
};

struct ResonanceDenominator : NumericError {
    explicit ResonanceDenominator(const std::string& msg) : NumericError(msg) {}
};

struct RootCountMismatch : NumericError {
    explicit RootCountMismatch(const std::string& msg) : NumericError(msg) {}
};

struct SingularSystem : NumericError {
    explicit SingularSystem(const std::string& msg) : NumericError(msg) {}
};

struct ZeroEigenvalue : NumericError {
    explicit ZeroEigenvalue(const std::string& msg) : NumericError(msg) {}
};

struct EvenChainResonance : NumericError {
    explicit EvenChainResonance(const std::string& msg) : NumericError(msg) {}
};

struct ZeroDetuning : NumericError {
    explicit ZeroDetuning(const std::string& msg) : NumericError(msg) {}
};

struct ConditionViolated : NumericError {
    explicit ConditionViolated(const std::string& msg) : NumericError(msg) {}
};

struct DimensionMismatch : NumericError {
    explicit DimensionMismatch(const std::string& msg) : NumericError(msg) {}
};

struct ToleranceNotMet : NumericError {
    explicit ToleranceNotMet(const std::string& msg) : NumericError(msg) {}
};

struct UnsupportedSector : NumericError {
    explicit UnsupportedSector(const std::string& msg) : NumericError(msg) {}
};

struct ZeroTrace : NumericError {
    explicit ZeroTrace(const std::string& msg) : NumericError(msg) {}
};

struct ConfigInvalid : std::runtime_error {
    explicit ConfigInvalid(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cca
