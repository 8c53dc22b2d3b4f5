#pragma once

#include <stdexcept>
#include <string>

namespace qmod {

// Typed domain errors. The CLI prints name() verbatim and maps domain
// errors to exit code 1; tests match on the concrete type.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define QMOD_DEFINE_ERROR(E)                                                   \
    class E : public Error {                                                   \
    public:                                                                    \
        explicit E(const std::string& what) : Error(#E, what) {}               \
    }

QMOD_DEFINE_ERROR(ZeroSeries);
QMOD_DEFINE_ERROR(NotDivisible);
QMOD_DEFINE_ERROR(NegativeWeight);
QMOD_DEFINE_ERROR(UnsupportedClass);
QMOD_DEFINE_ERROR(ForbiddenWeight);
QMOD_DEFINE_ERROR(MuUndefined);
QMOD_DEFINE_ERROR(SeedInconsistent);
QMOD_DEFINE_ERROR(Resonant);
QMOD_DEFINE_ERROR(IndicialDegenerate);
QMOD_DEFINE_ERROR(UnsupportedBeta);
QMOD_DEFINE_ERROR(InsufficientPrecision);
QMOD_DEFINE_ERROR(NotQuasimodular);
QMOD_DEFINE_ERROR(OddWeight);
QMOD_DEFINE_ERROR(BadInput);

#undef QMOD_DEFINE_ERROR

} // namespace qmod
