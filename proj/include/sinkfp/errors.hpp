#ifndef SINKFP_ERRORS_HPP
#define SINKFP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace sinkfp {

// Every failure carries a stable machine-readable code; the CLI prints them
// as "ERROR:<code>: <message>".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define SINKFP_DEFINE_ERROR(NAME, CODE)                      \
    class NAME : public Error {                              \
    public:                                                  \
        explicit NAME(const std::string& msg)                \
            : Error(CODE, msg) {}                            \
    }

SINKFP_DEFINE_ERROR(PoleError, "POLE");
SINKFP_DEFINE_ERROR(NoConvergence, "NO_CONVERGENCE");
SINKFP_DEFINE_ERROR(SingularArgument, "SINGULAR_ARGUMENT");
SINKFP_DEFINE_ERROR(OutOfSupport, "OUT_OF_SUPPORT");
SINKFP_DEFINE_ERROR(NegativeRbar, "NEGATIVE_RBAR");
SINKFP_DEFINE_ERROR(InvalidModel, "INVALID_MODEL");
SINKFP_DEFINE_ERROR(InvalidParam, "INVALID_PARAM");
SINKFP_DEFINE_ERROR(DegenerateMu, "DEGENERATE_MU");
SINKFP_DEFINE_ERROR(OutOfSpectrum, "OUT_OF_SPECTRUM");
SINKFP_DEFINE_ERROR(TimeTooSmall, "TIME_TOO_SMALL");
SINKFP_DEFINE_ERROR(QuadratureFailure, "QUADRATURE_FAILURE");
SINKFP_DEFINE_ERROR(WrongRegime, "WRONG_REGIME");
SINKFP_DEFINE_ERROR(InvalidMapping, "INVALID_MAPPING");
SINKFP_DEFINE_ERROR(NoInteriorMax, "NO_INTERIOR_MAX");
SINKFP_DEFINE_ERROR(InstabilityDetected, "INSTABILITY_DETECTED");
SINKFP_DEFINE_ERROR(DomainTooSmall, "DOMAIN_TOO_SMALL");
SINKFP_DEFINE_ERROR(PathBlowup, "PATH_BLOWUP");

#undef SINKFP_DEFINE_ERROR

} // namespace sinkfp

#endif // SINKFP_ERRORS_HPP
