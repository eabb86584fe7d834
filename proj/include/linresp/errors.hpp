#pragma once

#include <stdexcept>
#include <string>

namespace linresp {

/// Base class for all library errors. `code()` is a stable machine-readable
/// tag, suitable for JSON error output.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define LINRESP_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                     \
    public:                                                         \
        explicit Name(const std::string& msg) : Error(#Name, msg) {} \
    }

LINRESP_DEFINE_ERROR(OutOfDomain);
LINRESP_DEFINE_ERROR(AmbiguousSide);
LINRESP_DEFINE_ERROR(AboveCriticalValue);
LINRESP_DEFINE_ERROR(OrbitHitsCritical);
LINRESP_DEFINE_ERROR(NotExpanding);
LINRESP_DEFINE_ERROR(InvalidMap);
LINRESP_DEFINE_ERROR(AnchorMismatch);
LINRESP_DEFINE_ERROR(LengthMismatch);
LINRESP_DEFINE_ERROR(NonExpandingMultiplier);
LINRESP_DEFINE_ERROR(NoConvergence);
LINRESP_DEFINE_ERROR(S1Disagreement);
LINRESP_DEFINE_ERROR(S1SignViolation);
LINRESP_DEFINE_ERROR(NotMeanZero);
LINRESP_DEFINE_ERROR(NoGap);
LINRESP_DEFINE_ERROR(MissingDecomposition);
LINRESP_DEFINE_ERROR(DegenerateBump);
LINRESP_DEFINE_ERROR(NotHorizontal);
LINRESP_DEFINE_ERROR(NotHomeomorphism);
LINRESP_DEFINE_ERROR(BranchInconsistency);
LINRESP_DEFINE_ERROR(NotTangent);
LINRESP_DEFINE_ERROR(ConfigError);

#undef LINRESP_DEFINE_ERROR

} // namespace linresp
