#pragma once

#include <stdexcept>
#include <string>

namespace dbx {

// Failure categories reported by the library. The CLI maps these onto its
// exit-code contract, so additions here must stay in sync with tools/dbx_main.
enum class ErrorCode {
    Validation,        // malformed input, bad field, out-of-range parameter
    Domain,            // evaluation outside a curve/surface parameter domain
    Regularity,        // |dbeta/dt| below the regularity floor
    SingularCurvature, // kappa below the frame cutoff, rho undefined
    FrameUndefined,    // Frenet/Darboux frame not defined at the request
    FrameDrift,        // integrated frame left the orthonormality budget
    CaseInapplicable,  // requested coefficient case does not match the curve
    RangeMismatch,     // theta coverage or grid range inconsistent
    InconsistentData,  // initial data violating a required relation
    NonFinite          // NaN/Inf appeared during integration
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace dbx
