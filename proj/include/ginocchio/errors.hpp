#pragma once

#include <stdexcept>
#include <string>

namespace ginocchio {

// Error taxonomy shared by every module. The CLI maps these onto exit
// codes: validation -> 1, numeric/solver -> 2, io -> 3.
enum class errc {
    invalid_branch,
    invalid_gamma,
    singular_on_axis,
    no_convergence,
    asymmetric_grid,
    singular_point,
    branch_jump,
    out_of_window,
    tail_too_large,
    basin_escape,
    inconsistent_pairing,
    io_failure,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_branch:       return "InvalidBranch";
        case errc::invalid_gamma:        return "InvalidGamma";
        case errc::singular_on_axis:     return "SingularOnAxis";
        case errc::no_convergence:       return "NoConvergence";
        case errc::asymmetric_grid:      return "AsymmetricGrid";
        case errc::singular_point:       return "SingularPoint";
        case errc::branch_jump:          return "BranchJump";
        case errc::out_of_window:        return "OutOfWindow";
        case errc::tail_too_large:       return "TailTooLarge";
        case errc::basin_escape:         return "BasinEscape";
        case errc::inconsistent_pairing: return "InconsistentPairing";
        case errc::io_failure:           return "IoFailure";
    }
    return "Unknown";
}

class GinError : public std::runtime_error {
public:
    GinError(errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
          code_(code) {}

    errc code() const noexcept { return code_; }

    // 1 = bad input, 2 = numeric failure, 3 = io.
    int exit_code() const noexcept {
        switch (code_) {
            case errc::invalid_branch:
            case errc::invalid_gamma:
            case errc::singular_on_axis:
            case errc::asymmetric_grid:
            case errc::out_of_window:
                return 1;
            case errc::io_failure:
                return 3;
            default:
                return 2;
        }
    }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& detail) {
    throw GinError(code, detail);
}

}  // namespace ginocchio
