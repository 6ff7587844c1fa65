#ifndef PHIG_ERRORS_HPP
#define PHIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phig {

enum class errc {
    invalid_argument,
    denominator_divisible_by_p,
    insufficient_padic_precision,
    zero_argument,
    not_one_unit,
    pole_depth_exceeded,
    no_solution_at_precision,
    non_primitive_exponent,
    exponent_out_of_range,
    parameter_out_of_range,
    inconsistent_omega_n,
    insufficient_window,
    non_unit_diagonal,
    insufficient_precision,
    not_in_bkz,
    moment_condition_violated,
    singular_input,
    value_outside_line,
    unknown_suite,
    invalid_config,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc c, const std::string& what)
        : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc c, const std::string& what) { throw error(c, what); }

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::invalid_argument: return "InvalidArgument";
        case errc::denominator_divisible_by_p: return "DenominatorDivisibleByP";
        case errc::insufficient_padic_precision: return "InsufficientPadicPrecision";
        case errc::zero_argument: return "ZeroArgument";
        case errc::not_one_unit: return "NotOneUnit";
        case errc::pole_depth_exceeded: return "PoleDepthExceeded";
        case errc::no_solution_at_precision: return "NoSolutionAtPrecision";
        case errc::non_primitive_exponent: return "NonPrimitiveExponent";
        case errc::exponent_out_of_range: return "ExponentOutOfRange";
        case errc::parameter_out_of_range: return "ParameterOutOfRange";
        case errc::inconsistent_omega_n: return "InconsistentOmegaN";
        case errc::insufficient_window: return "InsufficientWindow";
        case errc::non_unit_diagonal: return "NonUnitDiagonal";
        case errc::insufficient_precision: return "InsufficientPrecision";
        case errc::not_in_bkz: return "NotInBKZ";
        case errc::moment_condition_violated: return "MomentConditionViolated";
        case errc::singular_input: return "SingularInput";
        case errc::value_outside_line: return "ValueOutsideLine";
        case errc::unknown_suite: return "UnknownSuite";
        case errc::invalid_config: return "InvalidConfig";
    }
    return "UnknownError";
}

} // namespace phig

#endif
