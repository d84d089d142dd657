#ifndef NCRK_ERRORS_HPP
#define NCRK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ncrk {

// Error taxonomy shared by the library, the C API and the CLI.
// Categories map onto process exit codes: input -> 2, resource/field -> 3,
// failed verification -> 1.
enum class errc {
    invalid_input,       // malformed instance/witness data, dimension mismatch
    field_too_small,     // requested sample set exceeds the field
    unsupported_char,    // characteristic divides a blow-up degree
    unsupported_op,      // e.g. division requested in a non-field ring
    division_by_zero,
    invalid_witness,     // witness fails re-verification
    too_large,           // instance exceeds configured caps
    internal             // broken internal invariant (always a bug)
};

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    errc kind() const { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

inline void require(bool cond, errc kind, const std::string& msg) {
    if (!cond) fail(kind, msg);
}

} // namespace ncrk

#endif
