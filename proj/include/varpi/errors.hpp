#ifndef VARPI_ERRORS_HPP
#define VARPI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace varpi {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid input: a parameter outside its published bound, a malformed
/// polynomial, a character outside its accessibility range, ...
/// The CLI maps this to exit code 2.
struct domain_error : error {
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/// An operation would return a result with no certified digits.
/// The CLI maps this to exit code 3.
struct precision_error : error {
    explicit precision_error(const std::string& msg) : error(msg) {}
};

/// A serialized object does not match its schema. `pointer` is a JSON
/// pointer to the offending field.
struct schema_error : error {
    std::string pointer;
    schema_error(const std::string& ptr, const std::string& msg)
        : error(msg + " (at " + ptr + ")"), pointer(ptr) {}
};

} // namespace varpi

#endif
