#ifndef CARNOT_ERROR_HPP
#define CARNOT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace carnot {

// Exit-code contract: 0 pass, 1 check failure, 2 usage/parse error, 3 internal invariant violation.
enum class ErrorKind { check = 1, usage = 2, invariant = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }
    int exit_code() const { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void usage_error(const std::string& msg) { throw Error(ErrorKind::usage, msg); }
[[noreturn]] inline void check_error(const std::string& msg) { throw Error(ErrorKind::check, msg); }
[[noreturn]] inline void invariant_error(const std::string& msg) { throw Error(ErrorKind::invariant, msg); }

}  // namespace carnot

#endif
