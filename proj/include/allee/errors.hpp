#pragma once

#include <stdexcept>
#include <string>

namespace allee {

// Failure kinds shared by every module. DomainError marks input outside the
// model's admissible set or an unmet precondition; the others mark analyses
// that ran but could not reach a conclusion.
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

class DegenerateError : public std::runtime_error {
public:
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

class EscapeError : public std::runtime_error {
public:
    explicit EscapeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace allee
