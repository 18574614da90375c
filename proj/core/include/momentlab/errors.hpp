#pragma once

#include <stdexcept>
#include <string>

namespace momentlab {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConditioningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace momentlab
