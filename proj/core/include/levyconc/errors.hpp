#pragma once

#include <stdexcept>
#include <string>

namespace levyconc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature failed to reach the requested tolerance.
/// Carries the partial estimate accumulated so far.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double partial)
        : Error(what), partial_estimate(partial) {}
    double partial_estimate;
};

/// A scale equation (V(x)/x^2 = c/t or the mean-scale variant) has no
/// solution: the left side never reaches the requested level.
class LevelNeverAttained : public Error {
public:
    LevelNeverAttained(const std::string& what, double level, double sup_value)
        : Error(what), level(level), sup_value(sup_value) {}
    double level;
    double sup_value;
};

class NonConvergence : public Error {
public:
    using Error::Error;
};

/// A theorem hypothesis does not hold. `observed` is the offending quantity,
/// `limit` the value it had to stay within.
class ConditionViolated : public Error {
public:
    ConditionViolated(const std::string& what, double observed, double limit)
        : Error(what), observed(observed), limit(limit) {}
    double observed;
    double limit;
};

class InfiniteMean : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace levyconc
