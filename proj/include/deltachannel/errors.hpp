#pragma once

#include <stdexcept>
#include <string>

namespace deltachannel {

/// Base for all solver errors. `channel` is the 1-based channel index the
/// failure belongs to, or 0 when it is not tied to a particular channel.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, int channel = 0)
        : std::runtime_error(what), channel_(channel) {}

    int channel() const noexcept { return channel_; }

private:
    int channel_;
};

/// Energy sits within the threshold tolerance of an asymptotic potential value.
class ThresholdSingularity : public Error {
public:
    using Error::Error;
};

/// Energy is at (or too close to) a bound state of an uncoupled channel.
class PoleProximity : public Error {
public:
    using Error::Error;
};

/// Adaptive step control broke down.
class IntegrationFailure : public Error {
public:
    using Error::Error;
};

/// A linear solve was too badly conditioned to trust.
class NumericalBreakdown : public Error {
public:
    using Error::Error;
};

/// Operation called outside its domain (e.g. incidence channel closed).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& field, const std::string& message)
        : std::runtime_error(format(line, field, message)), line_(line), field_(field) {}

    int line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    static std::string format(int line, const std::string& field, const std::string& message) {
        std::string out = "line " + std::to_string(line);
        if (!field.empty()) out += ", field '" + field + "'";
        return out + ": " + message;
    }

    int line_;
    std::string field_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Re-throws `e` as the same error kind, tagged with `channel`.
template <class E>
[[noreturn]] void rethrow_for_channel(const E& e, int channel) {
    throw E("channel " + std::to_string(channel) + ": " + e.what(), channel);
}

}  // namespace deltachannel
