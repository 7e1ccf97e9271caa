#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ocrtune {

// Base of every error the library throws. The CLI maps the subclasses onto
// exit codes: validation problems are 1, runtime/engine failures are 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

// A parity (must-be-odd) parameter received an even value.
class ConstraintViolation : public InvalidParameter {
public:
    using InvalidParameter::InvalidParameter;
};

class MalformedInput : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class UndefinedMetric : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class EngineFailure : public Error {
public:
    EngineFailure(const std::string& what, std::string diagnostics)
        : Error(what), diagnostics_(std::move(diagnostics)) {}
    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

// Aggregates every problem found while loading a manifest.
class ManifestError : public Error {
public:
    explicit ManifestError(std::vector<std::string> items)
        : Error(join(items)), items_(std::move(items)) {}
    const std::vector<std::string>& items() const noexcept { return items_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out = "manifest has " + std::to_string(items.size()) + " error(s)";
        for (const auto& item : items) out += "\n  " + item;
        return out;
    }
    std::vector<std::string> items_;
};

}  // namespace ocrtune
