#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace jrsim {

/// Base of every error thrown by the library. `kind()` is a short stable tag
/// used in the CLI's machine-readable error line.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config", what) {}
    ConfigError(const std::string& key, const std::string& what)
        : Error("config", key + ": " + what), key_(key) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

class CatalogError : public Error {
public:
    explicit CatalogError(const std::string& what) : Error("catalog", what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

// Non-fatal diagnostics (resolution, normalizability, wraparound) are appended
// here when the caller passes a sink.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
    if (sink) sink->push_back(std::move(message));
}

}  // namespace jrsim
