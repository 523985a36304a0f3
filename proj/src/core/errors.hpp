#pragma once

#include <stdexcept>
#include <string>

namespace socio {

// Error taxonomy used across the library. The C API maps each of these to a
// status code; the CLI maps them to exit codes.

// Unreadable/unwritable streams and files.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally invalid input data (bad CSV header, malformed documents).
class format_error : public std::runtime_error {
public:
    explicit format_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid or missing configuration (lexicon files, risk categories, thresholds).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A metric that is mathematically undefined for the given input
// (density of a one-vertex graph, geodesics of an edgeless graph).
class undefined_metric_error : public std::runtime_error {
public:
    explicit undefined_metric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller violated an operation's contract (unknown vertex, bad partition,
// nonpositive sample in a log-space fit).
class contract_error : public std::invalid_argument {
public:
    explicit contract_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Regression input admits no unique solution (degenerate abscissa).
class singular_fit_error : public std::runtime_error {
public:
    explicit singular_fit_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace socio
