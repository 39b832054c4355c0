#pragma once

#include <stdexcept>
#include <string>

namespace hullcert {

/// Malformed input: bad indices, bad chains, bad flags, bad rational strings.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two values from different space models were combined.
class model_mismatch_error : public validation_error {
public:
    using validation_error::validation_error;
};

/// A certificate exists but does not separate the queried point (h(x) >= b).
class certificate_inapplicable_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Certificate search exhausted without success. Not a membership proof.
class no_certificate_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact self-check failed. This is a bug, never a data error.
class internal_soundness_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace hullcert
