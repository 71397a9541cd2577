#pragma once

#include <stdexcept>

namespace aeta {

/// Bad configuration file, key, or value. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A desk-scale resource guard was hit without the override flag. CLI exit code 3.
struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical routine left its validity envelope (non-PSD Gram, ...). CLI exit code 4.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace aeta
