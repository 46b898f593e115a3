#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ubo {

/// Raised when a Gram matrix cannot be factorized even after escalating
/// the diagonal jitter. Carries the jitter levels that were attempted.
class conditioning_error : public std::runtime_error {
public:
    conditioning_error(std::string what, std::vector<double> attempted_jitters)
        : std::runtime_error(std::move(what)),
          attempted_jitters_(std::move(attempted_jitters)) {}

    const std::vector<double>& attempted_jitters() const noexcept {
        return attempted_jitters_;
    }

private:
    std::vector<double> attempted_jitters_;
};

/// Raised when a black-box evaluation produced a non-finite value.
/// The message names the offending point.
class evaluation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ubo
