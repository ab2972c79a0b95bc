#pragma once

#include <stdexcept>
#include <string>

namespace colme {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct undefined_estimate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct insufficient_samples : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct insufficient_data : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct infeasible_graph : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct retry_exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct no_such_edge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct dimension_mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace colme
