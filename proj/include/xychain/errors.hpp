#pragma once

#include <stdexcept>

namespace xychain {

// Eigensolver non-convergence or an otherwise unusable numerical result.
// Domain/contract violations use std::invalid_argument instead.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}
