#pragma once

#include <stdexcept>

namespace eulerps {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace eulerps
