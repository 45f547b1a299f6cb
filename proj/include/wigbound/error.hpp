#pragma once

#include <stdexcept>
#include <string>

namespace wigbound {

// Raised for every contract violation in the library (bad input, uncovered
// support, malformed files). The CLI maps it to exit code 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wigbound
