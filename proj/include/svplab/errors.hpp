#ifndef SVPLAB_ERRORS_HPP
#define SVPLAB_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace svplab {

// Instance generation exhausted its rejection budget; carries the seed so
// the failing draw can be reproduced.
class GenerationError : public std::runtime_error {
public:
    GenerationError(const std::string& what, std::uint64_t seed)
        : std::runtime_error(what + " (seed=" + std::to_string(seed) + ")"),
          seed_(seed) {}
    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

// Requested enumeration or statevector exceeds the configured size guard.
class SizeLimitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All fit points share the same abscissa; the closed-form slope is undefined.
class DegenerateDesignError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class TrainingError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace svplab

#endif
