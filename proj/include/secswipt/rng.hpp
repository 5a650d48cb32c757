#ifndef SECSWIPT_RNG_HPP
#define SECSWIPT_RNG_HPP

#include <cstdint>
#include <string_view>

namespace secswipt {

// Counter-based random stream: every draw is a stateless mix of (key, counter),
// so streams can be split hierarchically without any shared mutable state and
// a given (seed, path) always reproduces the same sequence bit-for-bit.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    // Child stream derived from this stream's key and an integer label.
    RngStream split(std::uint64_t label) const;
    // Same, with a string label (hashed). Useful for named channel groups.
    RngStream split(std::string_view label) const;

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53-bit resolution.
    double next_double();
    // Uniform on (0, 1], safe as a log() argument.
    double next_double_open();

    // Standard normal via Box-Muller; caches the second value of each pair.
    double next_gaussian();

private:
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace secswipt

#endif
