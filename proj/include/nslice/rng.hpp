#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace nslice {

// mt19937_64 with hand-rolled draw helpers so that generated instances are
// bit-identical for a given seed regardless of the standard library's
// distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Inclusive bounds.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(engine_() % span);
    }

    double uniform_real(double lo, double hi) {
        const double unit = (engine_() >> 11) * 0x1.0p-53;  // [0,1)
        return lo + unit * (hi - lo);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = engine_() % i;
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace nslice
