#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "streamidx/types.hpp"

namespace streamidx {

// mt19937_64 with hand-rolled transforms. The standard pins the engine but
// not the distributions, so uniform/gaussian are derived here directly to
// keep generated streams byte-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) { return eng_() % n; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Box-Muller; u1 shifted away from zero so log stays finite.
        const double u1 = (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    Vec gaussian_vec(std::size_t dim) {
        Vec v(dim);
        for (auto& x : v) x = gaussian();
        return v;
    }

    Vec unit_vector(std::size_t dim) {
        Vec v = gaussian_vec(dim);
        double n2 = 0.0;
        for (double x : v) n2 += x * x;
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& x : v) x *= inv;
        return v;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace streamidx
