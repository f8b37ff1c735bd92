#pragma once

#include <cstdint>
#include <random>

namespace orba {

/// Seeded sampling helper; every randomized routine takes one of these so
/// results are reproducible per seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : gen_(seed) {}

    double normal() { return normal_(gen_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(gen_);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace orba
