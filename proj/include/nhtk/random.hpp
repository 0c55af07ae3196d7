#pragma once

#include <cstdint>
#include <random>

#include "nhtk/linalg.hpp"

namespace nhtk {

struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed = 0) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }

    Vec3 unit_vector() {
        Vec3 v{normal(), normal(), normal()};
        return normalized(v);
    }
    Vec3 vector(double scale = 1.0) {
        return {scale * normal(), scale * normal(), scale * normal()};
    }
    // random tangent vector at gamma on the unit sphere
    Vec3 tangent_at(const Vec3& gamma, double scale = 1.0) {
        Vec3 v = vector(scale);
        return v - dot(v, gamma) * gamma;
    }
};

}  // namespace nhtk
