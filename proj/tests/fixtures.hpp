// Shared test fixtures.
#pragma once

#include "orba/space.hpp"

#include <string>

namespace orba::test {

/// Lower-triangular all-ones transform; the cone consists of vectors whose
/// partial sums are nonnegative.
inline Mat partial_sum_matrix(int n) {
    Mat t(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) t.at(i, j) = 1.0;
    return t;
}

inline SpacePtr partial_sum_space(int n) {
    return OrderedSpace::make("psum" + std::to_string(n),
                              ConeSpec::transformed_orthant(partial_sum_matrix(n)),
                              NormSpec::weighted_l1(Vec(n, 1.0)));
}

inline Vec alternating(int n) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = i % 2 == 0 ? 1.0 : -1.0;
    return x;
}

inline SpacePtr l1_lattice(int n, const std::string& id = "") {
    return OrderedSpace::make(id.empty() ? "l1x" + std::to_string(n) : id,
                              ConeSpec::orthant(n), NormSpec::weighted_l1(Vec(n, 1.0)));
}

inline SpacePtr sup_lattice(int n, const std::string& id = "") {
    return OrderedSpace::make(id.empty() ? "supx" + std::to_string(n) : id,
                              ConeSpec::orthant(n), NormSpec::sup());
}

inline Vec unit_coord(int n, int i) {
    Vec e(n, 0.0);
    e[i] = 1.0;
    return e;
}

} // namespace orba::test
