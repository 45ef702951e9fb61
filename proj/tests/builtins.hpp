// Shared list of built-in schemes used across the test suites.
#pragma once

#include <vector>

#include "bmkit/scheme.hpp"

namespace bmkit_tests {

inline std::vector<bmkit::BuiltScheme> builtin_optimal_schemes() {
    using namespace bmkit;
    std::vector<BuiltScheme> out;
    out.push_back(build_optimal_qpc(1, 1));
    out.push_back(build_optimal_qpc(2, 2));
    out.push_back(build_optimal_qpc(3, 2));
    out.push_back(build_optimal_qpc(2, 3));
    out.push_back(build_optimal_qpc(3, 3));
    out.push_back(build_optimal_qpc(4, 4));
    out.push_back(build_optimal_five_qubit());
    out.push_back(build_optimal_steane());
    out.push_back(build_optimal_standard_surface(2, 2));
    out.push_back(build_optimal_standard_surface(2, 3));
    out.push_back(build_optimal_standard_surface(3, 2));
    out.push_back(build_optimal_standard_surface(3, 3));
    out.push_back(build_optimal_rotated_surface(2, 2));
    out.push_back(build_optimal_rotated_surface(2, 3));
    out.push_back(build_optimal_rotated_surface(3, 3));
    out.push_back(build_optimal_rotated_surface(3, 4));
    out.push_back(build_optimal_rotated_surface(2, 5));
    out.push_back(build_optimal_rotated_surface(3, 5));
    out.push_back(build_optimal_rotated_surface(4, 4));
    out.push_back(build_optimal_rotated_surface(4, 5));
    out.push_back(build_optimal_rotated_surface(4, 6));
    out.push_back(build_optimal_rotated_surface(5, 5));
    out.push_back(build_optimal_rotated_surface(5, 6));
    out.push_back(build_optimal_tree({2, 2}));
    out.push_back(build_optimal_tree({2, 2, 2}));
    out.push_back(build_optimal_tree({3, 2}));
    out.push_back(build_optimal_tree({4}));
    return out;
}

inline std::vector<bmkit::StaticScheme> builtin_static_schemes() {
    using namespace bmkit;
    std::vector<StaticScheme> out;
    out.push_back(build_static_simple_rotated(2, 2));
    out.push_back(build_static_simple_rotated(3, 3));
    out.push_back(build_static_optimized_rotated(3, 3));
    out.push_back(build_static_optimized_rotated(5, 5));
    out.push_back(build_static_tree({2, 2}));
    out.push_back(build_static_tree({3, 2}));
    out.push_back(build_static_standard_string(2, 2));
    out.push_back(build_static_standard_string(3, 3));
    out.push_back(build_static_standard_string(3, 2));
    out.push_back(build_static_standard_string(2, 3));
    return out;
}

}  // namespace bmkit_tests
