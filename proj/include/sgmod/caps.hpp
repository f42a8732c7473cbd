/**
 * @file sgmod/caps.hpp
 * @brief Enumeration budgets shared across the deciders.
 *
 * Every exhaustive search is bounded by one of these caps and reports
 * honestly (CapExceeded or an Unknown verdict) instead of silently
 * truncating.
 *
 * @copyright Apache License 2.0
 */
#pragma once

#include <cstdint>

namespace sgmod {

struct Caps {
    std::uint64_t ring_elements = std::uint64_t{1} << 20; ///< ring/module element sweeps
    std::uint64_t ext_classes = std::uint64_t{1} << 12;   ///< extension class enumeration
    std::uint64_t hom_enumeration = std::uint64_t{1} << 16; ///< Hom-set sweeps (isomorphism search)
    std::uint64_t depth = 8;                              ///< resolution window length
    std::uint64_t seed = 0;                               ///< randomized probing seed
};

} // namespace sgmod
