#pragma once

#include "prickle/rational.hpp"

#include <array>
#include <optional>
#include <vector>

namespace prickle {

// One constraint p*a + q*b + r < 0.
using StrictRow = std::array<Rat, 3>;

// Decides feasibility of a system of strict linear inequalities in two
// variables by Fourier-Motzkin elimination (exact; fine for the small systems
// arising from vertex fans). Returns a witness (a, b) when feasible.
std::optional<std::array<Rat, 2>> solve_strict_2var(
    const std::vector<StrictRow>& rows);

} // namespace prickle
