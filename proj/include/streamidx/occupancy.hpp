#pragma once

#include <cstdint>
#include <vector>

#include "streamidx/types.hpp"

namespace streamidx {

enum class SlotStatus : std::uint8_t { Underfilled, Growing, Stable };

// Piecewise classification of an Active slot by its EMA count:
//   N <  eps1         -> Underfilled
//   eps1 <= N < eps2  -> Growing
//   N >= eps2         -> Stable
// Both boundaries are inclusive on the upper category.
SlotStatus classify(const ClusterSlot& slot, const IndexConfig& cfg);

// Runs once per step, after the EMA updates and before fill-then-append so
// that slots freed here are reusable in the same step.
//
// Underfilled slots are reset to Empty. Growing slots are stamped with the
// step they first entered the growing band and reset once they linger for
// cfg.growth_window steps without reaching Stable; a Stable visit clears the
// stamp. Resetting a slot also drops its items from the assignment index
// (pass nullptr when no index is maintained).
//
// Returns the reset slot indices, ascending.
std::vector<std::uint32_t> sweep(FineCodebook& fine, const IndexConfig& cfg,
                                 AssignmentIndex* index);

}  // namespace streamidx
