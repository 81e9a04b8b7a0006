#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace srp {

inline constexpr int kOrientationBins = 24;
inline constexpr int kMovesPerObject = 6;
inline constexpr double kDegreesPerBin = 15.0;
inline constexpr int kNoStepLimit = -1;

enum class Move : int {
    kUp = 0,
    kDown = 1,
    kLeft = 2,
    kRight = 3,
    kRotCw = 4,
    kRotCcw = 5,
};

Move inverse_move(Move m);
const char* move_name(Move m);

struct Pose {
    int row = 0;
    int col = 0;
    int bin = 0;

    auto operator<=>(const Pose&) const = default;
};

// Circular distance between orientation bins: min(|a-b|, 24-|a-b|).
int bin_distance(int a, int b);

// Manhattan grid distance plus circular orientation distance.
int pose_distance(const Pose& p, const Pose& t);

struct Action {
    int object_index = 0;
    Move move = Move::kUp;

    int flat() const { return object_index * kMovesPerObject + static_cast<int>(move); }
    static Action from_flat(int flat_index);
    Action inverse() const { return {object_index, inverse_move(move)}; }

    auto operator<=>(const Action&) const = default;
};

struct LayoutState {
    std::vector<Pose> poses;
    int step_count = 0;

    bool operator==(const LayoutState& o) const { return poses == o.poses; }
};

struct StepOutcome {
    LayoutState next;
    double reward = 0.0;
    bool done = false;
    bool success = false;
};

// Feasibility mask over flat action indices, length 6*K.
using ActionMask = std::vector<std::uint8_t>;

std::string action_to_string(const Action& a);

}  // namespace srp
