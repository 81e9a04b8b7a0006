#include "srp/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "srp/errors.hpp"

namespace srp {

Move inverse_move(Move m) {
    switch (m) {
        case Move::kUp: return Move::kDown;
        case Move::kDown: return Move::kUp;
        case Move::kLeft: return Move::kRight;
        case Move::kRight: return Move::kLeft;
        case Move::kRotCw: return Move::kRotCcw;
        case Move::kRotCcw: return Move::kRotCw;
    }
    throw InvalidActionError("inverse_move: bad move code");
}

const char* move_name(Move m) {
    switch (m) {
        case Move::kUp: return "up";
        case Move::kDown: return "down";
        case Move::kLeft: return "left";
        case Move::kRight: return "right";
        case Move::kRotCw: return "rot_cw";
        case Move::kRotCcw: return "rot_ccw";
    }
    return "?";
}

int bin_distance(int a, int b) {
    int d = std::abs(a - b);
    return std::min(d, kOrientationBins - d);
}

int pose_distance(const Pose& p, const Pose& t) {
    return std::abs(p.row - t.row) + std::abs(p.col - t.col) + bin_distance(p.bin, t.bin);
}

Action Action::from_flat(int flat_index) {
    if (flat_index < 0) throw InvalidActionError("negative flat action index");
    return {flat_index / kMovesPerObject, static_cast<Move>(flat_index % kMovesPerObject)};
}

std::string action_to_string(const Action& a) {
    return "obj" + std::to_string(a.object_index) + ":" + move_name(a.move);
}

}  // namespace srp
