#pragma once

#include <string>

#include "srp/net.hpp"

namespace srp {

// Binary checkpoint: "SRPC" magic, uint32 header length, JSON architecture
// header, then the flat parameter vector as little-endian doubles.
void save_checkpoint(const ModelParams& params, const std::string& path);

ModelParams load_checkpoint(const std::string& path);

// Throws CheckpointError when the stored architecture differs.
ModelParams load_checkpoint(const std::string& path, const ArchConfig& expected);

}  // namespace srp
