#pragma once

#include <json.hpp>

#include "srp/net.hpp"

namespace srp {

inline nlohmann::ordered_json arch_to_json(const ArchConfig& arch) {
    nlohmann::ordered_json conv = nlohmann::ordered_json::array();
    for (const ConvSpec& spec : arch.conv) {
        conv.push_back({{"out_channels", spec.out_channels},
                        {"kernel", spec.kernel},
                        {"stride", spec.stride},
                        {"pad", spec.pad}});
    }
    return nlohmann::ordered_json{{"grid_size", arch.grid_size},
                                  {"k_max", arch.k_max},
                                  {"conv", std::move(conv)},
                                  {"fc_width", arch.fc_width},
                                  {"activation", arch.activation}};
}

inline ArchConfig arch_from_json(const nlohmann::ordered_json& j) {
    ArchConfig arch;
    arch.grid_size = j.at("grid_size").get<int>();
    arch.k_max = j.at("k_max").get<int>();
    arch.fc_width = j.at("fc_width").get<int>();
    arch.activation = j.at("activation").get<std::string>();
    arch.conv.clear();
    for (const nlohmann::ordered_json& c : j.at("conv")) {
        arch.conv.push_back({c.at("out_channels").get<int>(), c.at("kernel").get<int>(),
                             c.at("stride").get<int>(), c.at("pad").get<int>()});
    }
    return arch;
}

}  // namespace srp
