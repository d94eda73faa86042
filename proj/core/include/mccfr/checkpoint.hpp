#pragma once

#include <string>

#include "mccfr/net.hpp"

namespace mccfr {

// Versioned binary network snapshot: fixed header describing the topology,
// then the flat parameter array as little-endian 64-bit floats.
void save_net(const std::string& path, const ResidualNet& net);

// Loads a snapshot, rejecting unknown formats. When `expected` is given, a
// topology mismatch is an error naming both topologies.
ResidualNet load_net(const std::string& path);
ResidualNet load_net(const std::string& path, const NetTopology& expected);

}  // namespace mccfr
