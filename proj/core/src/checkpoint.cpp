#include "mccfr/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mccfr/check.hpp"

namespace mccfr {

// Parameters are written as raw doubles; this build targets little-endian
// hosts so the on-disk format is little-endian by construction.
static_assert(std::endian::native == std::endian::little,
              "network snapshots assume a little-endian host");

namespace {

constexpr char kMagic[8] = {'M', 'C', 'C', 'F', 'R', 'N', 'E', 'T'};
constexpr std::uint32_t kVersion = 1;

struct Header {
  char magic[8];
  std::uint32_t version;
  std::uint32_t head;
  std::int32_t input, width, blocks, bottleneck, output;
  std::uint64_t count;
};

std::string describe(const NetTopology& t) {
  std::ostringstream os;
  os << "{input=" << t.input << " width=" << t.width << " blocks=" << t.blocks
     << " bottleneck=" << t.bottleneck << " output=" << t.output
     << " head=" << static_cast<int>(t.head) << "}";
  return os.str();
}

}  // namespace

void save_net(const std::string& path, const ResidualNet& net) {
  std::ofstream os(path, std::ios::binary);
  MCCFR_CHECK_MSG(os.good(), "cannot open " << path << " for writing");
  const NetTopology& t = net.topology();
  Header h{};
  std::memcpy(h.magic, kMagic, sizeof(kMagic));
  h.version = kVersion;
  h.head = static_cast<std::uint32_t>(t.head);
  h.input = t.input;
  h.width = t.width;
  h.blocks = t.blocks;
  h.bottleneck = t.bottleneck;
  h.output = t.output;
  h.count = static_cast<std::uint64_t>(net.params().size());
  os.write(reinterpret_cast<const char*>(&h), sizeof(h));
  os.write(reinterpret_cast<const char*>(net.params().data()),
           static_cast<std::streamsize>(net.params().size() * sizeof(double)));
  MCCFR_CHECK_MSG(os.good(), "write failed for " << path);
}

ResidualNet load_net(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  MCCFR_CHECK_MSG(is.good(), "cannot open " << path);
  Header h{};
  is.read(reinterpret_cast<char*>(&h), sizeof(h));
  MCCFR_CHECK_MSG(is.good() && std::memcmp(h.magic, kMagic, sizeof(kMagic)) == 0,
                  path << " is not a network snapshot");
  MCCFR_CHECK_MSG(h.version == kVersion,
                  path << " has unsupported snapshot version " << h.version);
  NetTopology topo;
  topo.input = h.input;
  topo.width = h.width;
  topo.blocks = h.blocks;
  topo.bottleneck = h.bottleneck;
  topo.output = h.output;
  topo.head = static_cast<HeadKind>(h.head);
  topo.validate();
  MCCFR_CHECK_MSG(h.count == static_cast<std::uint64_t>(topo.param_count()),
                  path << " parameter count disagrees with its topology");

  ResidualNet net(topo);
  is.read(reinterpret_cast<char*>(net.params().data()),
          static_cast<std::streamsize>(net.params().size() * sizeof(double)));
  MCCFR_CHECK_MSG(is.good(), "truncated snapshot " << path);
  return net;
}

ResidualNet load_net(const std::string& path, const NetTopology& expected) {
  ResidualNet net = load_net(path);
  MCCFR_CHECK_MSG(net.topology() == expected,
                  path << " topology " << describe(net.topology())
                       << " does not match requested " << describe(expected));
  return net;
}

}  // namespace mccfr
