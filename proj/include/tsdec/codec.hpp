#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsdec/lattice.hpp"
#include "tsdec/noise.hpp"

namespace tsdec {

// Compressed syndrome wire message (.synz). Byte layout, little-endian:
//   u8  format version (currently 1)
//   u16 code distance d
//   u16 measurement rounds
//   u32 defect count (even)
//   u32 x count      defect addresses, strictly ascending
inline constexpr std::uint8_t kSynzVersion = 1;

struct CompressedSyndrome {
  std::uint16_t d = 0;
  std::uint16_t rounds = 0;
  std::vector<std::uint32_t> addresses;  // strictly ascending, even count

  std::uint32_t count() const { return static_cast<std::uint32_t>(addresses.size()); }
};

struct BandwidthReport {
  std::uint32_t count = 0;          // defects in the message
  std::uint64_t ideal_bits = 0;     // count * ceil(log2 V)
  std::uint64_t model16_bits = 0;   // count * 16
  std::uint64_t uncompressed_bits = 0;  // V (one bit per measurement outcome)
  double ideal_bits_per_round = 0.0;
  double model16_bits_per_round = 0.0;
  double uncompressed_bits_per_round = 0.0;
  double defect_density_per_vertex = 0.0;  // count / V
  // Bandwidth per vertex in 16-bit-address units; the uncompressed baseline
  // in the same units is the constant 1/16.
  double addr16_density = 0.0;
  static constexpr double kUncompressedBaselineDensity = 1.0 / 16.0;
};

CompressedSyndrome compress(const CodeLattice& lat, const SyndromeHistory& s);
SyndromeHistory decompress(const CompressedSyndrome& msg, const CodeLattice& lat);

std::vector<std::uint8_t> to_bytes(const CompressedSyndrome& msg);
CompressedSyndrome from_bytes(const std::vector<std::uint8_t>& bytes);

void write_synz(const std::string& path, const CompressedSyndrome& msg);
CompressedSyndrome read_synz(const std::string& path);

BandwidthReport bandwidth_report(const CompressedSyndrome& msg, const CodeLattice& lat);

int bits_per_address(const CodeLattice& lat);  // ceil(log2 V)

}  // namespace tsdec
