#include "tsdec/codec.hpp"

#include <fstream>

#include "tsdec/errors.hpp"

namespace tsdec {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

struct ByteReader {
  const std::vector<std::uint8_t>& buf;
  std::size_t pos = 0;

  std::uint8_t u8() {
    need(1);
    return buf[pos++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>(buf[pos] | (buf[pos + 1] << 8));
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  void need(std::size_t n) const {
    if (pos + n > buf.size()) {
      throw CodecError(CodecErrorKind::Truncated, "message truncated");
    }
  }
};

}  // namespace

CompressedSyndrome compress(const CodeLattice& lat, const SyndromeHistory& s) {
  CompressedSyndrome msg;
  msg.d = static_cast<std::uint16_t>(lat.d());
  msg.rounds = static_cast<std::uint16_t>(lat.n_rounds());
  msg.addresses = set_bits(s.bits);  // ascending by construction
  if (msg.addresses.size() % 2 != 0) {
    throw InvariantViolation("syndrome has odd defect count");
  }
  return msg;
}

SyndromeHistory decompress(const CompressedSyndrome& msg, const CodeLattice& lat) {
  if (msg.d != lat.d() || msg.rounds != lat.n_rounds()) {
    throw CodecError(CodecErrorKind::HeaderMismatch,
                     "message header (d=" + std::to_string(msg.d) + ", rounds=" +
                         std::to_string(msg.rounds) + ") does not match lattice (d=" +
                         std::to_string(lat.d()) + ")");
  }
  if (msg.addresses.size() % 2 != 0) {
    throw CodecError(CodecErrorKind::OddCount, "defect count must be even");
  }
  SyndromeHistory s{BitVec(lat.n_vertices())};
  std::uint32_t prev = 0;
  bool first = true;
  for (std::uint32_t a : msg.addresses) {
    if (a >= lat.n_vertices()) {
      throw CodecError(CodecErrorKind::AddressOutOfRange,
                       "address " + std::to_string(a) + " >= V = " + std::to_string(lat.n_vertices()));
    }
    if (!first && a <= prev) {
      throw CodecError(CodecErrorKind::AddressNotAscending, "addresses must be strictly ascending");
    }
    s.bits.set(a);
    prev = a;
    first = false;
  }
  return s;
}

std::vector<std::uint8_t> to_bytes(const CompressedSyndrome& msg) {
  std::vector<std::uint8_t> out;
  out.reserve(9 + 4 * msg.addresses.size());
  out.push_back(kSynzVersion);
  put_u16(out, msg.d);
  put_u16(out, msg.rounds);
  put_u32(out, msg.count());
  for (std::uint32_t a : msg.addresses) put_u32(out, a);
  return out;
}

CompressedSyndrome from_bytes(const std::vector<std::uint8_t>& bytes) {
  ByteReader rd{bytes};
  std::uint8_t version = rd.u8();
  if (version != kSynzVersion) {
    throw CodecError(CodecErrorKind::BadVersion, "unsupported format version " + std::to_string(version));
  }
  CompressedSyndrome msg;
  msg.d = rd.u16();
  msg.rounds = rd.u16();
  std::uint32_t count = rd.u32();
  if (count % 2 != 0) {
    throw CodecError(CodecErrorKind::OddCount, "defect count must be even");
  }
  rd.need(static_cast<std::size_t>(count) * 4);
  msg.addresses.reserve(count);
  std::uint32_t prev = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    std::uint32_t a = rd.u32();
    if (i > 0 && a <= prev) {
      throw CodecError(CodecErrorKind::AddressNotAscending, "addresses must be strictly ascending");
    }
    msg.addresses.push_back(a);
    prev = a;
  }
  if (rd.pos != bytes.size()) {
    throw CodecError(CodecErrorKind::TrailingBytes, "unexpected trailing bytes");
  }
  return msg;
}

void write_synz(const std::string& path, const CompressedSyndrome& msg) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  auto bytes = to_bytes(msg);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

CompressedSyndrome read_synz(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return from_bytes(bytes);
}

int bits_per_address(const CodeLattice& lat) {
  int bits = 0;
  std::uint64_t cap = 1;
  while (cap < lat.n_vertices()) {
    cap <<= 1;
    ++bits;
  }
  return bits;
}

BandwidthReport bandwidth_report(const CompressedSyndrome& msg, const CodeLattice& lat) {
  BandwidthReport r;
  const double V = static_cast<double>(lat.n_vertices());
  const double rounds = static_cast<double>(lat.n_rounds());
  r.count = msg.count();
  r.ideal_bits = static_cast<std::uint64_t>(r.count) * static_cast<std::uint64_t>(bits_per_address(lat));
  r.model16_bits = static_cast<std::uint64_t>(r.count) * 16;
  r.uncompressed_bits = lat.n_vertices();
  r.ideal_bits_per_round = static_cast<double>(r.ideal_bits) / rounds;
  r.model16_bits_per_round = static_cast<double>(r.model16_bits) / rounds;
  r.uncompressed_bits_per_round = V / rounds;
  r.defect_density_per_vertex = static_cast<double>(r.count) / V;
  r.addr16_density = static_cast<double>(r.model16_bits) / (16.0 * V);
  return r;
}

}  // namespace tsdec
