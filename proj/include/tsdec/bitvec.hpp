#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <vector>

namespace tsdec {

using BitVec = boost::dynamic_bitset<std::uint64_t>;

inline std::vector<std::uint32_t> set_bits(const BitVec& b) {
  std::vector<std::uint32_t> out;
  out.reserve(b.count());
  for (auto i = b.find_first(); i != BitVec::npos; i = b.find_next(i)) {
    out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

}  // namespace tsdec
