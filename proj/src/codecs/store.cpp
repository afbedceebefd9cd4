#include "codecs/stream_io.hpp"
#include "tdt/codec.hpp"

namespace tdt::store {

Bytes compress(ByteSpan input) {
  Bytes out;
  out.reserve(input.size() + 1);
  out.push_back(static_cast<std::uint8_t>(codec_id::store));
  out.insert(out.end(), input.begin(), input.end());
  return out;
}

Bytes decompress(ByteSpan input, std::size_t size_limit) {
  if (input.empty() || input[0] != codec_id::store) detail::corrupt("store", 0, "missing store tag");
  if (input.size() - 1 > size_limit) detail::corrupt("store", 1, "payload larger than expected");
  return Bytes(input.begin() + 1, input.end());
}

}  // namespace tdt::store
