#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tdt {

enum class ErrorCode {
  // usage / contract errors
  InvalidArgument,
  InvalidWidth,
  LengthNotMultipleOfWidth,
  PositionOutOfRange,
  InvalidPlan,
  WidthMismatch,
  EmptyInput,
  TooFewGroups,
  KOutOfRange,
  KTooLargeForData,
  DuplicateId,
  MissingProfile,
  // data errors
  UnknownCodec,
  CodecUnavailable,
  CorruptStream,
  InconsistentLengths,
  BadMagic,
  UnsupportedVersion,
  // environment
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure in the library surfaces as this exception type; `code()`
/// lets callers (the CLI in particular) map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Corruption detected while decoding one (block, cluster) stream of a container.
class CorruptStreamError : public Error {
 public:
  CorruptStreamError(std::uint64_t block, std::uint32_t cluster, const std::string& detail)
      : Error(ErrorCode::CorruptStream, "block " + std::to_string(block) + ", cluster " +
                                            std::to_string(cluster) + ": " + detail),
        block_(block),
        cluster_(cluster) {}

  std::uint64_t block() const noexcept { return block_; }
  std::uint32_t cluster() const noexcept { return cluster_; }

 private:
  std::uint64_t block_;
  std::uint32_t cluster_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tdt
