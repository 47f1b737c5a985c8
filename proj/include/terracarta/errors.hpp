#pragma once

#include <stdexcept>
#include <string>

namespace terracarta {

/// Error identities surfaced by the library. The CLI maps these to exit
/// code 1; anything else escaping a command is an internal fault (exit 2).
enum class Errc {
  MalformedHeader,
  CellCountMismatch,
  NonNumericCell,
  OutOfExtent,
  LatitudeOutOfRange,
  GridTooSmall,
  UnsortedBreaks,
  AllNoData,
  EmptyContourSet,
  NoUsablePoints,
  DimensionMismatch,
  NotSinkFilled,
  CycleDetected,
  NoWaterCells,
  EmptyLayerSet,
  BadInput,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace terracarta
