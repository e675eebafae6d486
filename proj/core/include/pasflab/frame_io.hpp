#pragma once

#include <string>

#include "pasflab/frames.hpp"

namespace pasflab {

/// Raised on malformed frame files: JSON syntax errors, schema violations,
/// size mismatches, or non-finite entries.
class FrameIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Frame file schema (stable key order):
///
///   { "p": number, "dim": int, "N": int, "field": "real" | "complex",
///     "omega": [[entry, ...], ...], "tau": [[entry, ...], ...] }
///
/// where an entry is a plain number for real frames and a [re, im] pair for
/// complex ones.  Doubles are emitted as shortest round-trip decimals, so
/// save/load is lossless for finite values.
std::string frame_to_text(const Pasf& f);
Pasf frame_from_text(const std::string& text);

void save_frame(const Pasf& f, const std::string& path);
Pasf load_frame(const std::string& path);

}  // namespace pasflab
