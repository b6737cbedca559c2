#pragma once

#include <filesystem>
#include <string>

#include "lax2d/field.hpp"

namespace lax2d {

/// LAXF snapshot: little-endian, magic "LAXF", u32 version (=1), u32 n,
/// f64 time, then n*n f64 of the physical-space vorticity in row-major
/// order with the x index outermost. Round-trips are bit-exact.
struct Snapshot {
  double time = 0.0;
  RealField vorticity;

  Snapshot(double t, RealField w) : time(t), vorticity(std::move(w)) {}
};

/// Writes atomically (temp file in the same directory, then rename).
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Atomic small-file writer shared by the report/CSV emitters.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace lax2d
