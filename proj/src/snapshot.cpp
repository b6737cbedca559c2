#include "lax2d/snapshot.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <type_traits>

namespace lax2d {

namespace {

constexpr char kMagic[4] = {'L', 'A', 'X', 'F'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(std::begin(bytes), std::end(bytes));
  out.append(bytes, sizeof(T));
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) throw Error(std::string("snapshot truncated while reading ") + what);
  if constexpr (std::endian::native == std::endian::big)
    std::reverse(std::begin(bytes), std::end(bytes));
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap) {
  const int n = snap.vorticity.grid.n;
  std::string buf;
  buf.reserve(16 + sizeof(double) * snap.vorticity.values.size());
  buf.append(kMagic, 4);
  put_le<std::uint32_t>(buf, kVersion);
  put_le<std::uint32_t>(buf, static_cast<std::uint32_t>(n));
  put_le<double>(buf, snap.time);
  for (double v : snap.vorticity.values) put_le<double>(buf, v);
  atomic_write_text(path, buf);
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open snapshot " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw Error(path.string() + " is not a LAXF snapshot");
  const auto version = get_le<std::uint32_t>(in, "version");
  if (version != kVersion)
    throw Error("unsupported LAXF version " + std::to_string(version));
  const auto n = get_le<std::uint32_t>(in, "grid size");
  const Grid grid = Grid::make(static_cast<int>(n));
  const double time = get_le<double>(in, "time");
  RealField w(grid);
  for (double& v : w.values) v = get_le<double>(in, "vorticity data");
  return Snapshot(time, std::move(w));
}

}  // namespace lax2d
