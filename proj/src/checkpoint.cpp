#include "gkdv/checkpoint.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include <fmt/format.h>

namespace gkdv {

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
  const auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  std::array<unsigned char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = std::endian::native == std::endian::little ? bits[i] : bits[sizeof(T) - 1 - i];
  }
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
}

template <typename T>
T get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> bytes{};
  if (!in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T))) {
    throw CheckpointError(fmt::format("checkpoint truncated while reading {}", what));
  }
  std::array<unsigned char, sizeof(T)> bits{};
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bits[i] = std::endian::native == std::endian::little ? bytes[i] : bytes[sizeof(T) - 1 - i];
  }
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_checkpoint(std::ostream& out, const RealField& field, double time) {
  out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
  put_le<std::uint16_t>(out, kCheckpointVersion);
  put_le<std::uint64_t>(out, field.grid().size());
  put_le<double>(out, field.grid().length());
  put_le<double>(out, time);
  for (double v : field.samples()) put_le<double>(out, v);
  if (!out) throw CheckpointError("failed to write checkpoint");
}

void write_checkpoint(const std::filesystem::path& path, const RealField& field, double time) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CheckpointError(fmt::format("cannot open {} for writing", path.string()));
  write_checkpoint(out, field, time);
}

Checkpoint read_checkpoint(std::istream& in) {
  char magic[sizeof(kCheckpointMagic)] = {};
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
    throw CheckpointError("not a checkpoint: bad magic");
  }
  const auto version = get_le<std::uint16_t>(in, "version");
  if (version != kCheckpointVersion) {
    throw CheckpointError(fmt::format("unsupported checkpoint version {} (expected {})", version, kCheckpointVersion));
  }
  const auto modes = get_le<std::uint64_t>(in, "N");
  const auto length = get_le<double>(in, "L");
  const auto time = get_le<double>(in, "t");
  if (modes > (std::uint64_t{1} << 32)) throw CheckpointError(fmt::format("implausible N = {}", modes));
  Grid grid(static_cast<std::size_t>(modes), length);
  std::vector<double> samples(grid.size());
  for (auto& v : samples) v = get_le<double>(in, "payload");
  if (in.peek() != std::char_traits<char>::eof()) throw CheckpointError("trailing bytes after checkpoint payload");
  return {RealField(grid, std::move(samples)), time};
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(fmt::format("cannot open checkpoint {}", path.string()));
  return read_checkpoint(in);
}

}  // namespace gkdv
