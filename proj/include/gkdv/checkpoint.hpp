#pragma once

// Binary snapshot of a real field, all values little-endian:
//
//   offset  size  content
//   0       5     magic "GKDV1"
//   5       2     version (u16) = 1
//   7       8     N (u64)
//   15      8     L (f64)
//   23      8     t (f64)
//   31      8N    samples u(x_j), j = 0 .. N-1 (f64)

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "gkdv/spectral_core.hpp"

namespace gkdv {

inline constexpr char kCheckpointMagic[5] = {'G', 'K', 'D', 'V', '1'};
inline constexpr std::uint16_t kCheckpointVersion = 1;
inline constexpr std::size_t kCheckpointHeaderSize = 31;

class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Checkpoint {
  RealField field;
  double time = 0.0;
};

void write_checkpoint(std::ostream& out, const RealField& field, double time);
void write_checkpoint(const std::filesystem::path& path, const RealField& field, double time);

Checkpoint read_checkpoint(std::istream& in);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace gkdv
