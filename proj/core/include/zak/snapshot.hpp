#pragma once

#include <optional>
#include <string>

#include "zak/field.hpp"

namespace zak {

class SnapshotError : public std::runtime_error {
 public:
  explicit SnapshotError(const std::string& what) : std::runtime_error(what) {}
};

/// Binary field snapshot, bit-exact on round trip.
///
/// Layout (little-endian, packed):
///   magic   "ZKFLD1"  6 bytes
///   version u16       currently 1
///   kind    u8        0 = real scalar, 1 = complex 3-vector
///   n       u32       points per dimension
///   length  f64       domain period
///   time    f64
///   alpha   f64       -1 encodes the limit system
/// Payload: f64 array in physical representation, x-fastest ordering; complex
/// values interleaved (re, im); vector components stored consecutively.
struct Snapshot {
  static constexpr std::uint16_t kVersion = 1;

  double time = 0.0;
  double alpha = -1.0;  // -1 = limit system
  std::optional<ScalarField> scalar;
  std::optional<VectorField> vector;
};

void write_snapshot(const std::string& path, const ScalarField& f, double time, double alpha);
void write_snapshot(const std::string& path, const VectorField& f, double time, double alpha);

/// Reads and validates a snapshot; malformed or truncated files raise
/// SnapshotError.
Snapshot read_snapshot(const std::string& path);

/// Encoding of the limit-system selector in files.
double alpha_file_encoding(double alpha);

}  // namespace zak
