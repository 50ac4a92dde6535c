#include "zak/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "zak/spectral.hpp"

namespace zak {

namespace {

constexpr char kMagic[6] = {'Z', 'K', 'F', 'L', 'D', '1'};

template <class T>
void put_le(std::string& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
  }
  out.append(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) {
    throw SnapshotError("snapshot truncated while reading header");
  }
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
    }
  }
  pos += sizeof(T);
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

std::string header_bytes(std::uint8_t kind, std::uint32_t n, double length, double time,
                         double alpha) {
  std::string out;
  out.append(kMagic, sizeof(kMagic));
  put_le<std::uint16_t>(out, Snapshot::kVersion);
  put_le<std::uint8_t>(out, kind);
  put_le<std::uint32_t>(out, n);
  put_le<double>(out, length);
  put_le<double>(out, time);
  put_le<double>(out, alpha);
  return out;
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot open snapshot for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SnapshotError("write failed: " + path);
}

}  // namespace

double alpha_file_encoding(double alpha) { return std::isinf(alpha) ? -1.0 : alpha; }

void write_snapshot(const std::string& path, const ScalarField& f, double time, double alpha) {
  ScalarField phys = to_physical(f);
  const Grid& g = *phys.grid();
  std::string bytes = header_bytes(0, static_cast<std::uint32_t>(g.n()), g.length(), time,
                                   alpha_file_encoding(alpha));
  bytes.reserve(bytes.size() + 8 * g.size());
  for (double v : phys.samples()) put_le<double>(bytes, v);
  write_file(path, bytes);
}

void write_snapshot(const std::string& path, const VectorField& f, double time, double alpha) {
  VectorField phys = to_physical(f);
  const Grid& g = *phys.grid();
  std::string bytes = header_bytes(1, static_cast<std::uint32_t>(g.n()), g.length(), time,
                                   alpha_file_encoding(alpha));
  bytes.reserve(bytes.size() + 48 * g.size());
  for (std::size_t c = 0; c < 3; ++c) {
    for (const cplx& v : phys.component(c)) {
      put_le<double>(bytes, v.real());
      put_le<double>(bytes, v.imag());
    }
  }
  write_file(path, bytes);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open snapshot: " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  std::size_t pos = 0;
  if (bytes.size() < sizeof(kMagic) ||
      std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw SnapshotError("bad snapshot magic: " + path);
  }
  pos += sizeof(kMagic);

  const auto version = get_le<std::uint16_t>(bytes, pos);
  if (version != Snapshot::kVersion) {
    throw SnapshotError("unsupported snapshot version " + std::to_string(version));
  }
  const auto kind = get_le<std::uint8_t>(bytes, pos);
  if (kind > 1) throw SnapshotError("unknown snapshot kind " + std::to_string(kind));
  const auto n = get_le<std::uint32_t>(bytes, pos);
  const auto length = get_le<double>(bytes, pos);

  Snapshot snap;
  snap.time = get_le<double>(bytes, pos);
  snap.alpha = get_le<double>(bytes, pos);

  GridPtr grid = make_grid(n, length);
  const std::size_t total = grid->size();
  const std::size_t expected = pos + 8 * total * (kind == 0 ? 1 : 6);
  if (bytes.size() != expected) {
    throw SnapshotError("snapshot payload size mismatch (expected " +
                        std::to_string(expected) + " bytes, found " +
                        std::to_string(bytes.size()) + "): " + path);
  }

  if (kind == 0) {
    std::vector<double> samples(total);
    for (auto& v : samples) v = get_le<double>(bytes, pos);
    snap.scalar = ScalarField::from_samples(grid, std::move(samples));
  } else {
    std::array<std::vector<cplx>, 3> comps;
    for (auto& comp : comps) {
      comp.resize(total);
      for (auto& v : comp) {
        const double re = get_le<double>(bytes, pos);
        const double im = get_le<double>(bytes, pos);
        v = cplx{re, im};
      }
    }
    snap.vector = VectorField::from_components(grid, Representation::physical,
                                               std::move(comps));
  }
  return snap;
}

}  // namespace zak
