#include "dlab/dlf1.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace dlab {

// Layout, all little-endian:
//   bytes 0..3   magic "DLF1"
//   bytes 4..7   u32 version (1)
//   bytes 8..15  reserved, zero
//   L, Tw        f64
//   Nx, Nt       u32
//   rep          u8 (0 = physical, 1 = mode, 2 = spectral)
//   values       Nt*Nx complex, row-major, interleaved re/im f64

static_assert(std::endian::native == std::endian::little,
              "DLF1 reader/writer assumes a little-endian host");

namespace {

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_dlf1(const std::string& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("dlf1: cannot open for writing: " + path);
  os.write("DLF1", 4);
  put<std::uint32_t>(os, 1);
  const char zero[8] = {};
  os.write(zero, 8);
  const GridSpec& s = f.grid()->spec();
  put<double>(os, s.L);
  put<double>(os, s.Tw);
  put<std::uint32_t>(os, std::uint32_t(s.Nx));
  put<std::uint32_t>(os, std::uint32_t(s.Nt));
  put<std::uint8_t>(os, std::uint8_t(int(f.rep())));
  os.write(reinterpret_cast<const char*>(f.values().data()),
           std::streamsize(f.values().size() * sizeof(cplx)));
  if (!os) throw IoError("dlf1: short write: " + path);
}

Field read_dlf1(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("dlf1: cannot open: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "DLF1", 4) != 0) throw IoError("dlf1: bad magic: " + path);
  if (get<std::uint32_t>(is) != 1) throw IoError("dlf1: unsupported version: " + path);
  char reserved[8];
  is.read(reserved, 8);
  GridSpec spec;
  spec.L = get<double>(is);
  spec.Tw = get<double>(is);
  spec.Nx = int(get<std::uint32_t>(is));
  spec.Nt = int(get<std::uint32_t>(is));
  int rep = get<std::uint8_t>(is);
  if (!is || rep > 2) throw IoError("dlf1: corrupt header: " + path);
  GridPtr g;
  try {
    g = make_grid(spec);
  } catch (const ConfigError& e) {
    throw IoError(std::string("dlf1: invalid grid in file: ") + e.what());
  }
  Field f(g, Rep(rep));
  is.read(reinterpret_cast<char*>(f.values().data()),
          std::streamsize(f.values().size() * sizeof(cplx)));
  if (!is) throw IoError("dlf1: truncated data: " + path);
  return f;
}

}  // namespace dlab
