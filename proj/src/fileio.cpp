#include "qgs/fileio.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

namespace qgs {

namespace {

constexpr std::uint8_t kVersion = 1;
constexpr std::size_t kHeader = 8;

void put_header(std::vector<std::uint8_t>& out, const char* magic, int m, int n) {
  out.insert(out.end(), magic, magic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(m));
  out.push_back(static_cast<std::uint8_t>(n & 0xff));
  out.push_back(static_cast<std::uint8_t>((n >> 8) & 0xff));
}

std::pair<int, int> read_header(std::span<const std::uint8_t> bytes, const char* magic) {
  if (bytes.size() < kHeader) throw FormatError("file too short for header");
  if (std::memcmp(bytes.data(), magic, 4) != 0)
    throw FormatError(std::string("bad magic, expected ") + magic);
  if (bytes[4] != kVersion) throw FormatError("unsupported format version");
  const int m = bytes[5];
  const int n = bytes[6] | (bytes[7] << 8);
  return {m, n};
}

std::vector<std::uint8_t> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::vector<std::uint8_t> encode_scf(const Scf& f) {
  if (!f.has_table()) throw DomainError("encode_scf: materialize the SCF first");
  if (f.voters() > 0xffff) throw FormatError("encode_scf: too many voters");
  std::vector<std::uint8_t> out;
  out.reserve(kHeader + f.outputs().size());
  put_header(out, "SCF3", f.alternatives(), f.voters());
  out.insert(out.end(), f.outputs().begin(), f.outputs().end());
  return out;
}

Scf decode_scf(std::span<const std::uint8_t> bytes) {
  const auto [m, n] = read_header(bytes, "SCF3");
  if (m < 2 || m > kMaxAlternatives || n < 1) throw FormatError("SCF3: invalid m or n");
  std::uint64_t expected = 0;
  try {
    expected = profile_count(n, m);
  } catch (const DomainError&) {
    throw FormatError("SCF3: table size overflows");
  }
  if (bytes.size() - kHeader != expected) throw FormatError("SCF3: table length mismatch");
  std::vector<Alt> outputs(bytes.begin() + kHeader, bytes.end());
  if (std::any_of(outputs.begin(), outputs.end(), [m](Alt a) { return a >= m; }))
    throw FormatError("SCF3: output out of range");
  return Scf::from_table(n, m, std::move(outputs), "file");
}

std::vector<std::uint8_t> encode_gswf(const GswfIia& g) {
  std::vector<std::uint8_t> out;
  put_header(out, "GSWF", g.alternatives(), g.voters());
  const std::uint64_t bits = pow2(g.voters());
  const std::uint64_t bytes = (bits + 7) / 8;
  for (const auto& t : g.tables()) {
    std::vector<std::uint8_t> packed(bytes, 0);
    for (std::uint64_t z = 0; z < bits; ++z)
      if (t[z]) packed[z / 8] |= static_cast<std::uint8_t>(1U << (z % 8));
    out.insert(out.end(), packed.begin(), packed.end());
  }
  return out;
}

GswfIia decode_gswf(std::span<const std::uint8_t> bytes) {
  const auto [m, n] = read_header(bytes, "GSWF");
  if (m < 2 || m > kMaxAlternatives || n < 1 || n > 24) throw FormatError("GSWF: invalid m or n");
  const std::uint64_t bits = pow2(n);
  const std::uint64_t per_table = (bits + 7) / 8;
  if (bytes.size() - kHeader != per_table * pair_count(m)) throw FormatError("GSWF: length mismatch");
  std::vector<BoolTable> tables;
  for (int p = 0; p < pair_count(m); ++p) {
    const auto* base = bytes.data() + kHeader + p * per_table;
    BoolTable t(bits);
    for (std::uint64_t z = 0; z < bits; ++z) t[z] = (base[z / 8] >> (z % 8)) & 1U;
    // Padding bits must be zero.
    for (std::uint64_t z = bits; z < per_table * 8; ++z)
      if ((base[z / 8] >> (z % 8)) & 1U) throw FormatError("GSWF: nonzero padding");
    tables.push_back(std::move(t));
  }
  return GswfIia(n, m, std::move(tables));
}

void save_scf(const Scf& f, const std::filesystem::path& path) { write_all(path, encode_scf(f)); }
Scf load_scf(const std::filesystem::path& path) { return decode_scf(read_all(path)); }
void save_gswf(const GswfIia& g, const std::filesystem::path& path) { write_all(path, encode_gswf(g)); }
GswfIia load_gswf(const std::filesystem::path& path) { return decode_gswf(read_all(path)); }

}  // namespace qgs
