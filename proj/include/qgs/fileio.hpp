#pragma once

// Binary table formats.
//
// SCF table: "SCF3", version byte 1, m (1 byte), n (uint16 little-endian),
// then (m!)^n output bytes in profile-index order.
//
// GSWF: "GSWF", version byte 1, m (1 byte), n (uint16 little-endian), then
// C(m,2) bitsets in lexicographic pair order; each holds 2^n bits padded to
// whole bytes, bit z stored at byte z/8, bit position z%8 (LSB first).

#include "qgs/arrow.hpp"
#include "qgs/scf.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

namespace qgs {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> encode_scf(const Scf& f);
Scf decode_scf(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_gswf(const GswfIia& g);
GswfIia decode_gswf(std::span<const std::uint8_t> bytes);

void save_scf(const Scf& f, const std::filesystem::path& path);
Scf load_scf(const std::filesystem::path& path);
void save_gswf(const GswfIia& g, const std::filesystem::path& path);
GswfIia load_gswf(const std::filesystem::path& path);

}  // namespace qgs
