#pragma once

// Field persistence: one JSON header line, then the spectral coefficients as
// interleaved little-endian float64 (re, im) pairs in FFT order.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dnls/field.hpp"

namespace dnls::cli {

struct FieldDump {
  SpectralField field;
  double time = 0.0;
};

std::uint32_t crc32_of(const std::vector<unsigned char>& bytes);

std::vector<unsigned char> encode_payload(const std::vector<Complex>& coeffs);
std::vector<Complex> decode_payload(const std::vector<unsigned char>& bytes);

// Header plus payload as written to disk.
std::string serialize(const FieldDump& dump);
// Throws FormatError on a malformed header, length mismatch or bad checksum.
FieldDump deserialize(const std::string& bytes);

void write_field_dump(const std::filesystem::path& path, const FieldDump& dump);
FieldDump read_field_dump(const std::filesystem::path& path);

}  // namespace dnls::cli
