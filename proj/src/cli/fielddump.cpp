#include "dnls/cli/fielddump.hpp"

#include <bit>
#include <fstream>
#include <iterator>

#include <json.hpp>
#include <zlib.h>

#include "dnls/error.hpp"

namespace dnls::cli {
namespace {

constexpr const char* kDtype = "c128-le";

void put_le(std::vector<unsigned char>& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<unsigned char>(bits >> (8 * b)));
}

double get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

const char* kind_name(const Domain& d) { return d.is_torus() ? "torus" : "line"; }

}  // namespace

std::uint32_t crc32_of(const std::vector<unsigned char>& bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, bytes.data(), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::vector<unsigned char> encode_payload(const std::vector<Complex>& coeffs) {
  std::vector<unsigned char> out;
  out.reserve(16 * coeffs.size());
  for (auto z : coeffs) {
    put_le(out, z.real());
    put_le(out, z.imag());
  }
  return out;
}

std::vector<Complex> decode_payload(const std::vector<unsigned char>& bytes) {
  if (bytes.size() % 16 != 0)
    throw FormatError("payload length " + std::to_string(bytes.size()) +
                      " is not a multiple of 16");
  std::vector<Complex> out(bytes.size() / 16);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = {get_le(bytes.data() + 16 * k), get_le(bytes.data() + 16 * k + 8)};
  return out;
}

std::string serialize(const FieldDump& dump) {
  const Domain& d = dump.field.domain;
  const auto payload = encode_payload(dump.field.coeffs);
  nlohmann::ordered_json h;
  h["domain"] = kind_name(d);
  h["n_points"] = d.size();
  h["domain_scale"] = d.domain_scale();
  h["period"] = d.period();
  h["time"] = dump.time;
  h["dtype"] = kDtype;
  h["payload_bytes"] = payload.size();
  h["crc32"] = crc32_of(payload);
  std::string out = h.dump() + "\n";
  out.append(payload.begin(), payload.end());
  return out;
}

FieldDump deserialize(const std::string& bytes) {
  const auto nl = bytes.find('\n');
  if (nl == std::string::npos) throw FormatError("field dump has no header line");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(bytes.substr(0, nl));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad field dump header: ") + e.what());
  }
  try {
    if (h.at("dtype").get<std::string>() != kDtype)
      throw FormatError("unsupported dtype " + h.at("dtype").dump());
    const auto n = h.at("n_points").get<std::size_t>();
    const auto kind = h.at("domain").get<std::string>();
    const std::vector<unsigned char> payload(bytes.begin() + static_cast<long>(nl) + 1,
                                             bytes.end());
    if (payload.size() != 16 * n)
      throw FormatError("payload has " + std::to_string(payload.size()) + " bytes, expected " +
                        std::to_string(16 * n));
    if (h.at("crc32").get<std::uint32_t>() != crc32_of(payload))
      throw FormatError("payload checksum mismatch");
    Domain d = kind == "torus"  ? Domain::torus(n)
               : kind == "line" ? Domain::line(n, h.at("domain_scale").get<std::size_t>())
                                : throw FormatError("unknown domain kind " + kind);
    return {SpectralField(d, decode_payload(payload)), h.at("time").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad field dump header: ") + e.what());
  }
}

void write_field_dump(const std::filesystem::path& path, const FieldDump& dump) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  const std::string s = serialize(dump);
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!os) throw FormatError("write failed for " + path.string());
}

FieldDump read_field_dump(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  const std::string s((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return deserialize(s);
}

}  // namespace dnls::cli
