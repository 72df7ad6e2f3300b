#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "tirls/tensor.hpp"

namespace tirls {

// Tensor file layout (all little-endian):
//   bytes 0-3   magic "T3DT"
//   bytes 4-7   uint32 version = 1
//   bytes 8-31  uint64 n1, n2, n3
//   then n1*n2*n3 IEEE-754 doubles, frontal-slice-major, column-major per slice.
inline constexpr char kTensorMagic[4] = {'T', '3', 'D', 'T'};
inline constexpr std::uint32_t kTensorVersion = 1;

void write_tensor(std::ostream& out, const Tensor3& t);
Tensor3 read_tensor(std::istream& in);

/// Writes to a temporary sibling and renames it into place.
void write_tensor(const std::filesystem::path& path, const Tensor3& t);
Tensor3 read_tensor(const std::filesystem::path& path);

/// Line-oriented `key=value` text; keys are kept sorted.
using Manifest = std::map<std::string, std::string>;

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);

/// Lookup helpers throwing FormatError on a missing or malformed entry.
const std::string& manifest_get(const Manifest& m, const std::string& key);
double manifest_double(const Manifest& m, const std::string& key);
long long manifest_int(const Manifest& m, const std::string& key);

/// Round-trip exact text form of a double.
std::string format_double(double v);

}  // namespace tirls
