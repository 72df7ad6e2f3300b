#include "tirls/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "tirls/errors.hpp"

namespace tirls {

namespace {

template <typename T>
void put_le(std::ostream& out, T value) {
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    const U bits = std::bit_cast<U>(value);
    std::array<char, sizeof(U)> bytes{};
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
    }
    out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    std::array<unsigned char, sizeof(U)> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (!in) {
        throw FormatError("tensor file truncated");
    }
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
        bits |= static_cast<U>(bytes[i]) << (8 * i);
    }
    return std::bit_cast<T>(bits);
}

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
    return path.parent_path() / (path.filename().string() + ".tmp");
}

}  // namespace

void write_tensor(std::ostream& out, const Tensor3& t) {
    out.write(kTensorMagic, 4);
    put_le<std::uint32_t>(out, kTensorVersion);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(t.n1()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(t.n2()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(t.n3()));
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(t.data().data()),
                  static_cast<std::streamsize>(t.data().size() * sizeof(double)));
    } else {
        for (double v : t.data()) {
            put_le<double>(out, v);
        }
    }
    if (!out) {
        throw FormatError("failed to write tensor");
    }
}

Tensor3 read_tensor(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kTensorMagic, 4) != 0) {
        throw FormatError("not a tensor file (bad magic)");
    }
    const auto version = get_le<std::uint32_t>(in);
    if (version != kTensorVersion) {
        throw FormatError("unsupported tensor file version " + std::to_string(version));
    }
    const auto n1 = get_le<std::uint64_t>(in);
    const auto n2 = get_le<std::uint64_t>(in);
    const auto n3 = get_le<std::uint64_t>(in);
    constexpr std::uint64_t limit = std::uint64_t{1} << 40;
    if (n1 > limit || n2 > limit || n3 > limit ||
        (n1 != 0 && n2 != 0 && n3 != 0 && n1 * n2 > limit / n3)) {
        throw FormatError("tensor file header has implausible dimensions");
    }
    const std::uint64_t count = n1 * n2 * n3;
    std::vector<double> data(count);
    if constexpr (std::endian::native == std::endian::little) {
        in.read(reinterpret_cast<char*>(data.data()),
                static_cast<std::streamsize>(count * sizeof(double)));
        if (!in) {
            throw FormatError("tensor file payload shorter than header declares");
        }
    } else {
        for (double& v : data) {
            v = get_le<double>(in);
        }
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw FormatError("tensor file has trailing bytes after payload");
    }
    return {static_cast<Index>(n1), static_cast<Index>(n2), static_cast<Index>(n3),
            std::move(data)};
}

void write_tensor(const std::filesystem::path& path, const Tensor3& t) {
    const auto tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw FormatError("cannot open " + tmp.string() + " for writing");
        }
        write_tensor(out, t);
        out.flush();
        if (!out) {
            throw FormatError("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

Tensor3 read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string());
    }
    try {
        return read_tensor(in);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    const auto tmp = temp_sibling(path);
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            throw FormatError("cannot open " + tmp.string() + " for writing");
        }
        for (const auto& [key, value] : manifest) {
            if (key.find_first_of("=\n") != std::string::npos ||
                value.find('\n') != std::string::npos) {
                throw FormatError("manifest entry '" + key + "' is not representable");
            }
            out << key << '=' << value << '\n';
        }
        out.flush();
        if (!out) {
            throw FormatError("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

Manifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("cannot open manifest " + path.string());
    }
    Manifest m;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw FormatError(path.string() + ":" + std::to_string(lineno) +
                              ": expected key=value");
        }
        m[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return m;
}

const std::string& manifest_get(const Manifest& m, const std::string& key) {
    auto it = m.find(key);
    if (it == m.end()) {
        throw FormatError("manifest is missing '" + key + "'");
    }
    return it->second;
}

double manifest_double(const Manifest& m, const std::string& key) {
    const std::string& s = manifest_get(m, key);
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) {
        throw FormatError("manifest entry '" + key + "' is not a number: " + s);
    }
    return v;
}

long long manifest_int(const Manifest& m, const std::string& key) {
    const std::string& s = manifest_get(m, key);
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) {
        throw FormatError("manifest entry '" + key + "' is not an integer: " + s);
    }
    return v;
}

}  // namespace tirls
