#include "topk/vector_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

namespace topk {

namespace {

enum class Format { Text, Binary };

Format format_of(const std::string& path) {
  auto ends_with = [&](const char* ext) {
    const std::size_t len = std::strlen(ext);
    return path.size() >= len && path.compare(path.size() - len, len, ext) == 0;
  };
  if (ends_with(".txt")) return Format::Text;
  if (ends_with(".f64")) return Format::Binary;
  throw ArgumentError("unsupported vector file extension (want .txt or .f64): " + path);
}

template <class T>
T to_le(T v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
  std::reverse(bytes.begin(), bytes.end());
  return std::bit_cast<T>(bytes);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<double> read_vector(const std::string& path) {
  const Format fmt = format_of(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> out;

  if (fmt == Format::Text) {
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
      ++lineNo;
      const std::string t = trim(line);
      if (t.empty()) continue;
      // strtod accepts the same syntax the writer produces, including inf/nan,
      // which validation later rejects with a clearer message.
      char* end = nullptr;
      const double v = std::strtod(t.c_str(), &end);
      if (end == t.c_str() || *end != '\0')
        throw IoError(path + ":" + std::to_string(lineNo) + ": not a number: '" + t + "'");
      out.push_back(v);
    }
    return out;
  }

  std::uint64_t len = 0;
  if (!in.read(reinterpret_cast<char*>(&len), sizeof len)) throw IoError(path + ": missing length header");
  len = to_le(len);
  in.seekg(0, std::ios::end);
  const auto bytes = static_cast<std::uint64_t>(in.tellg()) - sizeof len;
  if (bytes != len * sizeof(double))
    throw IoError(path + ": length header says " + std::to_string(len) + " values, file holds " +
                  std::to_string(bytes) + " bytes");
  in.seekg(sizeof len);
  out.resize(static_cast<std::size_t>(len));
  if (len > 0 && !in.read(reinterpret_cast<char*>(out.data()), std::streamsize(len * sizeof(double))))
    throw IoError(path + ": truncated data");
  for (double& v : out) v = to_le(v);
  return out;
}

void write_vector(const std::string& path, std::span<const double> data) {
  const Format fmt = format_of(path);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot write " + path);
  if (fmt == Format::Text) {
    char buf[64];
    for (double v : data) {
      const int len = std::snprintf(buf, sizeof buf, "%.17g\n", v);
      os.write(buf, len);
    }
  } else {
    const std::uint64_t len = to_le(static_cast<std::uint64_t>(data.size()));
    os.write(reinterpret_cast<const char*>(&len), sizeof len);
    for (double v : data) {
      const double le = to_le(v);
      os.write(reinterpret_cast<const char*>(&le), sizeof le);
    }
  }
  if (!os) throw IoError("write failed: " + path);
}

}  // namespace topk
