#include "qsw/container.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qsw {

static_assert(std::endian::native == std::endian::little,
              "container serialization assumes a little-endian host");

namespace {

constexpr char kMagic[6] = {'Q', 'S', 'W', 'B', 'O', 'X'};
constexpr std::uint16_t kVersion = 1;

std::uint32_t crc32(const std::string& bytes) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t crc = 0xFFFFFFFFu;
  for (unsigned char b : bytes) crc = table[(crc ^ b) & 0xFFu] ^ (crc >> 8);
  return crc ^ 0xFFFFFFFFu;
}

template <typename T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T take(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw FileFormatError("truncated container section");
  T value;
  std::memcpy(&value, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return value;
}

}  // namespace

std::size_t ArrayBlock::element_count() const {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

void ResultContainer::write(std::ostream& out) const {
  std::string body;
  body.append(kMagic, sizeof(kMagic));
  put<std::uint16_t>(body, kVersion);

  auto append_section = [&body](const std::string& name, const std::string& payload) {
    put<std::uint32_t>(body, static_cast<std::uint32_t>(name.size()));
    body.append(name);
    put<std::uint64_t>(body, static_cast<std::uint64_t>(payload.size()));
    body.append(payload);
  };

  append_section("meta", metadata);
  for (const auto& [name, block] : arrays) {
    if (block.data.size() != block.element_count()) {
      throw std::invalid_argument("array block `" + name + "` shape/data mismatch");
    }
    std::string payload;
    put<std::uint64_t>(payload, static_cast<std::uint64_t>(block.shape.size()));
    for (std::size_t d : block.shape) put<std::uint64_t>(payload, static_cast<std::uint64_t>(d));
    payload.append(reinterpret_cast<const char*>(block.data.data()),
                   block.data.size() * sizeof(double));
    append_section(name, payload);
  }

  put<std::uint32_t>(body, crc32(body.substr(0, body.size())));
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!out) throw IoError("failed to write container stream");
}

ResultContainer ResultContainer::read(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();

  if (bytes.size() < sizeof(kMagic) + sizeof(std::uint16_t) + sizeof(std::uint32_t)) {
    throw FileFormatError("container file too short");
  }
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw FileFormatError("not a qsw container (bad magic bytes)");
  }
  std::size_t pos = sizeof(kMagic);
  const auto version = take<std::uint16_t>(bytes, pos);
  if (version != kVersion) {
    throw FileFormatError("unsupported container version " + std::to_string(version));
  }

  const std::size_t crc_pos = bytes.size() - sizeof(std::uint32_t);
  std::uint32_t stored;
  std::memcpy(&stored, bytes.data() + crc_pos, sizeof(stored));
  if (crc32(bytes.substr(0, crc_pos)) != stored) {
    throw FileFormatError("container checksum mismatch (truncated or corrupted file)");
  }

  ResultContainer container;
  while (pos < crc_pos) {
    const auto name_len = take<std::uint32_t>(bytes, pos);
    if (pos + name_len > crc_pos) throw FileFormatError("truncated container section name");
    std::string name = bytes.substr(pos, name_len);
    pos += name_len;
    const auto payload_len = take<std::uint64_t>(bytes, pos);
    if (pos + payload_len > crc_pos) throw FileFormatError("truncated container payload");
    if (name == "meta") {
      container.metadata = bytes.substr(pos, payload_len);
      pos += payload_len;
      continue;
    }
    std::size_t end = pos + payload_len;
    ArrayBlock block;
    const auto rank = take<std::uint64_t>(bytes, pos);
    block.shape.resize(rank);
    for (auto& d : block.shape) d = take<std::uint64_t>(bytes, pos);
    const std::size_t count = block.element_count();
    if (pos + count * sizeof(double) != end) {
      throw FileFormatError("array section `" + name + "` has inconsistent dimensions");
    }
    block.data.resize(count);
    std::memcpy(block.data.data(), bytes.data() + pos, count * sizeof(double));
    pos = end;
    container.arrays.emplace(std::move(name), std::move(block));
  }
  return container;
}

void write_container(const ResultContainer& container, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open `" + path.string() + "` for writing");
  container.write(out);
}

ResultContainer read_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open `" + path.string() + "`");
  return ResultContainer::read(in);
}

void emit_plot_data(const ResultContainer& container, const std::string& quantity,
                    std::ostream& out) {
  if (quantity.empty()) throw std::invalid_argument("no quantity requested");
  auto it = container.arrays.find(quantity);
  if (it == container.arrays.end()) {
    throw std::invalid_argument("quantity `" + quantity + "` is not present in the container");
  }
  const ArrayBlock& block = it->second;
  const std::size_t rows = block.shape.empty() ? 1 : block.shape.front();
  const std::size_t cols = block.element_count() / std::max<std::size_t>(rows, 1);

  const ArrayBlock* times = nullptr;
  auto t_it = container.arrays.find("times");
  if (t_it != container.arrays.end() && t_it->second.element_count() == rows) {
    times = &t_it->second;
  }

  out.precision(17);
  for (std::size_t r = 0; r < rows; ++r) {
    if (times) out << times->data[r] << " ";
    for (std::size_t c = 0; c < cols; ++c) {
      out << block.data[r * cols + c] << (c + 1 < cols ? " " : "");
    }
    out << "\n";
  }
  if (!out) throw IoError("failed to write plot data");
}

void emit_plot_data(const ResultContainer& container, const std::string& quantity,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open `" + path.string() + "` for writing");
  emit_plot_data(container, quantity, out);
}

}  // namespace qsw
