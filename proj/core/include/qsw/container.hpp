#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qsw/graph.hpp"  // FileFormatError

namespace qsw {

/// Raised on filesystem-level failures (missing file, unwritable path).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One named numeric block: row-major float64 data with an explicit shape.
struct ArrayBlock {
  std::vector<std::size_t> shape;
  std::vector<double> data;

  std::size_t element_count() const;
  bool operator==(const ArrayBlock&) const = default;
};

/// Self-describing single-file result container: a structured metadata text
/// block plus named numeric sections, with a checksum trailer.
///
/// Layout (all integers little-endian): magic "QSWBOX" + u16 version, then
/// one section per entry as {u32 name length, name, u64 payload length,
/// payload}, then a CRC-32 of everything before the trailer. The "meta"
/// section is UTF-8 text; array payloads are {u64 rank, u64 dims..., f64
/// data}.
struct ResultContainer {
  std::string metadata;
  std::map<std::string, ArrayBlock> arrays;

  void write(std::ostream& out) const;
  static ResultContainer read(std::istream& in);
};

void write_container(const ResultContainer& container, const std::filesystem::path& path);
ResultContainer read_container(const std::filesystem::path& path);

/// Writes delimited text: one row per time with the requested quantity's
/// columns, importable by any plotting tool.
void emit_plot_data(const ResultContainer& container, const std::string& quantity,
                    std::ostream& out);
void emit_plot_data(const ResultContainer& container, const std::string& quantity,
                    const std::filesystem::path& path);

}  // namespace qsw
