#ifndef MODALREACH_IO_ATOMIC_WRITE_HPP_
#define MODALREACH_IO_ATOMIC_WRITE_HPP_

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace modalreach::io {

/// Write via a sibling temp file and rename, so readers never see a
/// half-written result.
inline void write_text_atomic(const std::filesystem::path& path,
                              const std::string& text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write '" + tmp.string() + "'.");
    }
    out << text;
    out.flush();
    if (!out) {
      throw std::runtime_error("short write to '" + tmp.string() + "'.");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace modalreach::io

#endif  // MODALREACH_IO_ATOMIC_WRITE_HPP_
