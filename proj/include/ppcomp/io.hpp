#ifndef PPCOMP_IO_HPP
#define PPCOMP_IO_HPP

#include <filesystem>
#include <string>

namespace ppcomp {

/// Whole file as text. Throws Error if it cannot be read.
std::string read_text_file(const std::filesystem::path& path);

/// Throws Error if the file cannot be written.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ppcomp

#endif  // PPCOMP_IO_HPP
