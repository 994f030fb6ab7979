#include "ppcomp/io.hpp"

#include <fstream>
#include <sstream>

#include "ppcomp/error.hpp"

namespace ppcomp {

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

}  // namespace ppcomp
