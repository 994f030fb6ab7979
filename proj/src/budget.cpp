#include "ppcomp/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include "ppcomp/error.hpp"

namespace ppcomp {

namespace {

std::uint64_t to_number(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ValidationError("malformed budget value '" + std::string(s) + "'");
  return v;
}

}  // namespace

Budget Budget::with_overrides(const std::string& spec) const {
  Budget b = *this;
  std::string_view rest = spec;
  if (rest.find('=') == std::string_view::npos) {
    b.max_enumeration = to_number(rest);
    return b;
  }
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{}
                                           : rest.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError("malformed budget item '" + std::string(item) + "'");
    std::string_view key = item.substr(0, eq);
    std::uint64_t value = to_number(item.substr(eq + 1));
    if (key == "vars")
      b.max_variables = value;
    else if (key == "enum")
      b.max_enumeration = value;
    else if (key == "dnf")
      b.max_dnf_variables = value;
    else if (key == "carrier")
      b.max_congruence_carrier = value;
    else
      throw ValidationError("unknown budget key '" + std::string(key) + "'");
  }
  return b;
}

Budget Budget::from_env() {
  const char* env = std::getenv("PPCOMP_BUDGET");
  if (env == nullptr || *env == '\0') return Budget{};
  return Budget{}.with_overrides(env);
}

}  // namespace ppcomp
