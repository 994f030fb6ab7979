// Every shipped input parses, and the ones with a reference counterpart
// match it.
#include <filesystem>

#include "doctest.h"
#include "ppcomp/algebra.hpp"
#include "ppcomp/cm_reduction.hpp"
#include "ppcomp/io.hpp"
#include "ppcomp/reference.hpp"

using namespace ppcomp;

namespace {

const std::filesystem::path kData = PPCOMP_DATA_DIR;

std::string text(const std::string& name) { return read_text_file(kData / name); }

bool same_pentagon(const Pentagon& a, const Pentagon& b) {
  return a.elements == b.elements && a.alpha == b.alpha && a.beta == b.beta &&
         a.gamma == b.gamma;
}

}  // namespace

TEST_CASE("reference algebras and structures") {
  const FinAlgebra set3 = parse_algebra(text("set3.alg"));
  CHECK(set3.universe() == reference::pure_set(3).universe());
  CHECK(set3.operations().empty());
  CHECK(parse_algebra(text("set4.alg")).size() == 4);
  CHECK(parse_structure(text("bool_le.struct")).relations() ==
        reference::boolean_le().relations());
}

TEST_CASE("reference pentagons") {
  CHECK(same_pentagon(parse_pentagon(text("pentagon4.pent")), reference::pentagon4()));
  CHECK(same_pentagon(parse_pentagon(text("pentagon2.pent")), reference::pentagon2()));
}

TEST_CASE("every input parses") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(kData)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    const std::string body = read_text_file(entry.path());
    INFO(entry.path().string());
    ++seen;
    if (ext == ".struct") CHECK_NOTHROW(parse_structure(body));
    else if (ext == ".alg") CHECK_NOTHROW(parse_algebra(body));
    else if (ext == ".pent") CHECK_NOTHROW(parse_pentagon(body));
    else if (ext == ".pkg") CHECK_NOTHROW(load_unary_package(entry.path()));
    else if (ext == ".amalgam") CHECK_NOTHROW(require_valid_amalgam(load_amalgam_package(entry.path())));
    else if (ext == ".dnf") CHECK_NOTHROW(parse_dnf(body));
    else if (ext == ".term") CHECK_NOTHROW(parse_lattice_term(body));
    else if (ext == ".sorted") CHECK_NOTHROW(parse_sorted_formula(body));
    else if (ext == ".pp") CHECK_NOTHROW(parse_pp_formula(body));
    else FAIL("unexpected file");
  }
  CHECK(seen == 24);
}
