#include <filesystem>
#include <fstream>
#include <sstream>

#include "cycdesc/error.hpp"
#include "cycdesc/problem.hpp"
#include "doctest.h"

using namespace cycdesc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Error parse_error(const std::string& text) {
  try {
    Problem::parse(text);
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected a parse error");
  return Error(ErrorCode::Syntax, "");
}

}  // namespace

TEST_CASE("print is stable under parse on the corpus") {
  int files = 0;
  for (const auto& e : fs::directory_iterator(CYCDESC_CORPUS_DIR)) {
    if (e.path().extension() != ".cyc") continue;
    ++files;
    const std::string once = Problem::parse(slurp(e.path())).print();
    CHECK_MESSAGE(Problem::parse(once).print() == once, e.path().filename().string());
  }
  CHECK(files > 0);
}

TEST_CASE("diagnostics carry positions and codes") {
  const Error syntax = parse_error("field Q\nring R vars t\nscheme X piece A ring R ideal t +\n");
  CHECK(syntax.code() == ErrorCode::Syntax);
  CHECK(std::string(syntax.what()).find("line 3") != std::string::npos);

  const Error unresolved = parse_error("field Q\nscheme X piece A ring R ideal t\n");
  CHECK(unresolved.code() == ErrorCode::UnresolvedReference);
  CHECK(std::string(unresolved.what()).find("line 2") != std::string::npos);

  const Error bad_map = parse_error(
      "field Q\nring Rt vars t\nring Rtx vars t x\nscheme Z piece Z0 ring Rt ideal t\n"
      "scheme Y piece Y0 ring Rtx ideal x^2 - t\nmorphism f Y -> Z map t=x\n");
  CHECK(bad_map.code() == ErrorCode::IllDefinedMorphism);
  CHECK(std::string(bad_map.what()).find("line 6") != std::string::npos);

  CHECK(parse_error("field Fp 4\n").code() == ErrorCode::InvalidDeclaration);
  CHECK(parse_error("bogus\n").code() == ErrorCode::Syntax);
}

TEST_CASE("DVR problem runs end to end") {
  const Problem p = Problem::parse(R"(
field Q
ring R vars pi
scheme Y piece Y0 ring R ideal 0
scheme X piece X1 ring R ideal pi^2 piece X2 ring R ideal pi
morphism f X -> Y piece X1->Y0 map pi=pi piece X2->Y0 map pi=pi
point eta scheme Y prime 0
point s scheme Y prime pi
task pullback f eta
task pullback f s
task hlocal f s
)");
  const Report r = run_problem(p);
  REQUIRE(r.tasks.size() == 3);
  CHECK(r.tasks[0].fields.at(0).second == "2*[piece=X1; (pi)] + 1*[piece=X2; (pi)]");
  CHECK(r.tasks[1].fields.at(0).second == "1*[piece=X1; (pi)] + 1*[piece=X2; (pi)]");
  CHECK(r.tasks[2].fields.at(0).first == "error");
  CHECK(r.exit_code == static_cast<int>(ErrorCode::NotUniversallyGeneralizing));

  const Report only = run_problem(p, "pullback");
  CHECK(only.tasks.size() == 2);
  CHECK(only.exit_code == 0);
}

TEST_CASE("bundled corpus matches its golden files") {
  const auto entries = verify_corpus(CYCDESC_CORPUS_DIR, "dvr_*");
  REQUIRE(entries.size() == 2);
  for (const auto& e : entries) CHECK_MESSAGE(e.matched, std::string(e.name + ": " + e.detail));
}
