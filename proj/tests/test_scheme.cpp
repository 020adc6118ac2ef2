#include "cycdesc/error.hpp"
#include "cycdesc/problem.hpp"
#include "cycdesc/scheme.hpp"
#include "doctest.h"

using namespace cycdesc;

namespace {

const char* kCover = R"(
field Q
ring Rt vars t
ring Rtx vars t x
scheme Z piece Z0 ring Rt ideal 0
scheme Y piece Y0 ring Rtx ideal x^2 - t
scheme P piece P0 ring Rt ideal t
morphism f Y -> Z map t=t assert flat,surjective
morphism i P -> Z map t=t assert closed_immersion
point z0 scheme Z prime t
point y0 scheme Y prime t; x
point yg scheme Y prime 0
)";

ErrorCode code_of(const std::string& text) {
  try {
    Problem::parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::GoldenMismatch;  // no error at all
}

}  // namespace

TEST_CASE("fiber product of a double cover with itself") {
  const Problem p = Problem::parse(kCover);
  const auto& f = p.get<MorphismPtr>("f");
  const FiberProduct sq = fiber_product(f, f);
  REQUIRE(sq.scheme->pieces().size() == 1);
  CHECK(sq.scheme->piece(0).name == "Y0*Y0");
  CHECK(sq.scheme->piece(0).ring->to_string() == "Q[t_1, x_1, t_2, x_2]");
  CHECK(sq.pr1->source() == sq.scheme);
  CHECK(sq.pr1->target() == f->source());
  CHECK(sq.pr1->has(MorphismProperty::Flat));
  CHECK(sq.pr2->has(MorphismProperty::Surjective));
}

TEST_CASE("base change of a closed immersion stays a closed immersion") {
  const Problem p = Problem::parse(kCover);
  const FiberProduct sq = fiber_product(p.get<MorphismPtr>("i"), p.get<MorphismPtr>("f"));
  CHECK(sq.pr2->has(MorphismProperty::ClosedImmersion));
  CHECK(sq.pr1->has(MorphismProperty::Flat));
  CHECK_FALSE(sq.pr1->has(MorphismProperty::ClosedImmersion));
}

TEST_CASE("image points and preimages") {
  const Problem p = Problem::parse(kCover);
  const auto& f = p.get<MorphismPtr>("f");
  CHECK(image_point(f, p.get<SchemePoint>("y0")) == p.get<SchemePoint>("z0"));
  CHECK(image_point(f, p.get<SchemePoint>("yg")).prime().ideal().is_zero());
  const ClosedSubscheme pre = preimage_subscheme(f, closure_of_point(p.get<SchemePoint>("z0")));
  CHECK(pre.ideal(0).contains(parse_polynomial("x^2", pre.ideal(0).ring())));
  CHECK_FALSE(pre.ideal(0).contains(parse_polynomial("x", pre.ideal(0).ring())));
}

TEST_CASE("composition keeps shared properties") {
  const Problem p = Problem::parse(kCover);
  const auto& f = p.get<MorphismPtr>("f");
  const MorphismPtr id = identity_morphism(f->target());
  const MorphismPtr g = compose(f, id, "h");
  CHECK(g->name() == "h");
  CHECK(g->has(MorphismProperty::Flat));
  CHECK(g->has(MorphismProperty::Surjective));
  CHECK_FALSE(g->has(MorphismProperty::ClosedImmersion));
  CHECK_THROWS_AS(compose(f, f), Error);
}

TEST_CASE("ill-defined morphisms and false closed immersions are rejected") {
  const std::string head = "field Q\nring Rt vars t\nring Rtx vars t x\nscheme Z piece Z0 ring Rt ideal t\n"
                           "scheme Y piece Y0 ring Rtx ideal x^2 - t\n";
  CHECK(code_of(head + "morphism f Y -> Z map t=x\n") == ErrorCode::IllDefinedMorphism);
  CHECK(code_of(head + "morphism f Y -> Z map t=t\n") == ErrorCode::IllDefinedMorphism);
  CHECK(code_of(head + "morphism f Z -> Y map t=t, x=0\n") == ErrorCode::GoldenMismatch);
  CHECK(code_of(head + "morphism f Y -> Y map t=t^2, x=x^2 assert closed_immersion\n") ==
        ErrorCode::NotClosedImmersion);
  const std::string line = "field Q\nring R vars t\nring S vars s\nscheme A piece A0 ring R ideal 0\n"
                           "scheme B piece B0 ring S ideal 0\n";
  CHECK(code_of(line + "morphism f A -> B map s=t^2 assert closed_immersion\n") == ErrorCode::NotClosedImmersion);
  CHECK(code_of(line + "morphism f A -> B map s=t assert closed_immersion\n") == ErrorCode::GoldenMismatch);
}

TEST_CASE("points must be prime and contain the piece ideal") {
  const std::string head = "field Q\nring Rtx vars t x\nscheme Y piece Y0 ring Rtx ideal x^2 - t\n";
  CHECK(code_of(head + "point y scheme Y prime x\n") == ErrorCode::GoldenMismatch);  // x, x^2 - t
  CHECK(code_of(head + "point y scheme Y prime t*x\n") == ErrorCode::InvalidDeclaration);
  CHECK(code_of(head + "point y scheme Y prime t*x asserted\n") == ErrorCode::GoldenMismatch);
}
