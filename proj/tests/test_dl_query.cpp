#include "olms/dl_query.hpp"
#include "olms/error.hpp"
#include "olms/persistence.hpp"
#include "support/generators.hpp"

#include <doctest.h>

using namespace olms;
using olms::testing::Rng;

TEST_CASE("parse a value restriction") {
  auto e = dl::parse_query("isPursuing value OperatingSystemCourse");
  CHECK(dl::structurally_equal(*e, *dl::value("isPursuing", "OperatingSystemCourse")));
}

TEST_CASE("parse a conjunction") {
  auto e = dl::parse_query("Student and isPursuing value OperatingSystemCourse");
  auto expected = dl::conjunction(
      {dl::atomic("Student"), dl::value("isPursuing", "OperatingSystemCourse")});
  CHECK(dl::structurally_equal(*e, *expected));
  CHECK(std::get<dl::And>(e->node).operands.size() == 2);
}

TEST_CASE("nested conjunctions are flattened") {
  auto e = dl::parse_query("A and (B and C) and D");
  const auto& ops = std::get<dl::And>(e->node).operands;
  CHECK(ops.size() == 4);
}

TEST_CASE("some binds its filler tighter than and") {
  auto e = dl::parse_query("contains some A and B");
  auto expected = dl::conjunction({dl::some("contains", dl::atomic("A")), dl::atomic("B")});
  CHECK(dl::structurally_equal(*e, *expected));
  CHECK(dl::print(*e) == "contains some (A) and B");
}

TEST_CASE("parse errors carry 1-based offsets") {
  auto offset_of = [](std::string_view text) -> std::size_t {
    try {
      dl::parse_query(text);
    } catch (const ParseError& e) {
      CHECK(e.code() == Errc::ParseError);
      return e.offset();
    }
    FAIL("expected ParseError for '" << text << "'");
    return 0;
  };
  CHECK(offset_of("contains some") == 14);
  CHECK(offset_of("") == 1);
  CHECK(offset_of("A and") == 6);
  CHECK(offset_of("(A") == 3);
  CHECK(offset_of("A B") == 3);
  CHECK(offset_of("p value (A)") == 9);
  CHECK(offset_of("A ) ") == 3);

  try {
    dl::parse_query("contains some");
  } catch (const ParseError& e) {
    CHECK(e.expected() == "class expression");
  }
}

TEST_CASE("keywords are case-sensitive") {
  CHECK_THROWS_AS(dl::parse_query("A AND B"), ParseError);
  CHECK_THROWS_AS(dl::parse_query("p Some A"), ParseError);
}

TEST_CASE("evaluate on the seed") {
  const auto s = load_seed();
  CHECK(dl::evaluate("isPursuing value OperatingSystemCourse", s) == IdSet{"abcStudent"});
  CHECK(dl::evaluate("LectureNotes", s) == IdSet{"CMResource"});
  CHECK(dl::evaluate("contains some CommunicationManagement", s) ==
        IdSet{"CMResource", "CMVideo"});
  CHECK(dl::evaluate("Student and isPursuing value OperatingSystemCourse", s) ==
        IdSet{"abcStudent"});
  CHECK(dl::evaluate("enrolledAt value abcStudent", s) == IdSet{"OperatingSystemCourse"});
  CHECK(dl::evaluate("Teacher and isTeacherOf some (Student and isPursuing value "
                     "OperatingSystemCourse)",
                     s) == IdSet{"xyzTeacher"});
}

TEST_CASE("unresolved names fail at evaluation time") {
  const auto s = load_seed();
  auto code = [&](std::string_view text) {
    try {
      dl::evaluate(text, s);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code("NoSuchClass") == Errc::UnknownName);
  CHECK(code("abcStudent") == Errc::UnknownName);
  CHECK(code("path value abcStudent") == Errc::UnknownName);
  CHECK(code("isPursuing value Student") == Errc::UnknownName);
  CHECK(code("nope some Student") == Errc::UnknownName);
}

TEST_CASE("class_extension") {
  const auto s = load_seed();
  CHECK(dl::class_extension("Student", s).contains("abcStudent"));
  auto cs = dl::class_extension("ComputerScience", s);
  for (const auto& [id, ind] : s.individuals()) {
    for (const auto& t : ind.types) {
      if (s.is_subclass_of(t, "ComputerScience")) CHECK(cs.contains(id));
    }
  }
  CHECK(cs.contains("Buffering"));
  CHECK(cs.contains("OperatingSystemCourse"));
  CHECK(dl::class_extension("Reliability", s).empty());
  CHECK_THROWS_AS(dl::class_extension("Nope", s), Error);
}

// ---------------------------------------------------------------------------
// properties

TEST_CASE("evaluate matches the naive membership oracle") {
  Rng rng(21);
  for (int round = 0; round < 200; ++round) {
    auto model = testing::random_model(rng);
    auto s = testing::build_store(model, rng);
    testing::DlOracle oracle(model);
    auto e = testing::random_expr(rng, model, 4);
    REQUIRE_MESSAGE(dl::evaluate(*e, s) == oracle.evaluate(*e), dl::print(*e));
  }
}

TEST_CASE("print and parse round-trip") {
  Rng rng(22);
  for (int round = 0; round < 300; ++round) {
    auto model = testing::random_model(rng);
    auto e = testing::random_expr(rng, model, 4);
    auto text = dl::print(*e);
    REQUIRE_MESSAGE(dl::structurally_equal(*dl::parse_query(text), *e), text);
    REQUIRE(dl::print(*dl::parse_query(text)) == text);
  }
}

TEST_CASE("conjunction is order-insensitive") {
  Rng rng(23);
  for (int round = 0; round < 200; ++round) {
    auto model = testing::random_model(rng);
    auto s = testing::build_store(model, rng);
    auto a = testing::random_expr(rng, model, 3);
    auto b = testing::random_expr(rng, model, 3);
    REQUIRE(dl::evaluate(*dl::conjunction({a, b}), s) ==
            dl::evaluate(*dl::conjunction({b, a}), s));
  }
}

TEST_CASE("adding an object assertion never shrinks Some or Value results") {
  Rng rng(24);
  int checked = 0;
  for (int round = 0; round < 300; ++round) {
    auto model = testing::random_model(rng);
    if (model.properties.empty() || model.individuals.empty()) continue;
    auto s = testing::build_store(model, rng);
    dl::ExprPtr e;
    if (testing::chance(rng, 0.5)) {
      e = dl::value(testing::pick(rng, model.properties).id,
                    testing::pick(rng, model.individuals).first);
    } else {
      e = dl::some(testing::pick(rng, model.properties).id, testing::random_expr(rng, model, 3));
    }
    const auto before = dl::evaluate(*e, s);
    const auto& p = testing::pick(rng, model.properties);
    const auto& subj = testing::pick(rng, model.individuals).first;
    const auto& obj = testing::pick(rng, model.individuals).first;
    try {
      s.assert_object(p.id, subj, obj);
    } catch (const Error&) {
      continue;
    }
    const auto after = dl::evaluate(*e, s);
    REQUIRE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    ++checked;
  }
  CHECK(checked > 20);
}
