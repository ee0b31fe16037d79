#include <sstream>

#include "doctest.h"
#include "dynmatch/stream.hpp"

using namespace dynmatch;

TEST_CASE("basic insert/delete lines") {
  const UpdateStream s = parse_stream(std::string("+ 0 1\n- 0 1\n"));
  REQUIRE(s.events.size() == 2);
  CHECK(s.events[0] == UpdateEvent{UpdateKind::Insert, Edge(0, 1)});
  CHECK(s.events[1] == UpdateEvent{UpdateKind::Delete, Edge(0, 1)});
  CHECK(s.vertex_count == 2);
  CHECK_FALSE(s.had_header);
}

TEST_CASE("self-loop is a parse error with a line number") {
  try {
    parse_stream(std::string("+ 0 1\n+ 3 3\n"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("empty input gives an empty sequence") {
  const UpdateStream s = parse_stream(std::string(""));
  CHECK(s.events.empty());
  CHECK(s.vertex_count == 0);
}

TEST_CASE("comments and blank lines are skipped") {
  const UpdateStream s =
      parse_stream(std::string("# a comment\n\n+ 2 5\n  # indented comment\n- 5 2\n"));
  REQUIRE(s.events.size() == 2);
  CHECK(s.vertex_count == 6);
}

TEST_CASE("header fixes the vertex count") {
  const UpdateStream s = parse_stream(std::string("n 100\n+ 0 1\n"));
  CHECK(s.had_header);
  CHECK(s.vertex_count == 100);
}

TEST_CASE("malformed lines fail with their line number") {
  CHECK_THROWS_AS(parse_stream(std::string("* 0 1\n")), ParseError);
  CHECK_THROWS_AS(parse_stream(std::string("+ 0\n")), ParseError);
  CHECK_THROWS_AS(parse_stream(std::string("+ 0 x\n")), ParseError);
  CHECK_THROWS_AS(parse_stream(std::string("+ 0 1 2\n")), ParseError);
}

TEST_CASE("write/parse round trip") {
  UpdateStream s;
  s.vertex_count = 9;
  s.had_header = true;
  s.events = {{UpdateKind::Insert, Edge(0, 8)},
              {UpdateKind::Insert, Edge(3, 4)},
              {UpdateKind::Delete, Edge(8, 0)}};
  std::ostringstream out;
  write_stream(out, s);
  const UpdateStream back = parse_stream(out.str());
  CHECK(back.vertex_count == 9);
  CHECK(back.events == s.events);
}
