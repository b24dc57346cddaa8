#include <doctest.h>

#include <sstream>

#include "ftnorm/cli.hpp"
#include "ftnorm/errors.hpp"
#include "ftnorm/system_io.hpp"

using namespace ftn;

TEST_CASE("parse_system accepts the minimal state-space document") {
  const SystemFile sys = parse_system(
      R"({"kind":"state_space","time_domain":"discrete","A":[[0.5]],"B":[[1]],"C":[[1]],"D":[[0]]})");
  CHECK(sys.kind == SystemKind::kStateSpace);
  CHECK(sys.time_domain == TimeDomain::kDiscrete);
  CHECK(sys.a(0, 0) == 0.5);
  CHECK(sys.b(0, 0) == 1.0);
  CHECK(sys.d(0, 0) == 0.0);
}

TEST_CASE("parse_system names the missing required field") {
  CHECK_THROWS_WITH_AS(
      parse_system(R"({"kind":"state_space","B":[[1]],"C":[[1]]})"),
      doctest::Contains("\"A\""), InvalidInputError);
}

TEST_CASE("descriptor E defaults to the identity") {
  const SystemFile sys = parse_system(R"({"kind":"descriptor","A":[[0.0,1.0],[0.0,0.0]]})");
  CHECK(sys.kind == SystemKind::kDescriptor);
  CHECK(sys.e.isIdentity(0.0));
  CHECK(!sys.has_transfer_wrappers);
}

TEST_CASE("parse_system rejects malformed documents") {
  CHECK_THROWS_AS(parse_system("not json at all"), InvalidInputError);
  CHECK_THROWS_AS(parse_system(R"({"kind":"other","A":[[1]]})"), InvalidInputError);
  CHECK_THROWS_AS(parse_system(R"({"kind":"state_space","A":[[1]],"B":[[1]],"C":[[1]],"X":1})"),
                  InvalidInputError);
  // ragged rows
  CHECK_THROWS_AS(parse_system(R"({"kind":"descriptor","A":[[1,2],[3]]})"), InvalidInputError);
  // dimension mismatch
  CHECK_THROWS_AS(
      parse_system(R"({"kind":"state_space","A":[[1,0],[0,1]],"B":[[1]],"C":[[1,0]]})"),
      InvalidInputError);
  // non-square A
  CHECK_THROWS_AS(parse_system(R"({"kind":"descriptor","A":[[1,0]]})"), InvalidInputError);
  // D on a descriptor
  CHECK_THROWS_AS(parse_system(R"({"kind":"descriptor","A":[[1]],"D":[[1]]})"),
                  InvalidInputError);
  // B without C
  CHECK_THROWS_AS(parse_system(R"({"kind":"descriptor","A":[[1]],"B":[[1]]})"),
                  InvalidInputError);
  // non-finite entry
  CHECK_THROWS_AS(parse_system(R"({"kind":"descriptor","A":[[1e999]]})"), InvalidInputError);
}

TEST_CASE("run_cli maps error classes onto exit codes") {
  std::ostringstream out, err;

  SUBCASE("missing subcommand is an input error") {
    CHECK(run_cli({}, out, err) == 3);
  }

  SUBCASE("unreadable system file is an input error") {
    CHECK(run_cli({"info", "--system", "/nonexistent/x.json"}, out, err) == 3);
  }

  SUBCASE("unknown flag is an input error") {
    CHECK(run_cli({"norm", "--frobnicate"}, out, err) == 3);
  }

  SUBCASE("help exits cleanly") {
    CHECK(run_cli({"--help"}, out, err) == 0);
    CHECK(out.str().find("norm") != std::string::npos);
  }
}
