#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "hodgelab/cli.hpp"

using namespace hodgelab;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("hodgelab_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(ParseCarrier, Examples) {
  using C = CarrierExpr;
  const C pair = C::sum({C::std_rep(), C::dual()});
  EXPECT_EQ(parse_carrier("wedge(4,sum(std,dual))"), C::wedge(4, pair));
  EXPECT_EQ(parse_carrier("pow(sum(std,dual),2)"), C::pow(pair, 2));
  EXPECT_EQ(parse_carrier(" tensor( 2 , std ) "), C::tensor(2, C::std_rep()));
  EXPECT_EQ(parse_carrier("prod(tensor(1,std),dual)"), C::prod({C::tensor(1, C::std_rep()), C::dual()}));
  EXPECT_EQ(to_string(parse_carrier("wedge(4,sum(std,dual))")), "wedge(4,sum(std,dual))");
}

TEST(ParseCarrier, ErrorPositions) {
  try {
    parse_carrier("wedge(4,std");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 12u);
  }
  try {
    parse_carrier("sum(std,\n  foo)");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
  }
  EXPECT_THROW(parse_carrier("std dual"), SyntaxError);
  EXPECT_THROW(parse_carrier("wedge(x,std)"), SyntaxError);
  EXPECT_THROW(parse_carrier(""), SyntaxError);
}

TEST(ParseCarrier, DegreeCap) {
  EXPECT_THROW(parse_carrier("tensor(65,std)"), DomainError);
  EXPECT_THROW(parse_carrier("tensor(64,tensor(64,tensor(64,tensor(64,std))))"), DomainError);
  EXPECT_NO_THROW(parse_carrier("tensor(4,std)", 4));
  EXPECT_THROW(parse_carrier("tensor(5,std)", 4), DomainError);
}

TEST(Run, BinomPasses) {
  Outcome o = invoke({"verify", "binom", "--n", "2"});
  EXPECT_EQ(o.code, 0);
  Json j = o.json();
  EXPECT_EQ(j["version"], "1");
  EXPECT_EQ(j["checks"].size(), 3u);
  for (const auto& c : j["checks"]) EXPECT_EQ(c["status"], "pass");
}

TEST(Run, WeilInvariants) {
  Outcome o = invoke({"invariants", "--group", "sl:4", "--carrier", "wedge(4,sum(std,dual))"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.json()["results"]["invariant_dim"], 3);
}

TEST(Run, ExpectationFailureGivesExitOne) {
  Outcome o = invoke({"invariants", "--group", "sl:4", "--carrier", "wedge(2,sum(std,dual))", "--expect-dim", "2"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.json()["checks"][1]["status"], "fail");
}

TEST(Run, Scenarios) {
  Outcome p = invoke({"scenario", "paranjape"});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.json()["results"]["cm_field"]["d"], -1);
  EXPECT_EQ(p.json()["results"]["lattice"]["description"], "U^2 + <-2>^2");
  Outcome i = invoke({"scenario", "ingalls"});
  EXPECT_EQ(i.code, 0);
  EXPECT_EQ(i.json()["results"]["cm_field"]["d"], -3);
}

TEST(Run, Galois) {
  Outcome o = invoke({"galois", "--m", "2", "--perms", "2,1", "--expect-count", "3"});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.json()["results"]["count"], 3);
  EXPECT_EQ(o.json()["results"]["subgroups"][1]["elements"], Json::array({"00", "11"}));
}

TEST(Run, UsageErrors) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({"invariants", "--group", "sl:4"}).code, 2);
  EXPECT_EQ(invoke({"invariants", "--group", "xx:4", "--carrier", "std"}).code, 2);
  Outcome o = invoke({"invariants", "--group", "sl:4", "--carrier", "wedge(4,std"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("column 12"), std::string::npos);
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(invoke({"invariants", "--group", "sl:4", "--carrier", "tensor(6,std)"}).code, 2);
  EXPECT_EQ(invoke({"clifford", "--space", "/nonexistent.json", "--omega2"}).code, 2);
}

TEST(Run, DeterministicReports) {
  const std::vector<std::string> args{"--no-timing", "invariants", "--group", "so:" + write_temp("id3.json", "[[1,0,0],[0,1,0],[0,0,1]]"),
                                      "--carrier", "tensor(4,std)", "--generators", "gram", "--basis"};
  Outcome a = invoke(args);
  Outcome b = invoke(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.json()["results"]["coverage"]["span_dim"], 3);
  EXPECT_FALSE(a.json().contains("timing"));
}

TEST(Run, OutFileDuplicatesReport) {
  const std::string path = (std::filesystem::temp_directory_path() / "hodgelab_test_out.json").string();
  Outcome o = invoke({"verify", "sum-identity", "--dimv", "3", "--out", path});
  EXPECT_EQ(o.code, 0);
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  EXPECT_EQ(s.str(), o.out);
}

TEST(Run, CliffordAndDescend) {
  const std::string space = write_temp("plane.json", R"({"gram": [[-2, 0], [0, -3]]})");
  Outcome c = invoke({"clifford", "--space", space, "--omega2", "--center", "--ks-embed", "--v0", "1,0", "--v", "0,1"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.json()["results"]["omega_squared"], "-6");
  EXPECT_EQ(c.json()["results"]["even_center_dim"], 2);

  const std::string structure = write_temp("gauss.json", R"({"d": -1, "J": [[0, -1], [1, 0]]})");
  const std::string psi = write_temp("psi.json", "[[2, 0], [0, 2]]");
  Outcome d = invoke({"descend", "--structure", structure, "--psi", psi, "--hermitian"});
  EXPECT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(d.json()["results"]["solution_space_dim"], 0);
  EXPECT_EQ(d.json()["results"]["phi"], Json::array({Json::array({"1"})}));
}

TEST(Run, DetQuotientAndSpecialize) {
  EXPECT_EQ(invoke({"verify", "det-quotient", "--n", "4", "--c", "2"}).code, 0);
  EXPECT_EQ(invoke({"verify", "specialize", "--n", "3", "--c", "1"}).code, 0);
  const std::string bad = write_temp("spec.json", R"({"gram": [[1,0,0],[0,1,0],[0,0,1]],
      "sub_basis": [[1,0,0],[0,1,0]], "complement_basis": [[0,0,1]], "x": [[1,0,0]]})");
  EXPECT_EQ(invoke({"verify", "specialize", "--input", bad}).code, 1);
}

TEST(Binary, StreamsAreSeparated) {
  const std::string out = (std::filesystem::temp_directory_path() / "hodgelab_bin_out.txt").string();
  const std::string err = (std::filesystem::temp_directory_path() / "hodgelab_bin_err.txt").string();
  const std::string cmd = std::string(HODGELAB_BINARY) + " scenario paranjape >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(status, 0);
  std::ifstream fo(out), fe(err);
  std::stringstream so, se;
  so << fo.rdbuf();
  se << fe.rdbuf();
  EXPECT_NO_THROW(Json::parse(so.str()));
  EXPECT_NE(se.str().find("[pass]"), std::string::npos);
}
