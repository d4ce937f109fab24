#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qcantor/cli.hpp"

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = qcantor::cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

}  // namespace

TEST_CASE("cli eta-digits json") {
  const auto r = run({"eta-digits", "--positions", "1..18", "--output", "json"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  const std::vector<std::string> expected{"0", "2", "0", "2", "0", "2", "0", "2", "0",
                                          "2", "0", "2", "0", "0", "0", "6", "6", "6"};
  CHECK(j["digits"].get<std::vector<std::string>>() == expected);
  CHECK(j["start"] == "1");
  CHECK(j["bases"][15] == "36");
}

TEST_CASE("cli expand") {
  const auto r = run({"expand", "--x", "1/4", "--N", "2"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["E0"] == "0");
  CHECK(j["digits"] == nlohmann::json::array({"0", "2"}));
  const auto csv = lines(run({"expand", "--x", "1/4", "--N", "2", "--output", "csv"}).out);
  CHECK(csv.front() == "n,digit,base");
  CHECK(csv.size() == 4);
}

TEST_CASE("cli params csv") {
  const auto r = run({"params", "--max-i", "4"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "i,n_i,ell_i,L_i,beta_i,K_i,m_i,card_I_i,dim_ratio");
  CHECK(rows[1].rfind("2,1,1,6,4,0,1,0,", 0) == 0);
  CHECK(rows[3].rfind("4,4,1,48,576,5,2,2,", 0) == 0);
  CHECK(r.out.find("\r\n") != std::string::npos);
}

TEST_CASE("cli verify-bounds") {
  const auto r = run({"verify-bounds", "--lemma", "k1", "--b", "2", "--n", "65536", "--eps", "1/8"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "lhs,rhs_bound,verdict,precondition_ok,precision_used,seconds");
  CHECK(rows[1].find(",TRUE,true,") != std::string::npos);
  CHECK(rows[1].back() == ',');
  const auto inconclusive = run({"--precision-cap", "8", "verify-bounds", "--lemma", "k1", "--b", "2", "--n",
                                 "65536", "--eps", "1/8"});
  CHECK(inconclusive.status == qcantor::cli::kBudgetExhausted);
  CHECK(inconclusive.out.find("INCONCLUSIVE") != std::string::npos);
}

TEST_CASE("cli transform reports diff positions") {
  const auto r = run({"transform", "--r", "1", "--s", "1/6", "--positions", "1..40"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const auto& p : j["diff"]) CHECK(std::stoi(p.get<std::string>()) <= 13);
  CHECK(j["digits"].size() == 40);
}

TEST_CASE("cli stats, discrepancy and segment") {
  auto r = run({"stats", "--source", "eta", "--block", "0,2", "--checkpoints", "10,100"});
  REQUIRE(r.status == 0);
  auto rows = lines(r.out);
  CHECK(rows[0] == "n,count,qnk,ratio_exact,ratio_decimal");
  CHECK(rows.size() == 3);

  r = run({"discrepancy", "--source", "rational:1/3", "--positions", "1..50"});
  REQUIRE(r.status == 0);
  CHECK(lines(r.out).size() == 2);

  r = run({"segment", "--source", "eta", "--i", "3", "--j", "1", "--block", "0"});
  REQUIRE(r.status == 0);
  rows = lines(r.out);
  CHECK(rows[1].rfind("3,1,13,18,1,3,13/12,", 0) == 0);
}

TEST_CASE("cli theta round trip through a file") {
  const std::string path = "cli_theta_sample.json";
  auto r = run({"--seed", "5", "--output-path", path, "theta-sample", "--count", "60"});
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  r = run({"theta-check", "--input", path});
  REQUIRE(r.status == 0);
  CHECK(lines(r.out)[1] == "13,72,true,");
  std::remove(path.c_str());

  r = run({"theta-check", "--source", "eta", "--positions", "13..20", "--output", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["contains"] == false);
  CHECK(j["first_violation"] == "16");
}

TEST_CASE("cli dim-ratio") {
  const auto r = run({"dim-ratio", "--i", "4,20"});
  REQUIRE(r.status == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].rfind("4,5,2,2,0.109", 0) == 0);
}

TEST_CASE("cli output is deterministic") {
  const std::vector<std::string> args{"--seed", "11", "theta-sample", "--count", "30"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> v{"verify-bounds", "--lemma", "bugeaud", "--b", "2", "--n", "100", "--eps", "1/4"};
  CHECK(run(v).out == run(v).out);
}

TEST_CASE("cli exit codes") {
  auto r = run({"expand", "--x", "1/0", "--N", "3"});
  CHECK(r.status == qcantor::cli::kMalformedRational);
  CHECK(nlohmann::json::parse(r.err)["error"] == "malformed_rational");

  r = run({"eta-digits", "--positions", "1..3", "--bogus"});
  CHECK(r.status == qcantor::cli::kUsage);

  r = run({"nonsense"});
  CHECK(r.status == qcantor::cli::kUsage);

  r = run({"eta-digits", "--positions", "5..2"});
  CHECK(r.status == qcantor::cli::kDomainError);
  const auto err = nlohmann::json::parse(r.err);
  CHECK(err["error"] == "domain");
  CHECK(err["message"].get<std::string>().find("positions") != std::string::npos);

  r = run({"--enumeration-budget", "10", "eta-digits", "--positions", "1..100"});
  CHECK(r.status == qcantor::cli::kBudgetExhausted);

  r = run({"dim-ratio", "--i", "2"});
  CHECK(r.status == qcantor::cli::kDomainError);

  r = run({"--help"});
  CHECK(r.status == 0);
  CHECK(r.out.find("verify-bounds") != std::string::npos);
}

TEST_CASE("csv quoting") {
  using qcantor::cli::csv_field;
  CHECK(csv_field("13/12") == "13/12");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
}
