#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <string>
#include <vector>

#include "octak/report.hpp"
#include "octak/wreath.hpp"

using namespace octak;

namespace {

json parse_out(const CliResult& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE("matrix text parses and prints canonically") {
  FieldDescriptor q = FieldDescriptor::rationals();

  OMatrix m = parse_omatrix(q, "[[1/2,0],[1/2,1]]");
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m.at(0, 0) == FieldElement(q, make_rat(1, 2), Rat(0)));
  CHECK(to_string(m) == "[[1/2,0],[1/2,1]]");

  // Whitespace around brackets and after commas is tolerated.
  CHECK(parse_omatrix(q, "[ [1/2, 0],[1/2,1] ]") == m);

  FieldDescriptor gi = FieldDescriptor::gaussian();
  OMatrix g = parse_omatrix(gi, "[[3/5+4/5*i]]");
  CHECK(to_string(g) == "[[3/5+4/5*i]]");

  // Entry errors carry the row/entry position and the cell's column.
  try {
    parse_omatrix(q, "[[1/2,oops]]");
    FAIL("expected parse_error");
  } catch (const parse_error& e) {
    CHECK(std::string(e.what()).find("matrix entry (row 1, entry 2)") !=
          std::string::npos);
    CHECK(e.line == 1);
    CHECK(e.col >= 7);
  }

  CHECK_THROWS_AS(parse_omatrix(q, "[x]"), parse_error);
  CHECK_THROWS_AS(parse_omatrix(q, "[[1/2],[1/2]"), parse_error);
  CHECK_THROWS_AS(parse_omatrix(q, "[[1,0],[1]]"), parse_error);
  CHECK_THROWS_AS(parse_omatrix(q, "[[1]]extra"), parse_error);
  CHECK_THROWS_AS(parse_omatrix(q, "[[]]"), parse_error);

  // Octahedron bound violations surface from the matrix constructor, not the
  // parser.
  CHECK_THROWS_AS(parse_omatrix(q, "[[2]]"), error);
  CHECK_THROWS_WITH(parse_omatrix(q, "[[2/3],[1/2]]"),
                    Catch::Matchers::ContainsSubstring("exceeds the unit octahedron"));
}

TEST_CASE("sign pattern text roundtrips") {
  SignMatrix p = parse_sign_pattern("+0/++");
  CHECK(p == standard_p_pattern());
  CHECK(pattern_to_text(p) == "+0/++");
  CHECK(parse_sign_pattern("0") == SignMatrix(1, 1));
  CHECK_THROWS_AS(parse_sign_pattern("+0/x+"), parse_error);
  CHECK_THROWS_AS(parse_sign_pattern("+0/+"), parse_error);
}

TEST_CASE("JSON rendering is schema-tagged, sorted and newline-terminated") {
  CommandReport r;
  r.command = "demo";
  r.inputs = {{"zeta", 1}, {"alpha", "x"}};
  r.payload = {{"value", 7}};
  r.summary = "numbers";

  std::string out = render_json(r);
  CHECK(out == render_json(r));  // byte determinism
  CHECK(out.back() == '\n');

  json doc = json::parse(out);
  CHECK(doc["schema"] == "octak/1");
  CHECK(doc["status"] == "pass");
  CHECK(doc["command"] == "demo");
  CHECK(doc["payload"]["value"] == 7);

  // Keys are emitted in sorted order at every level.
  size_t c = out.find("\"command\"");
  size_t i = out.find("\"inputs\"");
  size_t p = out.find("\"payload\"");
  size_t s = out.find("\"schema\"");
  size_t st = out.find("\"status\"");
  size_t su = out.find("\"summary\"");
  CHECK(c < i);
  CHECK(i < p);
  CHECK(p < s);
  CHECK(s < st);
  CHECK(st < su);
  CHECK(out.find("\"alpha\"") < out.find("\"zeta\""));

  // Two-space indentation.
  CHECK(out.find("{\n  \"command\"") == 0);
}

TEST_CASE("markdown rendering shows status, inputs, body and summary") {
  CommandReport r;
  r.command = "demo";
  r.inputs = {{"n", 3}, {"name", "x"}};
  r.status = "fail";
  r.summary = "the end";
  r.markdown_body = "| a |\n| --- |\n| 1 |\n";

  std::string out = render_markdown(r);
  CHECK(out.find("# octak demo\n") == 0);
  CHECK(out.find("- status: fail\n") != std::string::npos);
  CHECK(out.find("- n: 3\n") != std::string::npos);
  CHECK(out.find("- name: x\n") != std::string::npos);
  CHECK(out.find("| a |") != std::string::npos);
  CHECK(out.rfind("the end\n") == out.size() - 8);

  CHECK(exit_code_for(CommandReport{}) == 0);
  CommandReport f;
  f.status = "fail";
  CHECK(exit_code_for(f) == 1);
  CommandReport u;
  u.status = "undecided";
  CHECK(exit_code_for(u) == 3);
}

TEST_CASE("cli: class-group command passes with the frozen payload") {
  CliResult r = run_cli({"k0-finf"});
  CHECK(r.exit_code == 0);
  CHECK(r.err.empty());

  json doc = parse_out(r);
  CHECK(doc["schema"] == "octak/1");
  CHECK(doc["status"] == "pass");
  CHECK(doc["command"] == "k0-finf");
  CHECK(doc["payload"] == json({{"group", "0"}, {"relations", 2}}));

  // Byte determinism across invocations.
  CliResult again = run_cli({"k0-finf"});
  CHECK(again.out == r.out);
}

TEST_CASE("cli: cofibration checks report certificates and refusals") {
  CliResult pass = run_cli(
      {"check-cofib", "--field", "Q", "--matrix", "[[0,1],[-1,0]]"});
  CHECK(pass.exit_code == 0);
  json doc = parse_out(pass);
  CHECK(doc["status"] == "pass");
  CHECK(doc["payload"]["monomorphism"] == true);
  CHECK(doc["payload"]["certificate"]["col_to_row"] == json::array({1, 0}));
  CHECK(doc["payload"]["certificate"]["units"] == json::array({"-1", "1"}));
  CHECK(doc["inputs"]["matrix"] == "[[0,1],[-1,0]]");

  // The halved diagonal column: a monomorphism, but no unit entry.
  CliResult fail = run_cli({"check-cofib", "--matrix", "[[1/2],[1/2]]"});
  CHECK(fail.exit_code == 1);
  doc = parse_out(fail);
  CHECK(doc["status"] == "fail");
  CHECK(doc["payload"]["monomorphism"] == true);
  CHECK(doc["payload"]["reason"] == "NonUnitEntry");
  CHECK(doc["payload"]["row"] == 0);
  CHECK(doc["payload"]["col"] == 0);

  // Markdown rendering through the pre-scanned global flag, in either
  // position.
  CliResult md = run_cli({"--md", "check-cofib", "--matrix", "[[1]]"});
  CHECK(md.exit_code == 0);
  CHECK(md.out.find("# octak check-cofib\n") == 0);
  CliResult md2 = run_cli({"check-cofib", "--matrix", "[[1]]", "--md"});
  CHECK(md2.out == md.out);
}

TEST_CASE("cli: splitting and pushout") {
  CliResult split = run_cli(
      {"split", "--matrix", "[[0,1],[1,0],[0,0]]"});
  CHECK(split.exit_code == 0);
  json doc = parse_out(split);
  CHECK(doc["payload"]["coker_rank"] == 1);
  std::string iso = doc["payload"]["iso"];
  OMatrix phi = parse_omatrix(FieldDescriptor::rationals(), iso);
  CHECK(phi.rows() == 3);
  CHECK(is_automorphism(phi).has_value());

  CliResult split_bad = run_cli({"split", "--matrix", "[[1/2],[1/2]]"});
  CHECK(split_bad.exit_code == 1);
  CHECK(parse_out(split_bad)["payload"]["reason"] == "NonUnitEntry");

  CliResult push = run_cli({"pushout", "--cofib", "[[1,0],[0,1],[0,0]]",
                            "--map", "[[1/2,1/2]]"});
  CHECK(push.exit_code == 0);
  doc = parse_out(push);
  CHECK(doc["payload"]["preserved"] == true);
  CHECK(doc["payload"]["coker_rank_before"] == 1);
  CHECK(doc["payload"]["coker_rank_after"] == 1);

  // A non-cofibration first argument fails with its refusal.
  CliResult push_bad = run_cli(
      {"pushout", "--cofib", "[[1/2],[1/2]]", "--map", "[[1]]"});
  CHECK(push_bad.exit_code == 1);
  CHECK(parse_out(push_bad)["summary"].get<std::string>().find(
            "the first matrix is not a cofibration") == 0);

  // A domain mismatch is a computation error: fail report with a witness.
  CliResult push_dim = run_cli(
      {"pushout", "--cofib", "[[1],[0]]", "--map", "[[1,0],[0,1]]"});
  CHECK(push_dim.exit_code == 1);
  doc = parse_out(push_dim);
  CHECK(doc["status"] == "fail");
  CHECK(doc["payload"].contains("message"));
}

TEST_CASE("cli: group commands") {
  CliResult glab = run_cli({"gl-ab", "--n", "3", "--w", "2"});
  CHECK(glab.exit_code == 0);
  json doc = parse_out(glab);
  CHECK(doc["payload"]["abelianization"] == "Z/2 + Z/2");
  CHECK(doc["payload"]["group_order"] == "48");

  CliResult glab4 = run_cli({"gl-ab", "--n", "2", "--w", "4"});
  CHECK(parse_out(glab4)["payload"]["abelianization"] == "Z/2 + Z/4");

  // The derived subgroup in low rank is not perfect; the report says so and
  // the numbers match a direct computation.
  CliResult perf = run_cli({"perfect", "--n", "4", "--w", "2"});
  doc = parse_out(perf);
  std::vector<WreathElement> g = enumerate_group(2, 4);
  std::vector<WreathElement> d = derived_subgroup(g);
  bool perfect = is_perfect_group(d);
  CHECK(doc["payload"]["group_order"] == std::to_string(g.size()));
  CHECK(doc["payload"]["derived_order"] == std::to_string(d.size()));
  CHECK(doc["payload"]["derived_perfect"] == perfect);
  CHECK(perf.exit_code == (perfect ? 0 : 1));
  CHECK(doc["status"] == (perfect ? "pass" : "fail"));

  CliResult comm = run_cli({"commutator-table", "--n", "3"});
  CHECK(comm.exit_code == 0);
  doc = parse_out(comm);
  CHECK(doc["payload"]["mismatches"] == 0);
  CHECK(doc["payload"]["checks"] ==
        (3 - 2) * (3 - 1) * (2 - 1) + (3 - 2) * (3 - 1) * (4 - 1));
  CHECK(doc["payload"]["cases"].contains("<= -2"));
  CHECK(doc["payload"]["cases"].contains(">= 3"));

  CliResult comm_md = run_cli({"commutator-table", "--n", "3", "--md"});
  CHECK(comm_md.out.find("| j - i | checks (w=2) |") != std::string::npos);
}

TEST_CASE("cli: residue commands") {
  CliResult faces2 = run_cli({"faces", "--n", "2"});
  CHECK(faces2.exit_code == 0);
  json doc = parse_out(faces2);
  CHECK(doc["payload"]["count"] == 9);
  CHECK(doc["payload"]["faces"].size() == 9);
  CHECK(doc["payload"]["faces"][0] == "--");
  CHECK(doc["payload"]["faces"][8] == "++");

  // Large censuses drop the explicit list but keep the count.
  CliResult faces12 = run_cli({"faces", "--n", "12"});
  doc = parse_out(faces12);
  CHECK(doc["payload"]["count"] == 531441);
  CHECK_FALSE(doc["payload"].contains("faces"));

  CliResult reduce = run_cli({"k0-reduce", "--pattern", "+0/++"});
  CHECK(reduce.exit_code == 0);
  doc = parse_out(reduce);
  CHECK(doc["payload"]["rank_one_count"] == 2);
  CHECK(doc["payload"]["input"] == "+0/++");
  CHECK(doc["payload"]["steps"].size() == 2);
  CHECK(doc["payload"]["steps"][0]["kind"] == "peel");

  CliResult reduce_md = run_cli({"k0-reduce", "--pattern", "+0/++", "--md"});
  CHECK(reduce_md.out.find("rank-one summands: 2") != std::string::npos);

  // A non-idempotent pattern is a verification failure, not a usage error.
  CliResult swap = run_cli({"k0-reduce", "--pattern", "0+/+0"});
  CHECK(swap.exit_code == 1);
  doc = parse_out(swap);
  CHECK(doc["status"] == "fail");
  CHECK(doc["payload"]["message"].get<std::string>().find("idempotent") !=
        std::string::npos);
}

TEST_CASE("cli: K-theory commands") {
  CliResult kq = run_cli({"k-groups", "--field", "Q"});
  CHECK(kq.exit_code == 0);
  json doc = parse_out(kq);
  CHECK(doc["payload"]["groups"]["K0"]["group"] == "Z");
  CHECK(doc["payload"]["groups"]["K1"]["group"] == "Z/2 + Z/2");
  CHECK(doc["payload"]["groups"]["K2"]["group"] == "[bound] 0");
  CHECK(doc["payload"]["groups"]["K2"]["exact"] == false);
  CHECK(doc["payload"]["groups"]["K2"].contains("note"));
  CHECK(doc["payload"]["unit_torsion_order"] == 2);
  CHECK(doc["payload"]["unit_free_rank"] == 0);

  CliResult kgi = run_cli({"k-groups", "--field", "Q(i)"});
  doc = parse_out(kgi);
  CHECK(doc["payload"]["groups"]["K1"]["group"] == "Z^w + Z/2 + Z/4");
  CHECK(doc["payload"]["groups"]["K2"]["group"] == "[bound] (Z/2)^w");
  CHECK(doc["payload"]["unit_free_rank"] == "omega");
  CHECK(doc["payload"]["unit_torsion_order"] == 4);

  CliResult ah = run_cli({"ah-table", "--w", "2"});
  doc = parse_out(ah);
  CHECK(doc["payload"]["w"] == 2);
  CHECK(doc["payload"]["wprime"] == 2);
  REQUIRE(doc["payload"]["rows"].size() == 3);
  CHECK(doc["payload"]["rows"][0]["q"] == 2);
  CHECK(doc["payload"]["rows"][2]["q"] == 0);
  CHECK(doc["payload"]["rows"][2]["cells"] == json::array({"Z", "Z/2", "0"}));

  CliResult ah_md = run_cli({"ah-table", "--w", "4", "--md"});
  CHECK(ah_md.exit_code == 0);
  CHECK(ah_md.out.find("| 0 | Z | Z/4 | 0 |") != std::string::npos);
  CHECK(ah_md.out.find("| 2 | Z/2 | Z/2 | Z/2 |") != std::string::npos);

  CliResult pyth = run_cli({"pythag-factor", "--x", "3/5+4/5*i"});
  CHECK(pyth.exit_code == 0);
  doc = parse_out(pyth);
  CHECK(doc["payload"]["unit"] == "1");
  REQUIRE(doc["payload"]["factors"].size() == 1);
  CHECK(doc["payload"]["factors"][0]["prime"] == "2+1*i");
  CHECK(doc["payload"]["factors"][0]["exponent"] == 1);

  // A norm != 1 element is a verification failure.
  CliResult pyth_bad = run_cli({"pythag-factor", "--x", "1/2+1/2*i"});
  CHECK(pyth_bad.exit_code == 1);
  CHECK(parse_out(pyth_bad)["status"] == "fail");
}

TEST_CASE("cli: staircase census command") {
  CliResult sc = run_cli({"sconstr-count", "--n", "2", "--rank", "2"});
  CHECK(sc.exit_code == 0);
  json doc = parse_out(sc);
  CHECK(doc["payload"]["modules"] == "17");
  CHECK(doc["payload"]["esets"] == "17");
  CHECK(doc["payload"]["agree"] == true);
  CHECK(doc["payload"]["samples_validated"] == 17);

  CliResult sc4 = run_cli(
      {"sconstr-count", "--n", "1", "--rank", "2", "--w", "4", "--md"});
  CHECK(sc4.exit_code == 0);
  CHECK(sc4.out.find("| free modules | 3 |") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2 with diagnostics on stderr") {
  // No subcommand.
  CliResult none = run_cli({});
  CHECK(none.exit_code == 2);
  CHECK(none.out.empty());
  CHECK(none.err.find("usage error:") == 0);

  // Unknown subcommand, missing required option, rejected option value.
  CHECK(run_cli({"frobnicate"}).exit_code == 2);
  CHECK(run_cli({"check-cofib"}).exit_code == 2);
  CHECK(run_cli({"gl-ab", "--n", "2", "--w", "3"}).exit_code == 2);
  CHECK(run_cli({"commutator-table", "--n", "2"}).exit_code == 2);
  CHECK(run_cli({"k-groups", "--max-degree", "3"}).exit_code == 2);

  // Malformed matrix and field texts surface with positions.
  CliResult bad_matrix = run_cli({"check-cofib", "--matrix", "[[oops]]"});
  CHECK(bad_matrix.exit_code == 2);
  CHECK(bad_matrix.err.find("usage error:") == 0);
  CHECK(bad_matrix.err.find("row 1, entry 1") != std::string::npos);
  CHECK(bad_matrix.err.find("line 1") != std::string::npos);

  CliResult bad_field = run_cli(
      {"check-cofib", "--field", "Q(sqrt(banana))", "--matrix", "[[1]]"});
  CHECK(bad_field.exit_code == 2);

  CliResult bad_pattern = run_cli({"k0-reduce", "--pattern", "+0/*+"});
  CHECK(bad_pattern.exit_code == 2);

  // Census budgets are usage limits, not verification failures.
  CliResult too_big = run_cli({"faces", "--n", "13"});
  CHECK(too_big.exit_code == 2);
  CHECK(too_big.err.find("usage error:") == 0);

  // Help is not an error.
  CliResult help = run_cli({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("octak") != std::string::npos);
  CHECK(help.err.empty());
}

TEST_CASE("cli: precision exhaustion yields an undecided report") {
  // A Gaussian entry of irrational norm forces interval refinement; capping
  // the refinement below its starting precision leaves the comparison open.
  setenv("OCTAK_MAX_BITS", "8", 1);
  CliResult r = run_cli({"check-cofib", "--field", "Q(i)",
                         "--matrix", "[[1/2+1/3*i]]"});
  unsetenv("OCTAK_MAX_BITS");

  CHECK(r.exit_code == 3);
  json doc = parse_out(r);
  CHECK(doc["status"] == "undecided");
  CHECK(doc["payload"]["bits"].get<long>() >= 8);
  CHECK(doc["summary"].get<std::string>().find("undecided:") == 0);

  // With the default cap the same comparison resolves: the entry is a
  // monomorphism column but not a unit, so the check fails normally.
  CliResult resolved = run_cli({"check-cofib", "--field", "Q(i)",
                                "--matrix", "[[1/2+1/3*i]]"});
  CHECK(resolved.exit_code == 1);
  CHECK(parse_out(resolved)["payload"]["reason"] == "NonUnitEntry");
}
