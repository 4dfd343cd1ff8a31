#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mutkit/cli.hpp"

using namespace mutkit;

namespace {

const std::string kFixtures = MUTKIT_FIXTURES;

std::string fx(const std::string& name) { return kFixtures + "/" + name; }

JobConfig job(std::string command, std::vector<std::string> inputs) {
  JobConfig c;
  c.command = std::move(command);
  c.inputs = std::move(inputs);
  c.write_report = false;
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("volume on the figure-eight") {
  const auto r = run(job("volume", {fx("figure_eight.tri"), fx("figure_eight.rep")}));
  CHECK(r.exit_code == 0);
  CHECK(r.report_text.find("2.029883212819") != std::string::npos);
  CHECK(r.report["status"] == "pass");
  CHECK(r.report["inputs"].size() == 2);
  CHECK(r.report["inputs"][0]["fnv1a"].get<std::string>().size() == 16);
}

TEST_CASE("solve-conjugator on the involution fixture") {
  const auto r = run(job("solve-conjugator", {fx("sanov_involution.mut")}));
  CHECK(r.exit_code == 0);
  const auto a = r.report["conjugator"]["A"].get<std::string>();
  CHECK(a.rfind("[[0,", 0) == 0);
  CHECK(a.find("[0,0],[0,0]") != std::string::npos);
  CHECK(r.report["conjugator"]["kind"] == "elliptic");
  CHECK(r.report["conjugator"]["certificate"]["sign"] == -1);
}

TEST_CASE("verify-mutation of a fixture against itself") {
  const auto r = run(job("verify-mutation", {fx("figure_eight.tri"), fx("figure_eight.rep"), fx("figure_eight.tri"),
                                             fx("figure_eight.rep")}));
  CHECK(r.exit_code == 0);
  CHECK(r.report["difference"].get<double>() == 0.0);
}

TEST_CASE("validation errors exit with 2") {
  auto r = run(job("validate", {fx("invalid/unknown_generator.pres")}));
  CHECK(r.exit_code == 2);
  REQUIRE(r.report["diagnostics"].size() == 1);
  CHECK(r.report["diagnostics"][0]["message"].get<std::string>().find("'x'") != std::string::npos);

  r = run(job("validate", {fx("figure_eight.tri")}));
  CHECK(r.exit_code == 0);
  CHECK(r.report["diagnostics"].empty());

  r = run(job("volume", {fx("invalid/non_involutive.tri"), fx("figure_eight.rep")}));
  CHECK(r.exit_code == 2);
  CHECK(r.report["status"] == "invalid");

  r = run(job("volume", {fx("figure_eight.tri")}));
  CHECK(r.exit_code == 2);

  r = run(job("no-such-command", {}));
  CHECK(r.exit_code == 2);
}

TEST_CASE("check failures exit with 1") {
  // A coset sample that lies in H keeps side 1 in place, so condition (ii) fails.
  const auto path = std::filesystem::temp_directory_path() / "mutkit-bad-coset.mut";
  {
    std::ofstream out(path, std::ios::binary);
    out << slurp(fx("sanov_involution.mut")) << "coset1 a b\n";
  }
  auto c = job("check-maskit", {path.string()});
  c.max_word_length = 4;
  const auto r = run(c);
  CHECK(r.exit_code == 1);
  CHECK(r.report["status"] == "fail");
  bool witnessed = false;
  for (const auto& cond : r.report["maskit"]["conditions"]) {
    if (cond["name"] == "ii") {
      CHECK(cond["passes"] == false);
      witnessed = cond.contains("witness");
    }
  }
  CHECK(witnessed);
  std::filesystem::remove(path);
}

TEST_CASE("lift policy and --force") {
  auto c = job("solve-conjugator", {fx("sanov_involution.mut")});
  c.strict_sl_lift = true;
  auto s = run(c);
  CHECK(s.exit_code == 2);
  CHECK(s.report["error"].get<std::string>().find("--force") != std::string::npos);
  c.force = true;
  s = run(c);
  CHECK(s.exit_code == 0);
}

TEST_CASE("check-maskit side actions on the fixtures") {
  auto c = job("check-maskit", {fx("sanov_involution.mut")});
  c.max_word_length = 5;
  auto r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["maskit"]["side_action"] == "swaps");
  CHECK(r.report["coset_samples"]["G1-H"] == "supplied");

  c.inputs = {fx("sanov_negative_inverse.mut")};
  r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["maskit"]["side_action"] == "preserves");

  c.inputs = {fx("hnn_circle.mut")};
  r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["maskit"]["case"] == "hnn");
}

TEST_CASE("build-mutant and cover-check") {
  auto r = run(job("build-mutant", {fx("sanov_swap.mut")}));
  CHECK(r.exit_code == 0);
  CHECK(r.report["mutant"].get<std::string>().rfind("% mutkit-representation 1", 0) == 0);
  CHECK(r.report["cover"]["degree"] == 4);

  auto c = job("cover-check", {fx("figure_eight.tri"), fx("figure_eight.rep")});
  c.degree = 3;
  r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["cover"]["degree"] == 3);

  c.mutation = fx("sanov_involution.mut");
  r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report["cover"]["degree"] == 4);
}

TEST_CASE("classify") {
  const auto r = run(job("classify", {fx("sanov_swap.mut")}));
  CHECK(r.exit_code == 0);
  CHECK(r.report["generators"]["a"]["kind"] == "parabolic");
  CHECK(r.report["generators"]["e"]["kind"] == "elliptic");
  CHECK(r.report["conjugator_class"]["kind"] == "elliptic");
}

TEST_CASE("reports are byte-identical across runs and named by digest") {
  const auto dir = std::filesystem::temp_directory_path() / "mutkit-cli-test";
  std::filesystem::remove_all(dir);
  auto c = job("check-maskit", {fx("sanov_swap.mut")});
  c.max_word_length = 4;
  c.write_report = true;
  c.out_dir = dir.string();
  c.seed = 3;
  const auto a = run(c);
  const auto b = run(c);
  CHECK(a.report_text == b.report_text);
  CHECK(a.report_path == b.report_path);
  CHECK(slurp(a.report_path) == a.report_text);
  CHECK(a.report_path.find("report-" + fnv1a_hex(a.report_text) + ".json") != std::string::npos);
  CHECK(a.report["seed"] == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
