#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "hypsign/io.hpp"

using namespace hypsign;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(HYPSIGN_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hypsign_cli_test_" + name);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("classify --d banana").code == 2);
  CHECK(run("search --sp ++----+ --case 0,3").code == 2);
  CHECK(run("trace --roots 1,2,3").code == 2);
  CHECK(run("compare /nonexistent/table.json").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("verify-certs exit code reflects the audit") {
  Run text = run("verify-certs");
  std::size_t fails = 0;
  for (std::size_t pos = 0; (pos = text.out.find("\nFAIL  ", pos)) != std::string::npos; ++pos) ++fails;
  if (text.out.rfind("FAIL  ", 0) == 0) ++fails;
  CHECK(text.code == (fails == 0 ? 0 : 1));
  CHECK(text.out.find(std::to_string(builtin_certificates().size()) + " certificates:") != std::string::npos);

  Run json = run("verify-certs --format json");
  Json doc = Json::parse(json.out);
  CHECK(doc["count"] == builtin_certificates().size());
  CHECK(doc["failed"] == fails);
  CHECK(json.code == text.code);
}

TEST_CASE("a corrupted certificate database names the certificate") {
  std::vector<Certificate> good{builtin_certificate("s151-040"), builtin_certificate("s421-004")};
  auto good_path = temp_file("good.json");
  write_file(good_path, certificates_to_json(good).dump());
  Run ok = run("verify-certs --db " + good_path.string());
  CHECK(ok.code == 0);
  CHECK(ok.out.find("2 certificates: all pass") != std::string::npos);

  good[1].printed[2] = "11286";
  auto bad_path = temp_file("bad.json");
  write_file(bad_path, certificates_to_json(good).dump());
  Run bad = run("verify-certs --db " + bad_path.string());
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL  s421-004") != std::string::npos);
}

TEST_CASE("export-certs writes a readable database") {
  auto path = temp_file("export.json");
  CHECK(run("export-certs --out " + path.string()).code == 0);
  std::ifstream in(path);
  auto certs = certificates_from_json(Json::parse(in));
  CHECK(certs.size() == builtin_certificates().size());
}

TEST_CASE("search prints the seed and a verified witness") {
  Run r = run("search --sp ++---++ --case 2,0,2 --budget 20000 --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("seed: 7") != std::string::npos);
  CHECK(r.out.find("verified exactly") != std::string::npos);

  Run j = run("search --sp ++---++ --case 2,0,2 --budget 20000 --seed 7 --format json");
  Json doc = Json::parse(j.out);
  CHECK(doc["status"] == "witness");
  auto roots = witness_roots_from_json(doc);
  CHECK(verify_witness(RootConfiguration(roots), sigma(2, 3, 2), InterleavingCase{{2, 0, 2}}));

  Run env = run("search --sp ++---++ --case 2,0,2 --budget 20000 --format json", "HYPSIGN_SEED=7");
  CHECK(Json::parse(env.out) == doc);

  Run none = run("search --sp +-----+ --case 1,3,0 --budget 500");
  CHECK(none.code == 1);
  CHECK(none.out.find("evidence, not a proof") != std::string::npos);
}

TEST_CASE("classify output re-ingests through compare") {
  auto path = temp_file("table.json");
  Run r = run("classify --d 4 --c 2 --budget 2000 --seed 3 --format json --out " + path.string());
  CHECK((r.code == 0 || r.code == 1));
  CHECK(r.out.find("seed: 3") != std::string::npos);
  CHECK(r.out.find("evidence, not a proof") != std::string::npos);
  Run cmp = run("compare " + path.string());
  CHECK(cmp.code == r.code);
  Run cmp_json = run("compare --format json " + path.string());
  Json diff = Json::parse(cmp_json.out);
  CHECK(diff["empty"] == (r.code == 0));

  std::ifstream in(path);
  Json table = Json::parse(in);
  CHECK(table["d"] == 4);
  Run again = run("classify --d 4 --c 2 --budget 2000 --seed 3 --format json");
  CHECK(Json::parse(again.out) == table);
}

TEST_CASE("classify renders markdown and csv") {
  Run md = run("classify --d 4 --c 1 --budget 500");
  CHECK(md.out.find("| SP |") != std::string::npos);
  Run csv = run("classify --d 4 --c 1 --budget 500 --format csv");
  CHECK(csv.out.find("sp,case,status,samples_used,witness_roots") != std::string::npos);
}

TEST_CASE("without the filter excluded cells are searched and reported none") {
  Run r = run("classify --d 4 --c 2 --budget 500 --format json --no-theorem-filter");
  Json t = Json::parse(r.out);
  bool any_excluded = false;
  for (const auto& cell : t["cells"]) any_excluded = any_excluded || cell["status"] == "excluded";
  CHECK(!any_excluded);
  CHECK(t["theorem_filter"] == false);
}

TEST_CASE("trace text and JSON round trip") {
  Run list = run("trace --list-steps");
  CHECK(list.code == 0);
  CHECK(list.out.find("s241.pt") != std::string::npos);

  std::string roots = "--roots=0.0010005,-0.3,-0.4,-1,1.01,-1.02";
  Run text = run("trace " + roots + " --step s241.pt --t-max 2");
  CHECK(text.code == 0);
  CHECK(text.out.find("step s241.pt") != std::string::npos);

  Run j = run("trace " + roots + " --step s241.pt --t-max 2 --format json");
  REQUIRE(j.code == 0);
  auto path = temp_file("trace.json");
  write_file(path, j.out);
  Run again = run("trace --witness-file " + path.string() + " --format json");
  CHECK(again.code == 0);
  CHECK(Json::parse(again.out) == Json::parse(j.out));

  Run first = run("trace " + roots + " --step s241.pt --t-max 2 --until-first-event --format json");
  Json fj = Json::parse(first.out);
  CHECK(fj["input"]["stop"] == "first-event");
}

TEST_CASE("proofcheck passes for all families") {
  Run r = run("proofcheck --family all --samples 1000 --seed 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("all checks pass") != std::string::npos);
  CHECK(r.out.find("seed: 5") != std::string::npos);
  Run j = run("proofcheck --family F --samples 200 --format json");
  Json doc = Json::parse(j.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["identities"].size() == 2);
  Run wide = run("proofcheck --family F --samples 2000 --region \"0<A<B\"");
  CHECK(wide.code == 1);
  CHECK(wide.out.find("counterexample") != std::string::npos);
  CHECK(run("proofcheck --family nope").code == 2);
}
