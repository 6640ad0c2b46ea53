#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "cache/file_store.hpp"
#include "mgr/mgr.h"
#include "report/report.hpp"

using namespace mgr;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("mgr_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

IntMatrix sample() {
  IntMatrix m(3, std::vector<Int>(4));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = Int(i * 7 - j * 5);
  m[2][3] = Int("-123456789012345678901234567890");
  return m;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + MGR_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = ::pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string capi_realize(mgr_session* s) {
  mgr_form* f = nullptr;
  REQUIRE(mgr_form_new(3, 12, 5, &f) == MGR_OK);
  mgr_form_set_coefficient(f, 2, "78");
  mgr_form_set_coefficient(f, 3, "-243");
  char* out = nullptr;
  CHECK(mgr_realize(s, f, 30, 0, &out) == MGR_OK);
  std::string doc = out ? out : "";
  mgr_string_free(out);
  mgr_form_free(f);
  return doc;
}

}  // namespace

TEST_CASE("matrix store round trip") {
  TempDir dir("store");
  FileMatrixStore store(dir.path);
  CHECK_FALSE(store.load(11, 2, "T2"));
  store.store(11, 2, "T2", sample());
  CHECK(fs::exists(dir.path / "msym_v1" / "L11_W2" / "T2.mat"));
  auto back = store.load(11, 2, "T2");
  REQUIRE(back);
  CHECK(*back == sample());
  CHECK(store.hits() == 1);
  CHECK(store.misses() == 1);

  std::string text = encode_matrix(sample());
  CHECK(text.rfind("MSYMMAT 1 3 4\n", 0) == 0);
  CHECK(decode_matrix(text) == sample());
  CHECK(decode_matrix(encode_matrix(IntMatrix{})) == IntMatrix{});
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("corrupt entries are discarded") {
  TempDir dir("corrupt");
  FileMatrixStore store(dir.path);
  store.store(5, 4, "T3", sample());
  fs::path p = store.entry_path(5, 4, "T3");
  std::string text = encode_matrix(sample());

  SUBCASE("truncated") {
    std::ofstream(p, std::ios::trunc) << text.substr(0, text.size() / 2);
  }
  SUBCASE("flipped digit") {
    std::string bad = text;
    bad[bad.find('7')] = '8';
    std::ofstream(p, std::ios::trunc) << bad;
  }
  SUBCASE("other version") {
    std::string body = "MSYMMAT 2 1 1\n5\n";
    std::ofstream(p, std::ios::trunc) << body << "SHA256 " << sha256_hex(body) << "\n";
  }
  CHECK_FALSE(store.load(5, 4, "T3"));
  CHECK_FALSE(fs::exists(p));
  CHECK(store.take_warnings().size() == 1);
  store.store(5, 4, "T3", sample());
  CHECK(store.load(5, 4, "T3") == sample());
}

TEST_CASE("concurrent stores of the same key") {
  TempDir dir("race");
  FileMatrixStore store(dir.path);
  std::vector<std::thread> ts;
  for (int t = 0; t < 4; ++t)
    ts.emplace_back([&] {
      for (int r = 0; r < 20; ++r) store.store(7, 2, "T5", sample());
    });
  for (auto& t : ts) t.join();
  CHECK(store.load(7, 2, "T5") == sample());
  int leftovers = 0;
  for (auto& e : fs::directory_iterator(store.entry_path(7, 2, "T5").parent_path())) leftovers += e.path().extension() != ".mat";
  CHECK(leftovers == 0);
}

TEST_CASE("unwritable cache only warns") {
  TempDir dir("ro");
  fs::path blocker = dir.path / "file";
  std::ofstream(blocker) << "x";
  FileMatrixStore store(blocker / "sub");
  store.store(11, 2, "T2", sample());
  CHECK(store.take_warnings().size() == 1);
  CHECK_FALSE(store.load(11, 2, "T2"));
}

TEST_CASE("report serialization") {
  Json d = document("genus", {{"level", 33}}, "genus", 3, {});
  CHECK_FALSE(d.contains("warnings"));
  CHECK(document("genus", {}, "genus", 3, {"w"}).at("warnings").size() == 1);
  std::string a = dump(d);
  CHECK(a == dump(d));
  CHECK(dump(Json::parse(a)) == a);
  CHECK(a.find("\"command\"") < a.find("\"genus\": 3"));

  FqField F = FqField::make(11, 1);
  CHECK(residue_json(F, F.from_int(-2)) == Json{{"residue", 9}, {"signed", -2}});
  FqField E = FqField::make(7, 2);
  CHECK(residue_json(E, E.gen()).at("element") == "t");
  CHECK(field_name(E) == "F_7^2");
  auto err = error_document("realize", "no_match", "none");
  CHECK(err.at("error").at("kind") == "no_match");
}

TEST_CASE("cache coherence through the library") {
  TempDir dir("coherent");
  mgr_session* cold = nullptr;
  mgr_session* none = nullptr;
  REQUIRE(mgr_session_new(dir.path.c_str(), &cold) == MGR_OK);
  REQUIRE(mgr_session_new(nullptr, &none) == MGR_OK);
  std::string first = capi_realize(cold);
  mgr_session_free(cold);

  mgr_session* warm = nullptr;
  REQUIRE(mgr_session_new(dir.path.c_str(), &warm) == MGR_OK);
  std::string second = capi_realize(warm);
  int64_t hits = 0, misses = 0;
  mgr_session_cache_stats(warm, &hits, &misses);
  CHECK(hits > 0);
  CHECK(misses == 0);
  CHECK(first == second);
  CHECK(first == capi_realize(none));
  auto doc = Json::parse(first);
  CHECK(doc.at("report").at("i") == 1);
  CHECK(doc.at("report").at("f2_level") == 15);
  mgr_session_free(warm);
  mgr_session_free(none);

  char* out = nullptr;
  CHECK(mgr_genus(nullptr, 11, "full", &out) == MGR_INVALID_ARGUMENT);
  mgr_string_free(out);
  mgr_form* f = nullptr;
  mgr_form_new(1, 12, 11, &f);
  CHECK(mgr_form_set_coefficient(f, 2, "twelve") == MGR_INVALID_ARGUMENT);
  mgr_form_free(f);
}

TEST_CASE("command line") {
  TempDir dir("cli");
  std::string env = "MGR_CACHE=" + dir.path.string();

  auto g = run_cli("genus --level 33 --subgroup full", env);
  CHECK(g.code == 0);
  CHECK(Json::parse(g.out).at("genus") == 3);

  auto bad = run_cli("genus --level 33 --frobnicate", env);
  CHECK(bad.code == 64);
  CHECK(run_cli("frobnicate", env).code == 64);

  auto dom = run_cli("realize --level 11 --weight 2 --ell 11", env);
  CHECK(dom.code == 2);
  CHECK(Json::parse(dom.out).at("error").at("kind") == "ell_divides_level");

  std::string realize = "realize --level 1 --weight 12 --ell 11 --a 2=-24 --truncate-bound 50";
  auto r = run_cli(realize, env);
  REQUIRE(r.code == 0);
  auto doc = Json::parse(r.out);
  CHECK(doc.at("report").at("d1") == 1);
  CHECK(doc.at("report").at("dH") == 1);
  CHECK(doc.at("report").at("flags") == Json::array({"HEURISTIC"}));
  CHECK(r.out.find('.') == std::string::npos);
  CHECK(run_cli(realize, env).out == r.out);
  CHECK(run_cli("--no-cache " + realize, env).out == r.out);
  CHECK(run_cli(realize + " --no-cache", env).out == r.out);
  CHECK(fs::exists(dir.path / "msym_v1"));

  auto t = run_cli("tables --max-ell 13", env);
  REQUIRE(t.code == 0);
  std::istringstream lines(t.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("ell\tlambda\ti\tf2\tminpoly_a2\td1\tdH", 0) == 0);
  int rows = 0;
  std::vector<std::string> d_columns;
  while (std::getline(lines, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::istringstream cs(line);
    std::string c;
    while (std::getline(cs, c, '\t')) cols.push_back(c);
    REQUIRE(cols.size() == 10);
    d_columns.push_back(cols[5] + "/" + cols[6]);
    if (cols[7] == "3" && cols[0] == "5") CHECK(cols[2] + cols[5] + cols[6] == "111");
  }
  CHECK(rows == 17);
  CHECK(d_columns.front() == "1/1");
  CHECK(d_columns.back() == "121/61");
  CHECK(run_cli("tables --max-ell 13", "MGR_CACHE=" + (dir.path / "other").string()).out == t.out);
}
