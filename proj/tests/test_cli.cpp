#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spectraltie/cli.hpp"

using namespace spectraltie;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "spectraltie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "spectraltie_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

const std::vector<std::string> kSmall{"--problem", "model", "--epsilon", "1e-3", "--window=-1.1,-1.5,1.1,0.1"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("usage errors exit 2 and write nothing") {
  const auto path = scratch("usage.csv").string();
  CHECK(call({"spectrum", "--problem", "model", "-o", path}).code == cli::kExitUsage);
  CHECK(call({"spectrum", "--reynolds", "3000", "--epsilon", "1e-3", "-o", path}).code == cli::kExitUsage);
  CHECK(call({"spectrum", "--epsilon", "-1", "-o", path}).code == cli::kExitUsage);
  CHECK(call({"spectrum", "--epsilon", "1e-3", "--window=1,0,-1,-1", "-o", path}).code == cli::kExitUsage);
  CHECK(call({"spectrum", "--epsilon", "1e-3", "--method", "magic", "-o", path}).code == cli::kExitUsage);
  CHECK(call({"spectrum", "--problem", "os", "--epsilon", "1e-3", "--n", "40", "-o", path}).code == cli::kExitUsage);
  CHECK(call({"bogus"}).code == cli::kExitUsage);
  CHECK(call({}).code == cli::kExitUsage);
  CHECK_FALSE(fs::exists(path));
  const auto help = call({"spectrum", "--help"});
  CHECK(help.code == cli::kExitPass);
  CHECK(help.out.find("--window") != std::string::npos);
}

TEST_CASE("spectrum table: three groups, deterministic, svg from csv") {
  const auto a = scratch("a.csv"), b = scratch("b.csv"), s = scratch("a.svg");
  const auto args = with({"spectrum", "--method", "all", "--n", "400"}, kSmall);
  REQUIRE(call(with(args, {"-o", a.string()})).code == cli::kExitPass);
  REQUIRE(call(with(args, {"-o", b.string()})).code == cli::kExitPass);
  const std::string csv = slurp(a);
  CHECK(csv == slurp(b));
  CHECK(csv.rfind("re,im,method,index,residual,resolved\n", 0) == 0);

  const auto rows = cli::parse_csv(csv);
  int counts[3] = {0, 0, 0};
  std::string last;
  int switches = 0;
  for (const auto& r : rows) {
    counts[0] += r.method == "oracle";
    counts[1] += r.method == "exact_det";
    counts[2] += r.method == "asymptotic";
    switches += r.method != last;
    last = r.method;
    CHECK(r.im >= -1.5);
    CHECK(r.im <= 0.1);
  }
  CHECK(counts[0] > 10);
  CHECK(counts[1] > 10);
  CHECK(counts[2] > 10);
  CHECK(switches == 3);
  CHECK(cli::format_csv(rows) == csv);

  REQUIRE(call(with(args, {"-o", s.string(), "--format", "svg"})).code == cli::kExitPass);
  const std::string svg = slurp(s);
  CHECK(svg == cli::svg_from_csv(csv));
  CHECK(svg.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0) == 0);
  CHECK(svg.find("href") == std::string::npos);
}

TEST_CASE("curves: strands, json round trip, empty window") {
  const auto out = call({"curves", "--reynolds", "3000", "--alpha", "1", "--points", "21"});
  REQUIRE(out.code == cli::kExitPass);
  const auto samples = cli::parse_curves_csv(out.out);
  REQUIRE(samples.size() == 42);
  for (std::size_t i = 0; i + 1 < samples.size(); i += 2) {
    CHECK(samples[i].side == Side::plus);
    CHECK(samples[i + 1].side == Side::minus);
    CHECK(samples[i].gamma > 0);
    CHECK(samples[i + 1].gamma == -samples[i].gamma);
  }

  const auto js = call({"curves", "--reynolds", "3000", "--alpha", "1", "--points", "21", "--format", "json"});
  REQUIRE(js.code == cli::kExitPass);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["params"]["reynolds"].get<double>() == 3000);
  CHECK(j["eigenvalues"].empty());
  REQUIRE(j["curves"].size() == samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& c = j["curves"][i];
    CHECK(c["t"].get<double>() == samples[i].t);
    CHECK(c["gamma"].get<double>() == samples[i].gamma);
    CHECK(c["re"].get<double>() == samples[i].lambda.real());
    CHECK(c["im"].get<double>() == samples[i].lambda.imag());
    CHECK(c["side"].get<std::string>() == to_string(samples[i].side));
  }

  const auto path = scratch("empty.csv");
  const auto e = call({"curves", "--epsilon", "0.3", "--theta", "1", "-o", path.string()});
  CHECK(e.code == cli::kExitPass);
  CHECK(e.err.find("warning") != std::string::npos);
  CHECK(cli::parse_curves_csv(slurp(path)).empty());
}

TEST_CASE("count") {
  const auto edge = call({"count", "--epsilon", "1e-3", "--at=-1,0"});
  REQUIRE(edge.code == cli::kExitPass);
  CHECK(edge.out.find(": 0.000000") != std::string::npos);
  const auto node = call({"count", "--epsilon", "1e-3", "--at=0,-0.57735026918962584"});
  REQUIRE(node.code == cli::kExitPass);
  CHECK(node.out.find("segment count") != std::string::npos);
  CHECK(std::stod(node.out.substr(node.out.rfind(':') + 1)) == doctest::Approx(8.33).epsilon(2e-3));
  CHECK(call({"count", "--epsilon", "1e-3", "--at=0.5,0.5"}).code == cli::kExitUsage);

  const auto r = call({"count", "--epsilon", "1e-3", "--window=-1.1,-3,1.1,0.1"});
  REQUIRE(r.code == cli::kExitPass);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream f(line);
    std::string name;
    double predicted, difference;
    int actual;
    if (!(f >> name >> predicted >> actual >> difference)) continue;
    CHECK(std::abs(difference) <= 4);
    ++rows;
  }
  CHECK(rows == 4);
}

TEST_CASE("compare flags an under-resolved oracle") {
  const auto r = call({"compare", "--epsilon", "1e-3", "--regime", "oracle", "--n", "100"});
  CHECK(r.code == cli::kExitFail);
  CHECK(r.out.find("under-resolved") != std::string::npos);
  CHECK(r.out.find("overall FAIL") != std::string::npos);

  const auto ok = call({"compare", "--epsilon", "1e-3", "--regime", "segment"});
  CHECK(ok.code == cli::kExitPass);
  CHECK(ok.out.find("overall PASS") != std::string::npos);
}
