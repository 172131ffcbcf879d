#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "semiclassic/csv.hpp"
#include "semiclassic/run_config.hpp"
#include "semiclassic/runner.hpp"

using namespace semiclassic;
using support::kind_of;

namespace fs = std::filesystem;

namespace {

constexpr const char* kEckartConfig = R"(# Eckart barrier
[potential]
type = eckart
height = 1.0
width = 1.0

[problem]
energy = 0.5
x_min = -20
x_max = 20

[method]
name = exact

[scan]
e_min = 0.1
e_max = 0.9
steps = 9
)";

std::string config_error(std::string_view text) {
  try {
    build_run_config(ConfigDocument::parse(text, "test.ini"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() /
          ("semiclassic_cli_" + std::to_string(::getpid()) + "_" + std::to_string(std::rand()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run_cli(const Scratch& s, const std::string& args) {
  const fs::path out = s.dir / "stdout.txt";
  const fs::path err = s.dir / "stderr.txt";
  const std::string cmd = std::string("\"") + SEMICLASSIC_CLI_PATH + "\" " + args + " >\"" +
                          out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config document parsing") {
    const auto doc = ConfigDocument::parse("; comment\n[a]\nx = 1 # trailing\ny= two words \n",
                                           "f.ini");
    REQUIRE(doc.has("a", "x"));
    CHECK(doc.sections().at("a").at("x").value == "1");
    CHECK(doc.sections().at("a").at("x").line == 3);
    CHECK(doc.sections().at("a").at("y").value == "two words");
    CHECK_FALSE(doc.has("a", "z"));
  }

  TEST_CASE("parse diagnostics name the line") {
    auto parse_error = [](std::string_view text) {
      try {
        ConfigDocument::parse(text, "bad.ini");
      } catch (const Error& e) {
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(contains(parse_error("[a\n"), "bad.ini:1: unterminated section"));
    CHECK(contains(parse_error("x = 1\n"), "bad.ini:1: key outside"));
    CHECK(contains(parse_error("[a]\n\njunk\n"), "bad.ini:3: expected 'key = value'"));
    CHECK(contains(parse_error("[a]\nx = 1\nx = 2\n"), "bad.ini:3: duplicate key 'x'"));
    CHECK(contains(parse_error("[a]\nx =\n"), "empty value"));
  }

  TEST_CASE("build a run config") {
    const auto cfg = build_run_config(ConfigDocument::parse(kEckartConfig, "e.ini"));
    CHECK(cfg.problem.energy == 0.5);
    CHECK(cfg.energy_set);
    CHECK(cfg.method == Method::Exact);
    REQUIRE(cfg.scan.has_value());
    CHECK(cfg.scan->steps == 9);
    CHECK(cfg.scan->energy(8) == doctest::Approx(0.9));
    CHECK(cfg.problem.potential.name() == "eckart");
  }

  TEST_CASE("field-level diagnostics") {
    CHECK(contains(config_error("[potential]\ntype = eckart\nheight = abc\n[problem]\nx_min=-1\nx_max=1\n"),
                   "test.ini:3: [potential] height: expected a finite number"));
    CHECK(contains(config_error("[potential]\ntype = blob\n[problem]\nx_min=-1\nx_max=1\n"),
                   "[potential] type: unknown potential type"));
    CHECK(contains(config_error("[potential]\ntype = eckart\nslope = 1\n[problem]\nx_min=-1\nx_max=1\n"),
                   "test.ini:3: [potential] slope: unknown key"));
    CHECK(contains(config_error("[potential]\ntype = eckart\n[problem]\nx_min=-1\n"),
                   "[problem] x_max: required value missing"));
    CHECK(contains(config_error("[potential]\ntype = eckart\n[problem]\nx_min=-1\nx_max=1\n[extra]\na=1\n"),
                   "test.ini:7: unknown section [extra]"));
    CHECK(contains(config_error("[potential]\ntype = square\nwidth = -1\n[problem]\nx_min=-1\nx_max=1\n"),
                   "[potential] type:"));
    CHECK(contains(config_error("[problem]\nx_min=-1\nx_max=1\n"), "missing [potential] section"));
    CHECK(contains(config_error("[potential]\ntype = eckart\n[problem]\nx_min=-1\nx_max=1\n"
                                "[method]\nname = magic\n"),
                   "unknown method 'magic'"));
  }

  TEST_CASE("command-line overrides") {
    auto doc = ConfigDocument::parse(kEckartConfig, "e.ini");
    doc.set_assignment("problem.energy=0.25");
    doc.set_assignment("potential.height = 2");
    const auto cfg = build_run_config(doc);
    CHECK(cfg.problem.energy == 0.25);
    CHECK(cfg.problem.potential.value(0.0) == 2.0);
    CHECK(kind_of([&] { doc.set_assignment("energy=1"); }) == ErrorKind::Config);
    CHECK(kind_of([&] { doc.set_assignment("problem.energy"); }) == ErrorKind::Config);
    doc.set("scan", "steps", "x");
    try {
      build_run_config(doc);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(contains(e.what(), "--set: [scan] steps"));
    }
  }

  TEST_CASE("method labels round-trip") {
    for (Method m : {Method::Wkb, Method::WkbCorrected, Method::Connection, Method::Born1,
                     Method::OnceReflected, Method::Exact}) {
      CHECK(parse_method(method_label(m)) == m);
    }
    CHECK(is_reflection_method(Method::Born1));
    CHECK_FALSE(is_reflection_method(Method::Exact));
  }

  TEST_CASE("number formatting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
  }

  TEST_CASE("table rendering") {
    Table t;
    t.columns = {"a", "b", "c"};
    t.rows.push_back({1.5, 7LL, std::string("x")});
    CHECK(render_table(t, OutputFormat::Csv) == "a,b,c\n1.5,7,x\n");
    const std::string json = render_table(t, OutputFormat::StructuredText);
    CHECK(contains(json, "\"columns\""));
    CHECK(contains(json, "\"a\": 1.5"));
    CHECK(contains(json, "\"b\": 7"));
    CHECK(contains(json, "\"c\": \"x\""));
  }

  TEST_CASE("parallel_for rethrows the lowest failing index") {
    std::array<int, 64> hits{};
    parallel_for(64, 4, [&](int i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    try {
      parallel_for(64, 4, [](int i) {
        if (i == 10 || i == 40) throw Error(ErrorKind::Numerical, "fail " + std::to_string(i));
      });
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "fail 10");
    }
  }

  TEST_CASE("scan output is byte-identical across thread counts") {
    auto cfg = build_run_config(ConfigDocument::parse(kEckartConfig, "e.ini"));
    const std::string first = render_table(run_scan(cfg), OutputFormat::Csv);
    ::setenv("SEMICLASSIC_THREADS", "1", 1);
    const std::string serial = render_table(run_scan(cfg), OutputFormat::Csv);
    ::setenv("SEMICLASSIC_THREADS", "3", 1);
    const std::string threaded = render_table(run_scan(cfg), OutputFormat::Csv);
    ::unsetenv("SEMICLASSIC_THREADS");
    CHECK(first == serial);
    CHECK(first == threaded);
    CHECK(contains(first, "E,T,R,sigma_star,method\n"));
  }

  TEST_CASE("runner subcommands") {
    auto cfg = build_run_config(ConfigDocument::parse(kEckartConfig, "e.ini"));
    const auto single = run_transmission(cfg);
    REQUIRE(single.rows.size() == 1);
    CHECK(std::get<double>(single.rows[0][1]) == doctest::Approx(0.11578993102457105).epsilon(1e-6));

    cfg.method = Method::OnceReflected;
    cfg.problem.energy = 2.0;
    const auto once = run_transmission(cfg);
    CHECK(once.columns[1] == "re_R");

    cfg.method = Method::Exact;
    cfg.problem = support::problem(HarmonicWell{1.0}, 0.0, -10.0, 10.0);
    cfg.n_max = 2;
    const auto levels = run_bound_states(cfg);
    REQUIRE(levels.rows.size() == 3);
    CHECK(std::get<long long>(levels.rows[2][0]) == 2);
    CHECK(std::get<double>(levels.rows[2][1]) == doctest::Approx(2.5).epsilon(1e-8));
    cfg.method = Method::Wkb;
    CHECK(std::get<double>(run_bound_states(cfg).rows[1][1]) == doctest::Approx(1.5).epsilon(1e-8));

    const auto airy = run_airy({0.0, -1.0});
    CHECK(airy.columns.size() == 5);
    CHECK(std::get<double>(airy.rows[0][1]) == doctest::Approx(0.35502805388781723926));
  }

  TEST_CASE("missing energy is a config error") {
    auto cfg = build_run_config(ConfigDocument::parse(
        "[potential]\ntype = eckart\n[problem]\nx_min=-20\nx_max=20\n", "e.ini"));
    CHECK_FALSE(cfg.energy_set);
    CHECK(kind_of([&] { run_transmission(cfg); }) == ErrorKind::Config);
    CHECK(kind_of([&] { run_scan(cfg); }) == ErrorKind::Config);
  }

  TEST_CASE("executable: success paths") {
    Scratch s;
    const auto cfg = s.write("e.ini", kEckartConfig);
    const Run t = run_cli(s, "transmission -c \"" + cfg.string() + "\"");
    CHECK(t.code == 0);
    CHECK(contains(t.out, "E,T,R,sigma_star,method\n0.5,"));
    CHECK(contains(t.out, ",exact\n"));

    const Run w = run_cli(s, "transmission -c \"" + cfg.string() + "\" -m wkb -E 0.25");
    CHECK(w.code == 0);
    CHECK(contains(w.out, "\n0.25,"));
    CHECK(contains(w.out, ",wkb\n"));

    const fs::path a = s.dir / "a.csv";
    const fs::path b = s.dir / "b.csv";
    CHECK(run_cli(s, "scan -c \"" + cfg.string() + "\" -o \"" + a.string() + "\"").code == 0);
    CHECK(run_cli(s, "scan -c \"" + cfg.string() + "\" -o \"" + b.string() + "\"").code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());

    const Run j = run_cli(s, "scan -c \"" + cfg.string() + "\" --steps 3 --format structured-text");
    CHECK(j.code == 0);
    CHECK(contains(j.out, "\"rows\""));

    const Run airy = run_cli(s, "airy -z 0 -z 1");
    CHECK(airy.code == 0);
    CHECK(contains(airy.out, "z,ai,bi,ai_prime,bi_prime\n0,0.3550280538878172"));

    const Run wave = run_cli(s, "wavefunction -c \"" + cfg.string() + "\" -m connection -E 0.05 --samples 201");
    CHECK(wave.code == 0);
    CHECK(contains(wave.out, "x,re_psi,im_psi,region\n-20,"));
    CHECK(contains(wave.out, "forbidden"));
  }

  TEST_CASE("executable: exit codes and error prefixes") {
    Scratch s;
    const auto cfg = s.write("e.ini", kEckartConfig);
    const auto bad = s.write("bad.ini", "[potential]\ntype = eckart\nheight = x\n");

    const Run missing = run_cli(s, "transmission -c \"" + (s.dir / "nope.ini").string() + "\"");
    CHECK(missing.code == 2);
    CHECK(contains(missing.err, "error[config]: cannot open config file"));

    const Run parse = run_cli(s, "transmission -c \"" + bad.string() + "\"");
    CHECK(parse.code == 2);
    CHECK(contains(parse.err, "bad.ini:3: [potential] height"));

    const Run flag = run_cli(s, "transmission");
    CHECK(flag.code == 2);
    CHECK(contains(flag.err, "error[config]"));

    const Run regime = run_cli(s, "transmission -c \"" + cfg.string() + "\" -m once-reflected");
    CHECK(regime.code == 3);
    CHECK(contains(regime.err, "error[regime]"));

    const Run over = run_cli(s, "transmission -c \"" + cfg.string() + "\" -m wkb -E 2");
    CHECK(over.code == 3);
    CHECK(contains(over.err, "error[no-barrier]"));

    const Run domain = run_cli(s, "airy -z nan");
    CHECK(domain.code == 2);
    CHECK(contains(domain.err, "error[domain]"));

    const Run matching = run_cli(s, "transmission -c \"" + cfg.string() +
                                        "\" --set problem.x_min=-3 --set problem.x_max=3");
    CHECK(matching.code == 4);
    CHECK(contains(matching.err, "error[matching]"));

    const Run spectrum = run_cli(s, "bound-states -c \"" + cfg.string() + "\"");
    CHECK(spectrum.code == 4);
    CHECK(contains(spectrum.err, "error[spectrum]"));
  }

  TEST_CASE("executable: verify subset") {
    Scratch s;
    const Run v = run_cli(s, "verify --criterion 3");
    CHECK(v.code == 0);
    CHECK(contains(v.out, "criterion,check,value,threshold,status\n3,"));
    CHECK_FALSE(contains(v.out, ",fail\n"));
    CHECK(run_cli(s, "verify --criterion 12").code == 2);
  }
}
