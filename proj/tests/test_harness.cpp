#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>

#include <json.hpp>

#include "qtzopt/config.hpp"
#include "qtzopt/experiments.hpp"
#include "qtzopt/rng.hpp"
#include "qtzopt/stats.hpp"

using namespace qtzopt;

TEST_CASE("mean and sample stddev basics") {
  auto ms = mean_stddev({1.0, 2.0, 3.0});
  CHECK(ms.mean == 2.0);
  CHECK(ms.stddev == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(ms.single);

  auto same = mean_stddev({4.5, 4.5, 4.5, 4.5});
  CHECK(same.stddev == 0.0);

  auto one = mean_stddev({7.0});
  CHECK(one.single);
  CHECK(one.stddev == 0.0);
  CHECK(one.mean == 7.0);

  CHECK_THROWS_AS(mean_stddev({}), std::invalid_argument);
}

TEST_CASE("mean/stddev agree with a compensated long-double oracle") {
  Rng rng(2718);
  for (int rep = 0; rep < 10000; ++rep) {
    std::size_t n = 2 + rng.below(40);
    std::vector<double> xs(n);
    double scale = std::exp(rng.uniform(-3.0, 8.0));
    for (auto& v : xs) v = scale * rng.uniform(-1.0, 1.0);
    auto ms = mean_stddev(xs);

    long double s = 0.0L;
    for (double v : xs) s += v;
    long double mean = s / static_cast<long double>(n);
    long double ss = 0.0L;
    for (double v : xs) {
      long double d = v - mean;
      ss += d * d;
    }
    long double sd = sqrtl(ss / static_cast<long double>(n - 1));
    REQUIRE(std::fabs(ms.mean - static_cast<double>(mean)) <=
            1e-12 * (1.0 + std::fabs(static_cast<double>(mean))));
    REQUIRE(std::fabs(ms.stddev - static_cast<double>(sd)) <=
            1e-12 * (1.0 + static_cast<double>(sd)));
  }
}

TEST_CASE("improvement ratio matches the published table arithmetic") {
  CHECK(improvement_ratio(1732.16, 1691.76) == doctest::Approx(2.33).epsilon(2e-3));
  CHECK(improvement_ratio(2159.27, 1691.76) == doctest::Approx(21.65).epsilon(1e-3));
  CHECK(improvement_ratio(100.0, 100.0) == 0.0);
}

TEST_CASE("config parsing, defaults, and unknown-key rejection") {
  const char* path = "test_config_tmp.cfg";
  {
    std::ofstream f(path);
    f << "# comment line\n"
      << "sa.alpha = 0.9995\n"
      << "trials=3\n"
      << "algos = qtz, sa\n"
      << "trace = true\n";
  }
  Config cfg = Config::from_file(path);
  CHECK(cfg.get_double("sa.alpha", 0.0) == 0.9995);
  CHECK(cfg.get_long("trials", 0) == 3);
  CHECK(cfg.get_bool("trace", false));
  auto algos = cfg.get_list("algos", {});
  REQUIRE(algos.size() == 2);
  CHECK(algos[0] == "qtz");
  CHECK(algos[1] == "sa");
  auto seeds = cfg.get_seeds("seeds", 3);
  CHECK(seeds == std::vector<std::uint64_t>{0, 1, 2});
  CHECK_NOTHROW(cfg.reject_unknown());
  std::remove(path);

  Config bad;
  bad.set("sa.aplha", "0.9");  // typo must be reported
  CHECK_THROWS_WITH_AS(bad.reject_unknown(), doctest::Contains("sa.aplha"),
                       std::runtime_error);

  Config notnum;
  notnum.set("budget", "fast");
  CHECK_THROWS_AS(notnum.get_long("budget", 1), std::runtime_error);
}

TEST_CASE("tiny washboard experiment: summary csv is reproducible and json is well formed") {
  auto make_cfg = [] {
    Config cfg;
    cfg.set("experiment", "washboard");
    cfg.set("washboard.alpha", "3.0");
    cfg.set("trials", "4");
    cfg.set("budget", "4000");
    return cfg;
  };
  Config c1 = make_cfg();
  Config c2 = make_cfg();
  auto r1 = run_experiment(c1);
  auto r2 = run_experiment(c2);
  CHECK(summary_csv(r1) == summary_csv(r2));

  auto j = nlohmann::json::parse(summary_json(r1));
  CHECK(j["experiment"] == "washboard");
  CHECK(j["algorithms"].is_array());
  CHECK(j["algorithms"].size() == 3);
  for (const auto& a : j["algorithms"]) {
    CHECK(a.contains("algorithm"));
    CHECK(a.contains("mean"));
    CHECK(a.contains("sample_stddev"));
    CHECK(a.contains("improvement_ratio_pct"));
  }
}

TEST_CASE("summary json validates against the repo schema") {
  std::ifstream sf(std::string(QTZOPT_SOURCE_DIR) + "/schema/summary.schema.json");
  REQUIRE(sf.is_open());
  auto schema = nlohmann::json::parse(sf);

  Config cfg;
  cfg.set("experiment", "bench");
  cfg.set("bench.function", "drop_wave");
  cfg.set("trials", "2");
  cfg.set("budget", "500");
  auto doc = nlohmann::json::parse(summary_json(run_experiment(cfg)));

  // minimal structural validator: required keys + primitive type names
  std::function<void(const nlohmann::json&, const nlohmann::json&)> validate =
      [&](const nlohmann::json& sch, const nlohmann::json& node) {
        std::string type = sch.value("type", "");
        if (type == "object") {
          REQUIRE(node.is_object());
          for (const auto& req : sch.value("required", nlohmann::json::array()))
            REQUIRE(node.contains(req.get<std::string>()));
          if (sch.contains("properties"))
            for (auto it = sch["properties"].begin(); it != sch["properties"].end(); ++it)
              if (node.contains(it.key())) validate(it.value(), node[it.key()]);
        } else if (type == "array") {
          REQUIRE(node.is_array());
          if (sch.contains("items"))
            for (const auto& el : node) validate(sch["items"], el);
        } else if (type == "number") {
          REQUIRE(node.is_number());
        } else if (type == "integer") {
          REQUIRE(node.is_number_integer());
        } else if (type == "string") {
          REQUIRE(node.is_string());
        } else if (type == "boolean") {
          REQUIRE(node.is_boolean());
        }
      };
  validate(schema, doc);
}

TEST_CASE("unknown experiment kinds and algorithms are rejected") {
  Config cfg;
  cfg.set("experiment", "nope");
  CHECK_THROWS_WITH_AS(run_experiment(cfg), doctest::Contains("nope"), std::runtime_error);

  Config cfg2;
  cfg2.set("experiment", "washboard");
  cfg2.set("algos", "qtz,annealing2000");
  cfg2.set("trials", "1");
  cfg2.set("budget", "50");
  CHECK_THROWS_WITH_AS(run_experiment(cfg2), doctest::Contains("annealing2000"),
                       std::runtime_error);
}

TEST_CASE("QTZOPT_THREADS caps the worker pool") {
  setenv("QTZOPT_THREADS", "2", 1);
  CHECK(worker_count(100) == 2);
  setenv("QTZOPT_THREADS", "1", 1);
  CHECK(worker_count(100) == 1);
  unsetenv("QTZOPT_THREADS");
  CHECK(worker_count(1) == 1);  // never more workers than tasks
}

TEST_CASE("trace files carry the per-iteration schema") {
  namespace fs = std::filesystem;
  fs::path out = fs::temp_directory_path() / "qtzopt_trace_test";
  fs::remove_all(out);
  Config cfg;
  cfg.set("experiment", "washboard");
  cfg.set("washboard.alpha", "3.0");
  cfg.set("trials", "1");
  cfg.set("budget", "200");
  cfg.set("algos", "qtz");
  cfg.set("trace", "true");
  cfg.set("out", out.string());
  run_experiment(cfg);
  std::ifstream f(out / "trace_qtz_0.csv");
  REQUIRE(f.is_open());
  std::string header;
  std::getline(f, header);
  CHECK(header == "tau,f,f_opt,qp_or_T,accepted");
  long rows = 0;
  std::string line;
  while (std::getline(f, line)) ++rows;
  CHECK(rows >= 1);
  fs::remove_all(out);
}

TEST_CASE("run records carry wall time and eval counts") {
  Config cfg;
  cfg.set("experiment", "washboard");
  cfg.set("trials", "2");
  cfg.set("budget", "500");
  cfg.set("algos", "qia");
  auto res = run_experiment(cfg);
  for (const auto& rec : res.records.at("qia")) {
    CHECK(rec.wall_seconds >= 0.0);
    CHECK(rec.evals >= rec.iters);  // QIA evaluates the mixing draw too
  }
}
