#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "semiabel/error.hpp"
#include "semiabel/job.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Periods, pairings and motivic Galois dimensions of 1-motives over elliptic curves"};
  std::string task, config_path;
  bool json = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  app.add_option("task", task, "periods | eval | expg | logg | pairing | classify | bounds | verify")
      ->required();
  app.add_option("--config", config_path, "JSON job description")->required();
  app.add_flag("--json", json, "emit JSON instead of text");
  app.add_option("--seed", seed, "seed for sampled points");
  app.add_option("--tol", tol, "relation tolerance");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  semiabel::ConfigOverrides o;
  o.task = semiabel::parse_task(task);
  if (!o.task) {
    std::cerr << "unknown task '" << task << "'\n";
    return 1;
  }
  o.seed = seed;
  o.tol = tol;
  o.json_output = json;
  if (const char* env = std::getenv("SEMIABEL_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      std::cerr << "SEMIABEL_TOL is not a number\n";
      return 1;
    }
    o.env_tol = v;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cannot read " << config_path << "\n";
    return 1;
  }
  std::stringstream buf;
  buf << in.rdbuf();

  try {
    const semiabel::JobConfig cfg = semiabel::parse_config_text(buf.str(), o);
    const semiabel::JobResult r = semiabel::run_job(cfg);
    std::cout << (cfg.json_output ? semiabel::dump_json(r.document)
                                  : semiabel::render_text(r.document));
    return r.exit_code;
  } catch (const semiabel::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == semiabel::ErrorCode::InternalInconsistency ? 2 : 1;
  }
}
