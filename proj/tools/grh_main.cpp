// grh: verify zeros of Dirichlet L-functions and check central values.

#include "grh/driver.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Rigorous zero verification for Dirichlet L-functions"};
  app.require_subcommand(1);

  grh::RunConfig cfg;
  std::int64_t q_lo = 3, q_hi = 0;
  double height = 0;
  std::string algo = "auto", out = "certificates", config;
  int bits = cfg.lattice.bits, workers = 1;
  bool resume = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--q-lo", q_lo, "smallest modulus (at least 3)");
    sub->add_option("--q-hi", q_hi, "largest modulus (default q-lo)");
    sub->add_option("--bits", bits, "big-float precision of the lattice build");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", out, "output directory");
    sub->add_option("--config", config, "key=value file; its entries override flags");
  };
  CLI::App* verify = app.add_subcommand("verify", "certify zeros for every primitive conjugate pair");
  add_common(verify);
  verify->add_option("--height", height, "constant height (default min(1000, 1e5/q))");
  verify->add_option("--algo", algo, "sampler")->check(CLI::IsMember({"auto", "largeq", "smallq"}));
  verify->add_flag("--resume", resume, "skip pairs that already have a completion marker");
  CLI::App* central = app.add_subcommand("central", "check Lambda(1/2) != 0 for every primitive character");
  add_common(central);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.q_lo = q_lo;
    cfg.q_hi = q_hi > 0 ? q_hi : q_lo;
    if (height > 0) cfg.height = grh::HeightPolicy::constant(height);
    cfg.algorithm = grh::algorithm_from_string(algo);
    cfg.lattice.bits = bits;
    cfg.workers = workers;
    cfg.out_dir = out;
    cfg.resume = resume;
    if (const char* dir = std::getenv("GRH_CACHE_DIR"); dir && *dir) cfg.cache_dir = dir;
    if (!config.empty()) grh::apply_config_file(cfg, config);
    cfg.validate();

    auto log = [](const std::string& s) { std::cout << s << '\n' << std::flush; };
    if (verify->parsed()) {
      const auto s = grh::run_verification(cfg, log);
      std::cout << "pairs " << s.pairs << " verified " << s.verified << " skipped " << s.skipped << " failed "
                << s.failures.size() << " lattices " << s.lattices_built << '\n';
      for (const auto& f : s.failures) std::cerr << "FAILED " << f << '\n';
      return s.exit_status();
    }
    const auto reports = grh::run_central_sweep(cfg, log);
    std::int64_t checked = 0, survivors = 0;
    for (const auto& r : reports) {
      checked += r.characters_checked;
      survivors += r.survivors();
    }
    std::cout << "characters " << checked << " survivors " << survivors << '\n';
    return survivors == 0 ? 0 : 1;
  } catch (const grh::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
