#include <CLI11.hpp>

#include <iostream>

#include "subideal/app.hpp"

int main(int argc, char** argv) {
  subideal::RunConfig cfg;
  CLI::App app{"Border bases and subideal border bases of point sets"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--order", cfg.order, "term ordering: degrevlex | deglex")->capture_default_str();
    sub->add_option("-o,--output", cfg.output, "write JSON here instead of stdout");
  };
  auto exact_points = [&](CLI::App* sub) {
    sub->add_option("--points", cfg.points, "CSV point file (header = indeterminates)")->required();
    sub->add_option("--epsilon", cfg.epsilon, "rejected in exact mode");
    sub->add_option("--tau", cfg.tau, "rejected in exact mode");
  };
  auto float_opts = [&](CLI::App* sub) {
    sub->add_option("--epsilon", cfg.epsilon, "approximate kernel threshold")->required();
    sub->add_option("--tau", cfg.tau, "stabilization threshold")->required();
  };

  auto* bm = app.add_subcommand("bm", "exact border basis of I_X");
  exact_points(bm);
  common(bm);

  auto* sbm = app.add_subcommand("sbm", "exact subideal border basis of I_X in <F>");
  exact_points(sbm);
  sbm->add_option("--gens", cfg.gens, "generators, separated by ';'")->required();
  common(sbm);

  auto* avi = app.add_subcommand("avi", "approximate border basis");
  avi->add_option("--points", cfg.points, "CSV point file")->required();
  float_opts(avi);
  avi->add_flag("--auto-scale", cfg.auto_scale, "map points into [-1,1]^n");
  common(avi);

  auto* savi = app.add_subcommand("savi", "approximate subideal border basis");
  savi->add_option("--points", cfg.points, "CSV point file")->required();
  savi->add_option("--gens", cfg.gens, "||.||_1-unitary generators, separated by ';'")->required();
  float_opts(savi);
  savi->add_flag("--auto-scale", cfg.auto_scale, "map points into [-1,1]^n");
  savi->add_flag("--normalize-generators", cfg.normalize_generators, "rescale generators to ||f||_1 = 1");
  common(savi);

  auto* div = app.add_subcommand("divide", "subideal border division by a stored basis");
  div->add_option("--basis", cfg.basis, "JSON written by bm/sbm/avi/savi")->required();
  div->add_option("--rep", cfg.rep, "representation p_1; ...; p_m of f = sum p_i f_i")->required();
  common(div);

  auto* chk = app.add_subcommand("check", "S-polynomial residuals of a stored basis");
  chk->add_option("--basis", cfg.basis, "JSON written by bm/sbm/avi/savi")->required();
  chk->add_option("--epsilon", cfg.epsilon, "pass threshold (exact default: residuals must vanish)");
  common(chk);

  auto* alloc = app.add_subcommand("allocate", "two-zone production allocation");
  alloc->add_option("--commingled", cfg.commingled, "CSV with both valves open")->required();
  alloc->add_option("--test-a", cfg.test_a, "CSV with zone B shut")->required();
  alloc->add_option("--test-b", cfg.test_b, "CSV with zone A shut")->required();
  alloc->add_option("--valve-a", cfg.valve_a)->capture_default_str();
  alloc->add_option("--valve-b", cfg.valve_b)->capture_default_str();
  alloc->add_option("--production", cfg.production, "total production column")->capture_default_str();
  float_opts(alloc);
  common(alloc);

  auto* synth = app.add_subcommand("synth", "write seeded synthetic two-zone data");
  synth->add_option("--seed", cfg.seed)->capture_default_str();
  synth->add_option("--out-dir", cfg.out_dir)->capture_default_str();
  synth->add_option("--noise", cfg.noise)->capture_default_str();
  synth->add_flag("--no-interaction", cfg.no_interaction, "set f_A = f_B = 0");
  common(synth);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return static_cast<int>(subideal::ExitCode::Validation);
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return subideal::run(cfg, std::cout, std::cerr);
}
