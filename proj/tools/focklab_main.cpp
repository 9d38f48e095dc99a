// focklab: numerical checks and phase-space artifacts for squeezed and
// position-like states of the truncated harmonic oscillator.
//
// Subcommands: verify, husimi, limits, state.  Exit codes: 0 success,
// 1 failed check or truncation guard, 2 usage/config/IO error.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "focklab/report.hpp"

namespace fs = std::filesystem;
using namespace focklab;

namespace {

struct GlobalOpts {
  std::string config_path;
  int levels = -1;
  int buffer = -1;
  std::string out;
};

RunConfig resolve_config(const GlobalOpts& g) {
  RunConfig c;
  if (!g.config_path.empty()) c = load_config(g.config_path);
  if (g.levels >= 0) c.n_levels = g.levels;    // flags win over the file
  if (g.buffer >= 0) c.interior_buffer = g.buffer;
  if (!g.out.empty()) c.output_dir = g.out;
  c.validate();
  return c;
}

std::ofstream open_output(const RunConfig& c, const std::string& name) {
  fs::create_directories(c.output_dir);
  const fs::path p = fs::path(c.output_dir) / name;
  std::ofstream f(p, std::ios::binary);
  if (!f) throw config_error("cannot write " + p.string());
  return f;
}

int cmd_verify(const RunConfig& config) {
  ReportBundle bundle = run_verify_suite(config);
  auto out = open_output(config, "verify_report.json");
  out << bundle.doc.dump(2) << '\n';
  out.close();
  for (const auto& rep : bundle.doc["identities"])
    std::cout << rep["identity"].get<std::string>() << " param=" << rep["param"].dump()
              << " rel_dev=" << rep["rel_dev"].dump()
              << (rep["passed"].get<bool>() ? " ok" : " FAIL") << '\n';
  std::cout << "disentangle_variant winner: "
            << bundle.doc["disentangle_variant"]["winner"].get<std::string>() << '\n';
  if (!bundle.passed) {
    for (const auto& f : bundle.failures) std::cout << "FAILED: " << f << '\n';
    std::cout << "verify: FAIL\n";
    return 1;
  }
  std::cout << "verify: PASS\n";
  return 0;
}

int cmd_husimi(const RunConfig& config, double x, double re_min, double re_max, double im_min,
               double im_max, int n_re, int n_im) {
  const QGrid grid = husimi_grid(x, re_min, re_max, im_min, im_max, n_re, n_im);
  {
    auto csv = open_output(config, "husimi.csv");
    write_husimi_csv(csv, grid);
  }
  {
    auto meta = open_output(config, "husimi.json");
    meta << husimi_sidecar(grid).dump(2) << '\n';
  }
  const GridMax m = grid_argmax(grid);
  std::cout << "husimi: x=" << x << " argmax re=" << m.re << " im=" << m.im << " q=" << m.value
            << '\n';
  return 0;
}

int cmd_limits(const RunConfig& config, double x, const std::vector<double>& r_list) {
  const FockDim dim(config.n_levels);
  const auto yuen_rows = yuen_limit_study(x, r_list, dim);
  const auto caves_rows = caves_limit_study(x, r_list, dim);
  {
    auto f = open_output(config, "yuen.csv");
    write_limits_csv(f, yuen_rows);
  }
  {
    auto f = open_output(config, "caves.csv");
    write_limits_csv(f, caves_rows);
  }
  for (size_t i = 0; i < yuen_rows.size(); ++i)
    std::cout << "r=" << yuen_rows[i].r << " yuen_center=" << yuen_rows[i].center_x
              << " caves_fidelity=" << caves_rows[i].fidelity_to_target
              << (caves_rows[i].guard_ok ? "" : " (truncation-degraded)") << '\n';
  return 0;
}

int cmd_state(const RunConfig& config, const std::string& kind, double alpha_re, double alpha_im,
              double r, double x, double p) {
  const FockDim dim(config.n_levels);
  const Complex alpha(alpha_re, alpha_im);
  VecC v;
  ordered_json params;
  if (kind == "coherent") {
    v = coherent_state(alpha, dim);
    params = {{"alpha_re", alpha_re}, {"alpha_im", alpha_im}};
  } else if (kind == "yuen") {
    v = yuen_state(alpha, r, dim);
    params = {{"alpha_re", alpha_re}, {"alpha_im", alpha_im}, {"r", r}};
  } else if (kind == "caves") {
    v = caves_state(alpha, r, dim);
    params = {{"alpha_re", alpha_re}, {"alpha_im", alpha_im}, {"r", r}};
  } else if (kind == "position") {
    v = position_eigenstate(x, dim);
    params = {{"x", x}};
  } else if (kind == "momentum") {
    v = momentum_eigenstate(p, dim);
    params = {{"p", p}};
  } else {
    std::cerr << "state: unknown kind '" << kind << "'\n";
    return 2;
  }
  auto f = open_output(config, "state.json");
  f << state_dump(kind, params, v).dump(2) << '\n';
  std::cout << "state: " << kind << " n_levels=" << dim.n_levels << " norm=" << v.norm() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated-oscillator laboratory for squeezed and position-like states"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON config file; flags override its values");
  app.add_option("--levels", g.levels, "number of retained basis levels");
  app.add_option("--buffer", g.buffer, "rows/cols excluded at the truncation edge");
  app.add_option("--out", g.out, "output directory");

  auto* verify = app.add_subcommand("verify", "run the operator-identity suite");
  verify->fallthrough();

  auto* husimi = app.add_subcommand("husimi", "sample the Husimi Q-function on a grid");
  husimi->fallthrough();
  double x = 0.0, re_min = -4.0, re_max = 4.0, im_min = -4.0, im_max = 4.0;
  int n_re = 81, n_im = 81;
  husimi->add_option("--x", x, "position label of the state")->required();
  husimi->add_option("--re_min", re_min, "lower Re(beta) bound");
  husimi->add_option("--re_max", re_max, "upper Re(beta) bound");
  husimi->add_option("--im_min", im_min, "lower Im(beta) bound");
  husimi->add_option("--im_max", im_max, "upper Im(beta) bound");
  husimi->add_option("--n_re", n_re, "samples along Re(beta)");
  husimi->add_option("--n_im", n_im, "samples along Im(beta)");

  auto* limits = app.add_subcommand("limits", "large-squeezing studies toward the position kernel");
  limits->fallthrough();
  double limits_x = 1.0;
  std::vector<double> r_list = {0.5, 1.0, 1.5, 2.0};
  limits->add_option("--x", limits_x, "position label")->required();
  limits->add_option("--r_list", r_list, "squeeze parameters")->delimiter(',');

  auto* state = app.add_subcommand("state", "dump a state's amplitudes as JSON");
  state->fallthrough();
  std::string kind;
  double alpha_re = 0.0, alpha_im = 0.0, r = 0.0, state_x = 0.0, state_p = 0.0;
  state->add_option("--kind", kind, "coherent|yuen|caves|position|momentum")->required();
  state->add_option("--alpha_re", alpha_re, "Re(alpha)");
  state->add_option("--alpha_im", alpha_im, "Im(alpha)");
  state->add_option("--r", r, "squeeze parameter");
  state->add_option("--x", state_x, "position value");
  state->add_option("--p", state_p, "momentum value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors are exit 2
  }

  try {
    const RunConfig config = resolve_config(g);
    if (app.got_subcommand(verify)) return cmd_verify(config);
    if (app.got_subcommand(husimi))
      return cmd_husimi(config, x, re_min, re_max, im_min, im_max, n_re, n_im);
    if (app.got_subcommand(limits)) return cmd_limits(config, limits_x, r_list);
    if (app.got_subcommand(state))
      return cmd_state(config, kind, alpha_re, alpha_im, r, state_x, state_p);
  } catch (const truncation_error& e) {
    std::cerr << "truncation guard: " << e.what() << '\n';
    return 1;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
