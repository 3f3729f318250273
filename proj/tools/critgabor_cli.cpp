// critgabor: batch front-end. Exit status 0 ok, 1 invariant failure, 2 input error.
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "critgabor/certainty.hpp"
#include "critgabor/config.hpp"
#include "critgabor/expansion.hpp"
#include "critgabor/gabor.hpp"
#include "critgabor/higher.hpp"
#include "critgabor/io.hpp"
#include "critgabor/metaplectic.hpp"
#include "critgabor/verify.hpp"

using namespace critgabor;
using nlohmann::json;

namespace {

struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  long long seed = -1;
  std::string output;
};

RunConfig load(const Common& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  for (const auto& a : o.overrides) apply_override(cfg, a);
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  if (!o.output.empty()) cfg.output = o.output;
  validate(cfg);
  return cfg;
}

// Signals are read onto the configured grid when their own grid differs only by zero padding.
SampledSignal load_signal(const std::string& path, const RunConfig& cfg) {
  SampledSignal f = read_signal_file(path);
  const Grid g = cfg.grid();
  if (f.grid() == g) return f;
  if (std::abs(f.grid().step() - g.step()) > 1e-15 || f.grid().half_width() > g.half_width())
    throw InputError(path + ": signal grid (T=" + format_double(f.grid().half_width()) +
                     ", h=" + format_double(f.grid().step()) + ") is incompatible with the configuration");
  SampledSignal out(g);
  const long off = g.index_of(f.grid().x(0));
  if (off < 0) throw InputError(path + ": signal grid is not aligned with the configured grid");
  for (std::size_t i = 0; i < f.size(); ++i) out[static_cast<std::size_t>(off) + i] = f[i];
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw InputError("cannot write " + path);
  os << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(const RunConfig& cfg, const std::string& command) {
  return {{"command", command}, {"config_hash", config_hash(cfg)}};
}

int cmd_analyze(const Common& o, const std::string& in, const std::string& field_path) {
  const RunConfig cfg = load(o);
  const SampledSignal f = load_signal(in, cfg);
  const GaborField v = gabor_transform(f, cfg.box, cfg.phase_spacing);
  const double n2 = std::pow(l2norm(f), 2);
  json j = header(cfg, "analyze");
  j["norm"] = std::sqrt(n2);
  j["hdelta_norm"] = hdelta_norm(v, cfg.delta);
  j["delta"] = cfg.delta;
  j["field_mass"] = v.mass();
  j["parseval_ratio"] = n2 > 0.0 ? v.mass() / n2 : 1.0;
  j["sharp_functional"] = {sharp_functional(f, cfg.theta()).real(), sharp_functional(f, cfg.theta()).imag()};
  if (!field_path.empty()) {
    std::ofstream os(field_path);
    if (!os) throw InputError("cannot write " + field_path);
    write_gabor_csv(v, os);
    j["field_csv"] = field_path;
  }
  emit(dump(j), cfg.output);
  return 0;
}

int cmd_synthesize(const Common& o, const std::string& in) {
  const RunConfig cfg = load(o);
  std::ifstream is(in);
  if (!is) throw InputError("cannot open " + in);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw InputError(in + ": " + e.what());
  }
  OrderMExpansion om;
  SampledSignal f(cfg.grid());
  if (order_m_from_json(j, om)) {
    if (om.m > kMaxOrder) throw InputError(in + ": order exceeds the cap of 6");
    f = synthesize_order_m(om, cfg.grid());
  } else {
    f = synthesize(coefficients_from_json(j), cfg.grid());
  }
  if (cfg.output.empty()) {
    write_signal_csv(f, std::cout);
  } else {
    write_signal_file(f, cfg.output);
  }
  return 0;
}

int cmd_expand(const Common& o, const std::string& in) {
  const RunConfig cfg = load(o);
  const SampledSignal f = load_signal(in, cfg);
  const ExpansionOptions opt = cfg.expansion();
  json j = header(cfg, "expand");
  const double nf = l2norm(f);
  const SampledSignal wide = pad_for_atoms(f, cfg.cutoff + std::abs(cfg.sharp_k) + 1.0);
  SampledSignal rebuilt(wide.grid());
  double l2 = 0.0, seam = 0.0;
  if (cfg.m == 0) {
    const RelaxedExpansion e = relaxed_coefficients(f, cfg.cutoff, opt);
    j.update(expansion_to_json(e));
    rebuilt = synthesize(e.all(), wide.grid());
    l2 = e.coefficient_l2;
    seam = e.seam_mismatch;
  } else {
    if (cfg.sharp_k != 0 || cfg.sharp_j != 0) throw ConfigError("sharp", "relocation is only supported for m = 0");
    const OrderMExpansion e = order_m_coefficients(f, cfg.m, {}, cfg.cutoff, opt);
    j.update(expansion_to_json(e));
    rebuilt = synthesize_order_m(e, wide.grid());
    l2 = std::sqrt(flatten(e).norm2());
    seam = e.seam_mismatch;
  }
  j["diagnostics"] = {{"residual", nf > 0.0 ? l2norm(wide - rebuilt) / nf : 0.0},
                      {"l2", l2},
                      {"hdelta", hdelta_norm(f, cfg.delta, cfg.phase_spacing)},
                      {"seam_mismatch", seam}};
  emit(dump(j), cfg.output);
  return 0;
}

int cmd_decompose(const Common& o, const std::string& in, const std::string& domain_path) {
  const RunConfig cfg = load(o);
  const SampledSignal f = load_signal(in, cfg);
  std::ifstream is(domain_path);
  if (!is) throw InputError("cannot open " + domain_path);
  json dj;
  try {
    is >> dj;
  } catch (const json::exception& e) {
    throw InputError(domain_path + ": " + e.what());
  }
  const PhaseDomain K = domain_from_json(dj);
  const CertaintyDecomposition d = decompose(f, K, cfg.r, cfg.m, cfg.certainty());
  json j = header(cfg, "decompose");
  j.update(decomposition_to_json(d));
  if (!cfg.residual_output.empty()) {
    write_signal_file(d.residual, cfg.residual_output);
    j["residual_file"] = cfg.residual_output;
  }
  emit(dump(j), cfg.output);
  return 0;
}

int cmd_rotate(const Common& o, const std::string& in, double angle) {
  const RunConfig cfg = load(o);
  const SampledSignal g = metaplectic_apply(Rotation(angle), load_signal(in, cfg));
  if (cfg.output.empty()) {
    write_signal_csv(g, std::cout);
  } else {
    write_signal_file(g, cfg.output);
  }
  return 0;
}

int cmd_verify(const Common& o) {
  const RunConfig cfg = load(o);
  const VerifyReport r = run_verify(cfg);
  emit(r.text(), cfg.output);
  return r.all_passed() ? 0 : 1;
}

int cmd_theta(const Common& o, double re, double im, double x) {
  const RunConfig cfg = load(o);
  const cplx t = theta({re, im}, cfg.theta());
  json j = header(cfg, "theta");
  j["z"] = {re, im};
  j["theta"] = {t.real(), t.imag()};
  j["x"] = x;
  j["I"] = loc_integral(x);
  emit(dump(j), cfg.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gabor expansions at critical density"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("-c,--config", common.config_path, "JSON configuration file");
    sub->add_option("-s,--set", common.overrides, "override a setting, key=value");
    sub->add_option("--seed", common.seed, "seed for randomized checks");
    sub->add_option("-o,--output", common.output, "output file (default stdout)");
  };

  std::string input, field_path, domain_path;
  double angle = 0.0, re = 0.0, im = 0.0, x = 0.0;

  auto* analyze = app.add_subcommand("analyze", "Gabor transform summary of a signal");
  analyze->add_option("signal", input, "signal file (CSV x,re,im or JSON)")->required();
  analyze->add_option("--field", field_path, "write the Gabor field as CSV");
  add_common(analyze);

  auto* synth = app.add_subcommand("synthesize", "signal from a coefficient file");
  synth->add_option("coefficients", input, "coefficient JSON")->required();
  add_common(synth);

  auto* expand = app.add_subcommand("expand", "relaxed (m = 0) or order-m expansion");
  expand->add_option("signal", input)->required();
  add_common(expand);

  auto* decomp = app.add_subcommand("decompose", "certainty decomposition over a domain");
  decomp->add_option("signal", input)->required();
  decomp->add_option("-d,--domain", domain_path, "domain JSON")->required();
  add_common(decomp);

  auto* rotate = app.add_subcommand("rotate", "metaplectic operator of a phase-plane rotation");
  rotate->add_option("signal", input)->required();
  rotate->add_option("-a,--angle", angle, "rotation angle in radians")->required();
  add_common(rotate);

  auto* verify = app.add_subcommand("verify", "invariant suite");
  add_common(verify);

  auto* th = app.add_subcommand("theta", "Theta(z) and I(x)");
  th->add_option("--re", re);
  th->add_option("--im", im);
  th->add_option("-x", x);
  add_common(th);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analyze) return cmd_analyze(common, input, field_path);
    if (*synth) return cmd_synthesize(common, input);
    if (*expand) return cmd_expand(common, input);
    if (*decomp) return cmd_decompose(common, input, domain_path);
    if (*rotate) return cmd_rotate(common, input, angle);
    if (*verify) return cmd_verify(common);
    if (*th) return cmd_theta(common, re, im, x);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
