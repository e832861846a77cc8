#include "rcqm/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rcqm/clifford.hpp"
#include "rcqm/dynamics.hpp"
#include "rcqm/transforms.hpp"

namespace rcqm::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

std::array<double, 3> vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(where + " must be an array of three numbers");
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ConfigError(where + " must be an array of three numbers");
    v[i] = j[i].get<double>();
  }
  return v;
}

cplx complex_entry(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(where + " entries must be numbers or [re, im] pairs");
}

Experiment experiment_from(const std::string& s) {
  if (s == "verify_algebra") return Experiment::VerifyAlgebra;
  if (s == "verify_clifford") return Experiment::VerifyClifford;
  if (s == "evolve") return Experiment::Evolve;
  if (s == "equivalence") return Experiment::Equivalence;
  if (s == "conservation") return Experiment::Conservation;
  throw ConfigError("unknown experiment '" + s + "'");
}

std::vector<double> number_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : j) {
    if (!x.is_number()) throw ConfigError(where + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

void validate(const RunConfig& c) {
  try {
    rcqm::validate(c.grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (c.initial == InitialState::Gaussian) {
    const auto [lo, hi] = packet_width_bounds(c.grid);
    if (!(c.packet.width >= lo && c.packet.width <= hi))
      throw ConfigError("packet.width " + std::to_string(c.packet.width) + " outside the admissible range [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
    double pn = 0;
    for (const auto& p : c.packet.polarization) pn += std::norm(p);
    if (pn == 0) throw ConfigError("packet.polarization is zero");
  }
  if (c.plane_wave_alpha < 1 || c.plane_wave_alpha > 4) throw ConfigError("plane_wave.alpha must be 1..4");
  const int half = (c.grid.n_per_axis - 1) / 2;
  for (int a = 0; a < 3; ++a) {
    const int o = c.plane_wave_offsets[a];
    if (a >= c.grid.dim ? o != 0 : std::abs(o) > half)
      throw ConfigError("plane_wave.k_offsets outside the momentum lattice");
  }
  if (c.horizon && !(*c.horizon >= 0 && std::isfinite(*c.horizon))) throw ConfigError("horizon must be >= 0");
  if (c.checkpoints && *c.checkpoints < 2) throw ConfigError("checkpoints must be at least 2");
  if (c.tolerance && !(*c.tolerance > 0)) throw ConfigError("tolerance must be positive");
  if (c.snapshot_stride < 0) throw ConfigError("snapshot_stride must be >= 0");
  if (c.realizations.empty()) throw ConfigError("realizations must not be empty");
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(3) << v;
  return s.str();
}

std::vector<double> checkpoint_times(double horizon, int checkpoints) {
  std::vector<double> t;
  for (int i = 1; i <= checkpoints; ++i) t.push_back(horizon * i / checkpoints);
  return t;
}

}  // namespace

RunConfig parse_config(const json& j) {
  reject_unknown(j,
                 {"schema_version", "experiment", "grid", "state", "packet", "plane_wave", "seed", "picture", "horizon",
                  "checkpoints", "times", "algebra_times", "realizations", "conventions", "tolerance", "output_dir",
                  "snapshot_stride", "debug"},
                 "config");
  if (!j.contains("schema_version")) throw ConfigError("config.schema_version is required");
  const int version = get<int>(j, "schema_version", "config");
  if (version != kSchemaVersion)
    throw ConfigError("unsupported schema_version " + std::to_string(version) + " (expected " +
                      std::to_string(kSchemaVersion) + ")");

  RunConfig c;
  if (j.contains("experiment")) c.experiment = experiment_from(get<std::string>(j, "experiment", "config"));
  if (j.contains("grid")) {
    const json& g = j["grid"];
    reject_unknown(g, {"dim", "n", "box_length", "mass"}, "grid");
    if (g.contains("dim")) c.grid.dim = get<int>(g, "dim", "grid");
    if (g.contains("n")) c.grid.n_per_axis = get<int>(g, "n", "grid");
    if (g.contains("box_length")) c.grid.box_length = get<double>(g, "box_length", "grid");
    if (g.contains("mass")) c.grid.mass = get<double>(g, "mass", "grid");
  }
  if (j.contains("state")) {
    const auto s = get<std::string>(j, "state", "config");
    if (s == "gaussian") c.initial = InitialState::Gaussian;
    else if (s == "plane_wave") c.initial = InitialState::PlaneWave;
    else if (s == "random") c.initial = InitialState::Random;
    else throw ConfigError("unknown state '" + s + "'");
  }
  if (j.contains("packet")) {
    const json& p = j["packet"];
    reject_unknown(p, {"center_x", "center_k", "width", "polarization"}, "packet");
    if (p.contains("center_x")) c.packet.center_x = vec3(p["center_x"], "packet.center_x");
    if (p.contains("center_k")) c.packet.center_k = vec3(p["center_k"], "packet.center_k");
    if (p.contains("width")) c.packet.width = get<double>(p, "width", "packet");
    if (p.contains("polarization")) {
      const json& pol = p["polarization"];
      if (!pol.is_array() || pol.size() != 4) throw ConfigError("packet.polarization must have four entries");
      for (std::size_t i = 0; i < 4; ++i) c.packet.polarization[i] = complex_entry(pol[i], "packet.polarization");
    }
  }
  if (j.contains("plane_wave")) {
    const json& p = j["plane_wave"];
    reject_unknown(p, {"k_offsets", "alpha"}, "plane_wave");
    if (p.contains("k_offsets")) {
      const auto v = vec3(p["k_offsets"], "plane_wave.k_offsets");
      for (int a = 0; a < 3; ++a) {
        if (v[a] != std::round(v[a])) throw ConfigError("plane_wave.k_offsets must be integers");
        c.plane_wave_offsets[a] = static_cast<int>(v[a]);
      }
    }
    if (p.contains("alpha")) c.plane_wave_alpha = get<int>(p, "alpha", "plane_wave");
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "config");
  if (j.contains("picture")) {
    try {
      c.picture = picture_from_string(get<std::string>(j, "picture", "config"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("horizon")) c.horizon = get<double>(j, "horizon", "config");
  if (j.contains("checkpoints")) c.checkpoints = get<int>(j, "checkpoints", "config");
  if (j.contains("times")) c.times = number_list(j["times"], "times");
  if (j.contains("algebra_times")) c.algebra_times = number_list(j["algebra_times"], "algebra_times");
  if (j.contains("realizations")) {
    c.realizations.clear();
    for (const auto& r : j["realizations"]) {
      try {
        c.realizations.push_back(realization_from_string(r.get<std::string>()));
      } catch (const std::exception& e) {
        throw ConfigError(std::string("realizations: ") + e.what());
      }
    }
  }
  if (j.contains("conventions")) {
    c.conventions.clear();
    for (const auto& r : j["conventions"]) {
      const auto s = r.is_string() ? r.get<std::string>() : std::string();
      if (s == "Hermitian") c.conventions.push_back(Convention::Hermitian);
      else if (s == "Prime") c.conventions.push_back(Convention::Prime);
      else throw ConfigError("conventions entries must be \"Hermitian\" or \"Prime\"");
    }
  }
  if (j.contains("tolerance")) c.tolerance = get<double>(j, "tolerance", "config");
  if (j.contains("output_dir")) c.output_dir = get<std::string>(j, "output_dir", "config");
  if (j.contains("snapshot_stride")) c.snapshot_stride = get<int>(j, "snapshot_stride", "config");
  if (j.contains("debug")) {
    const json& d = j["debug"];
    reject_unknown(d, {"corrupt_gamma", "flip_vminus", "drop_spin_j12"}, "debug");
    if (d.contains("corrupt_gamma")) c.debug.corrupt_gamma = get<bool>(d, "corrupt_gamma", "debug");
    if (d.contains("flip_vminus")) c.debug.flip_vminus = get<bool>(d, "flip_vminus", "debug");
    if (d.contains("drop_spin_j12")) c.debug.drop_spin_j12 = get<bool>(d, "drop_spin_j12", "debug");
  }
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

RunConfig quick_config(RunConfig base) {
  base.grid.dim = 1;
  base.grid.n_per_axis = 101;
  base.grid.box_length = 80;
  base.packet.center_x = {base.packet.center_x[0], 0, 0};
  base.packet.center_k = {std::sqrt(base.packet.center_k[0] * base.packet.center_k[0] +
                                    base.packet.center_k[1] * base.packet.center_k[1] +
                                    base.packet.center_k[2] * base.packet.center_k[2]),
                          0, 0};
  base.plane_wave_offsets = {base.plane_wave_offsets[0], 0, 0};
  validate(base);
  return base;
}

State initial_state(const RunConfig& config) {
  const GridPtr grid = make_grid(config.grid);
  switch (config.initial) {
    case InitialState::PlaneWave:
      return plane_wave(grid, config.plane_wave_offsets, config.plane_wave_alpha);
    case InitialState::Random:
      return random_state(grid, config.seed);
    case InitialState::Gaussian:
      break;
  }
  return gaussian_packet(grid, config.packet);
}

// ---------------------------------------------------------------------------

int cmd_verify_clifford(std::ostream& report, std::ostream& log, bool corrupt_gamma) {
  using namespace clifford;
  using R = Representation;
  struct Row {
    std::string name;
    std::string representation;
    bool pass;
  };
  std::vector<Row> rows;
  auto check = [&rows](std::string name, std::string rep, bool ok) { rows.push_back({std::move(name), std::move(rep), ok}); };

  std::array<MatrixOperator, 5> pd = gamma_set(R::PauliDirac);
  if (corrupt_gamma) pd[1].matrix(0, 3) = -pd[1].matrix(0, 3);
  const std::array<MatrixOperator, 5> qm = gamma_set(R::QuantumMechanical);
  const ComplexRational i = ComplexRational::i();
  const ComplexRational quarter_i(0, 1, 1, 4);

  for (const auto& [rep, set] : {std::pair{R::PauliDirac, pd}, std::pair{R::QuantumMechanical, qm}}) {
    for (int mu = 0; mu < 5; ++mu)
      for (int nu = mu; nu < 5; ++nu) {
        const MatrixOperator ac = anticommutator(set[mu], set[nu]);
        const Matrix4 expected = ComplexRational(2 * metric(mu, nu)) * Matrix4::identity();
        const bool ok = ac.matrix == expected && (!ac.antilinear || expected.is_zero());
        check("anticommutator(" + std::to_string(mu) + "," + std::to_string(nu) + ")", to_string(rep), ok);
      }
  }

  const BlockOperator v = involution_v();
  for (int mu = 0; mu < 5; ++mu)
    check("v gamma" + std::to_string(mu) + " v", "both", compose(compose(v, BlockOperator(pd[mu])), v) == BlockOperator(qm[mu]));
  check("v v = I", "both", compose(v, v) == BlockOperator(MatrixOperator::identity()));

  for (R rep : {R::PauliDirac, R::QuantumMechanical}) {
    const auto s = spin(rep);
    for (int j = 0; j < 3; ++j) {
      const int l = (j + 1) % 3, n = (j + 2) % 3;
      check("[s" + std::to_string(j + 1) + ",s" + std::to_string(l + 1) + "] = i s" + std::to_string(n + 1),
            to_string(rep), commutator(s[j], s[l]) == scale(i, s[n]));
    }
    const auto& set = rep == R::PauliDirac ? pd : qm;
    for (int j = 0; j < 3; ++j) {
      const int l = (j + 1) % 3 + 1, n = (j + 2) % 3 + 1;
      check("s" + std::to_string(j + 1) + " = (i/4)[gamma" + std::to_string(l) + ",gamma" + std::to_string(n) + "]",
            to_string(rep), scale(quarter_i, commutator(set[l], set[n])) == s[j]);
    }
  }

  const MatrixOperator g = charge_sign();
  check("g = -gamma0", "both", g == scale(-1, pd[0]));
  check("g g = I", "both", compose(g, g) == MatrixOperator::identity());
  const auto sq = spin(R::QuantumMechanical);
  for (int j = 0; j < 3; ++j)
    check("[g,s" + std::to_string(j + 1) + "] = 0", to_string(R::QuantumMechanical), commutator(g, sq[j]).matrix.is_zero());
  const ComplexRational half(1, 2, 0, 1);
  check("s3 = diag(1,-1,-1,1)/2", to_string(R::QuantumMechanical),
        sq[2] == MatrixOperator{Matrix4::diagonal({half, -half, -half, half}), false});
  for (int j = 1; j <= 3; ++j) check("sigma" + std::to_string(j) + "^2 = I", "pauli", pauli(j) * pauli(j) == Matrix2::identity());
  check("sigma1 sigma2 = i sigma3", "pauli", pauli(1) * pauli(2) == i * pauli(3));

  json out;
  out["identities"] = json::array();
  int failed = 0;
  for (const auto& r : rows) {
    out["identities"].push_back({{"name", r.name}, {"representation", r.representation}, {"status", r.pass ? "PASS" : "FAIL"}});
    if (!r.pass) {
      ++failed;
      log << "FAIL " << r.representation << ": " << r.name << '\n';
    }
  }
  out["passed"] = rows.size() - failed;
  out["failed"] = failed;
  report << out.dump(2) << '\n';
  log << (rows.size() - failed) << "/" << rows.size() << " exact identities hold\n";
  return failed == 0 ? kOk : kCliffordFailure;
}

int cmd_verify_algebra(const RunConfig& config, bool quick, std::ostream& csv, std::ostream& log) {
  const double tol = config.tolerance.value_or(1e-7);
  const State f = initial_state(config);
  GeneratorOptions options;
  if (config.debug.drop_spin_j12) options.drop_spin = Generator::J12;
  const std::vector<Generator> quick_subset{Generator::P0, Generator::P1, Generator::J01};
  const std::span<const Generator> subset =
      quick || config.grid.dim == 1 ? std::span<const Generator>(quick_subset) : std::span<const Generator>(kAllGenerators);

  csv << "realization,convention,t,a,b,expected,residual,status\n";
  int breaches = 0;
  double worst = 0;
  for (GeneratorRealization r : config.realizations) {
    State base = f;
    if (r == GeneratorRealization::FW) base = apply_v(f);
    if (r == GeneratorRealization::DiracInduced || r == GeneratorRealization::DiracLocal) base = apply_W(f);
    if (r == GeneratorRealization::Amplitude) base = decompose(f).as_field();
    for (Convention conv : config.conventions) {
      for (double t : config.algebra_times) {
        State at = r == GeneratorRealization::Amplitude ? base : evolve(base, t);
        at.t = t;
        for (const auto& res : commutator_sweep(r, conv, at, options, subset)) {
          const bool ok = res.residual <= tol;
          worst = std::max(worst, res.residual);
          csv << to_string(r) << ',' << to_string(conv) << ',' << fmt(t) << ',' << to_string(res.a) << ','
              << to_string(res.b) << ',' << res.expected << ',' << sci(res.residual) << ',' << (ok ? "PASS" : "FAIL")
              << '\n';
          if (!ok) {
            ++breaches;
            log << "residual breach: " << to_string(r) << " [" << to_string(res.a) << "," << to_string(res.b)
                << "] at t=" << t << ": " << sci(res.residual) << " > " << sci(tol) << '\n';
          }
        }
      }
    }
  }
  log << "max residual " << sci(worst) << " (tolerance " << sci(tol) << "), " << breaches << " breaches\n";
  return breaches == 0 ? kOk : kAlgebraFailure;
}

int cmd_equivalence(const RunConfig& config, std::ostream& report, std::ostream& log) {
  const double tol = config.tolerance.value_or(1e-10);
  constexpr double kQuantityTolerance = 1e-8;
  const State f = initial_state(config);
  VpmOptions vopt;
  vopt.flip_vminus = config.debug.flip_vminus;
  const TransitionPair vpm = build_Vpm(f.grid, vopt);

  std::vector<double> times = config.times;
  if (times.empty()) times = checkpoint_times(config.horizon.value_or(10.0), config.checkpoints.value_or(20));
  const IntertwiningReport paths = check_intertwinings(f, times, vpm);

  const AmplitudeSet amps = decompose(f);
  const auto rcqm_amplitude = amplitude_quantities(amps);
  const auto fw_amplitude = fw_amplitude_quantities(amps);

  json out;
  out["branch"] = vpm.branch;
  out["tolerance"] = tol;
  out["quantity_tolerance"] = kQuantityTolerance;
  out["checkpoints"] = json::array();
  double worst_quantity = 0;
  bool ok = paths.max_dirac <= tol && paths.max_fw <= tol;
  // A plane wave fills the torus, so only the momenta are compared.
  std::vector<std::size_t> compared = comparable_quantities(f.grid->dim());
  if (config.initial == InitialState::PlaneWave) compared = {0, 1, 2, 3};
  for (const auto& row : paths.rows) {
    const State f_t = evolve_sf(f, row.t);
    const ConservedReport rcqm = conserved_quantities(f_t, &vpm);
    const ConservedReport fw = conserved_quantities(apply_v(f_t), &vpm);
    const ConservedReport dirac = conserved_quantities(evolve_dirac(apply_W(f, vpm), row.t), &vpm);
    double fw_dirac = 0, fw_amp = 0, rcqm_amp = 0, rcqm_fw = 0;
    for (std::size_t i : compared) {
      fw_dirac = std::max(fw_dirac, std::abs(fw.values[i] - dirac.values[i]));
      fw_amp = std::max(fw_amp, std::abs(fw.values[i] - fw_amplitude[i]));
      rcqm_amp = std::max(rcqm_amp, std::abs(rcqm.values[i] - rcqm_amplitude[i]));
      rcqm_fw = std::max(rcqm_fw, std::abs(rcqm.values[i] - fw.values[i]));
    }
    worst_quantity = std::max({worst_quantity, fw_dirac, fw_amp, rcqm_amp});
    out["checkpoints"].push_back({{"t", row.t},
                                  {"fw_residual", row.fw},
                                  {"dirac_residual", row.dirac},
                                  {"dirac_inverse_residual", row.dirac_inverse},
                                  {"fw_vs_dirac", fw_dirac},
                                  {"fw_vs_fw_amplitude", fw_amp},
                                  {"rcqm_vs_amplitude", rcqm_amp},
                                  {"rcqm_vs_fw", rcqm_fw}});
  }
  ok = ok && worst_quantity <= kQuantityTolerance;
  out["max_fw_residual"] = paths.max_fw;
  out["max_dirac_residual"] = paths.max_dirac;
  out["max_quantity_delta"] = worst_quantity;
  out["status"] = ok ? "PASS" : "FAIL";
  report << out.dump(2) << '\n';
  log << "two-path residuals: fw " << sci(paths.max_fw) << ", dirac " << sci(paths.max_dirac) << "; quantity deltas "
      << sci(worst_quantity) << '\n';
  if (!ok) log << "equivalence breach (tolerance " << sci(tol) << ")\n";
  return ok ? kOk : kEquivalenceFailure;
}

int cmd_evolve(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& log) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + out_dir.string() + ": " + ec.message());

  const State f = initial_state(config);
  const TransitionPair vpm = build_Vpm(f.grid);
  State start = f;
  if (config.picture == Picture::FW) start = apply_v(f);
  if (config.picture == Picture::Dirac) start = apply_W(f, vpm);

  const double horizon = config.horizon.value_or(20.0);
  const int checkpoints = config.checkpoints.value_or(50);
  const int stride = config.snapshot_stride > 0 ? config.snapshot_stride : checkpoints - 1;

  auto open = [&out_dir](const std::string& name) {
    const auto path = out_dir / name;
    std::ofstream s(path);
    if (!s) throw std::runtime_error("cannot write " + path.string());
    return s;
  };

  ConservationRun run;
  run.picture = start.picture;
  for (int c = 0; c < checkpoints; ++c) {
    const double t = horizon * c / (checkpoints - 1);
    const State s = evolve(start, t);
    run.checkpoints.push_back(conserved_quantities(s, &vpm));
    std::ostringstream idx;
    idx << std::setw(3) << std::setfill('0') << c;
    {
      auto m = open("marginals_" + idx.str() + ".csv");
      write_marginals_csv(m, s);
    }
    if (c % stride == 0 || c == checkpoints - 1) {
      auto snap = open("snapshot_" + idx.str() + ".json");
      write_snapshot(snap, s);
    }
  }
  const auto& first = run.checkpoints.front().values;
  for (const auto& cp : run.checkpoints)
    for (std::size_t i = 0; i < kQuantityCount; ++i)
      run.drift[i] = std::max(run.drift[i], std::abs(cp.values[i] - first[i]));
  {
    auto csv = open("conservation.csv");
    write_conservation_csv(csv, run);
  }
  {
    auto js = open("conservation.json");
    write_conservation_json(js, run);
  }
  const double tol = config.tolerance.value_or(1e-9);
  log << to_string(run.picture) << " evolution to t=" << horizon << " over " << checkpoints
      << " checkpoints, max drift " << sci(run.max_drift()) << (run.max_drift() <= tol ? " (within " : " (exceeds ")
      << sci(tol) << ")\n";
  for (std::size_t i = 0; i < kQuantityCount; ++i)
    if (run.drift[i] > tol) log << "  drift " << to_string(quantity_at(i)) << " = " << sci(run.drift[i]) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------

int run(int argc, char** argv) {
  CLI::App app{"Spin-1/2 doublet: canonical, Foldy-Wouthuysen and Dirac models on a periodic grid"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quick = false;
  std::optional<double> tolerance;
  app.add_flag("--quick", quick, "one-dimensional smoke mode (n = 101, L = 80)");
  app.add_option("--tolerance", tolerance, "override the pass threshold of the command");

  auto* clifford_cmd = app.add_subcommand("verify-clifford", "exact Clifford, spin and involution identities");
  bool corrupt = false;
  clifford_cmd->add_flag("--corrupt-gamma", corrupt, "flip one entry of gamma1 (negative control)");

  std::string config_path;
  std::string report_path;
  auto* algebra_cmd = app.add_subcommand("verify-algebra", "commutator residuals of every generator realization");
  auto* equivalence_cmd = app.add_subcommand("equivalence", "two-path evolution and cross-picture quantities");
  auto* evolve_cmd = app.add_subcommand("evolve", "evolution with snapshots and conservation report");
  bool drop_spin = false, flip_vminus = false;
  std::string out_dir;
  for (auto* cmd : {algebra_cmd, equivalence_cmd, evolve_cmd}) {
    cmd->add_option("--config", config_path, "JSON run configuration");
    cmd->add_option("--report", report_path, "write the report here instead of stdout");
  }
  algebra_cmd->add_flag("--drop-spin-j12", drop_spin, "omit the spin term of j12 (negative control)");
  equivalence_cmd->add_flag("--flip-vminus", flip_vminus, "use the wrong sign in V- (negative control)");
  evolve_cmd->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (clifford_cmd->parsed()) return cmd_verify_clifford(std::cout, std::cerr, corrupt);

    RunConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    else if (!quick) throw ConfigError("--config is required outside --quick mode");
    if (quick) config = quick_config(config);
    if (tolerance) {
      if (!(*tolerance > 0)) throw ConfigError("--tolerance must be positive");
      config.tolerance = tolerance;
    }
    config.debug.drop_spin_j12 = config.debug.drop_spin_j12 || drop_spin;
    config.debug.flip_vminus = config.debug.flip_vminus || flip_vminus;

    std::ofstream report_file;
    if (!report_path.empty()) {
      report_file.open(report_path);
      if (!report_file) throw ConfigError("cannot write report " + report_path);
    }
    std::ostream& report = report_path.empty() ? std::cout : report_file;

    const auto start = std::chrono::steady_clock::now();
    int code = kOk;
    if (algebra_cmd->parsed()) code = cmd_verify_algebra(config, quick, report, std::cerr);
    if (equivalence_cmd->parsed()) code = cmd_equivalence(config, report, std::cerr);
    if (evolve_cmd->parsed()) {
      std::filesystem::path dir = out_dir;
      code = cmd_evolve(config, dir, std::cerr);
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "elapsed " << std::fixed << std::setprecision(2) << elapsed.count() << " s\n";
    return code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace rcqm::cli
