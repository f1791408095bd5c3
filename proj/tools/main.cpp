// Command-line front end: configures a scenario, runs the corresponding
// calculator and exports CSV data, a JSON run summary and a machine-readable
// column schema.

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quench/chains.hpp"
#include "quench/cho2.hpp"
#include "quench/ensembles.hpp"
#include "quench/fieldtheory.hpp"
#include "quench/presets.hpp"
#include "quench/rotor2.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// formatting and output helpers

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Column {
  std::string name;
  std::string description;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<double>> rows;
};

void write_csv(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  for (size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i].name;
  out << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << fmt17(row[i]);
    out << "\n";
  }
}

void write_schema(const std::filesystem::path& path, const Table& table) {
  json schema = json::array();
  for (const auto& c : table.columns)
    schema.push_back({{"name", c.name}, {"description", c.description}});
  std::ofstream out(path);
  out << schema.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// time grids: "a:b:n" linear or "log:a:b:n" log-spaced

std::vector<double> parse_time_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);

  bool log_spaced = !parts.empty() && parts[0] == "log";
  if (log_spaced) parts.erase(parts.begin());
  if (parts.size() != 3)
    throw std::invalid_argument("time grid must be [log:]start:stop:count");
  const double a = std::stod(parts[0]);
  const double b = std::stod(parts[1]);
  const int n = std::stoi(parts[2]);
  if (n < 1 || b < a) throw std::invalid_argument("bad time grid bounds");
  if (log_spaced && a <= 0.0)
    throw std::invalid_argument("log grid requires start > 0");

  std::vector<double> ts(n);
  if (n == 1) {
    ts[0] = a;
    return ts;
  }
  for (int i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / (n - 1);
    ts[i] = log_spaced ? a * std::pow(b / a, f) : a + f * (b - a);
  }
  return ts;
}

// ---------------------------------------------------------------------------
// flat key=value config files; section headers in brackets are ignored

std::map<std::string, std::string> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config file not found: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    for (auto& c : key)
      if (c == '-') c = '_';
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

// ---------------------------------------------------------------------------
// run options

struct Options {
  std::string scenario;
  double omega_sq = 10.0;
  double kappa = 100.0;
  double omega_f = 0.0;
  std::string cutoff = "auto";  // rotor momentum cutoff M, or "auto"
  int sites = 32;
  std::string time_grid;
  std::string preset;
  std::string output = ".";
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = machine default
  int kmax = 8;     // fieldtheory: highest reported mode
  // condensate parameters (fieldtheory without a preset)
  double length = 49e-6;
  double density_1d = 70e6;
  double g_1d = 8.594e-39;
  double mass = 1.433e-25;
  double tunnel_rate = 2.0 * std::acos(-1.0) * 0.76;
  double temperature = 49e-9;
};

int resolve_cutoff(const Options& opt) {
  if (opt.cutoff == "auto")
    return quench::rotor2::auto_cutoff(opt.omega_sq, opt.kappa);
  const int m = std::stoi(opt.cutoff);
  if (m < 1) throw std::invalid_argument("cutoff M must be >= 1 or 'auto'");
  return m;
}

quench::fieldtheory::CondensateParams condensate_from(const Options& opt) {
  quench::fieldtheory::CondensateParams p{};
  p.length = opt.length;
  p.density_1d = opt.density_1d;
  p.g_1d = opt.g_1d;
  p.mass = opt.mass;
  p.tunnel_rate = opt.tunnel_rate;
  p.temperature = opt.temperature;
  return p;
}

json config_echo(const Options& opt) {
  json j;
  j["scenario"] = opt.scenario;
  j["preset"] = opt.preset;
  j["omega_sq"] = opt.omega_sq;
  j["kappa"] = opt.kappa;
  j["omega_f"] = opt.omega_f;
  j["cutoff"] = opt.cutoff;
  j["sites"] = opt.sites;
  j["time_grid"] = opt.time_grid;
  j["seed"] = opt.seed;
  j["threads"] = opt.threads;
  if (opt.scenario == "fieldtheory") {
    j["length"] = opt.length;
    j["density_1d"] = opt.density_1d;
    j["g_1d"] = opt.g_1d;
    j["mass"] = opt.mass;
    j["tunnel_rate"] = opt.tunnel_rate;
    j["temperature"] = opt.temperature;
  }
  return j;
}

// ---------------------------------------------------------------------------
// scenarios: each fills a table and a scalar summary

void run_cho2(const Options& opt, Table& table, json& scalars) {
  quench::cho2::ChoQuench q{std::sqrt(opt.omega_sq), opt.kappa, opt.omega_f};
  const auto ts = parse_time_grid(
      opt.time_grid.empty() ? "log:1e-1:1e4:200" : opt.time_grid);

  table.columns = {{"t", "time after the quench"},
                   {"S", "entanglement entropy, nats"},
                   {"xi", "Mehler kernel parameter"},
                   {"l_Xs", "position symmetric coherence length"},
                   {"l_Xa", "position antisymmetric coherence length"},
                   {"l_Ps", "momentum symmetric coherence length"},
                   {"l_Pa", "momentum antisymmetric coherence length"}};
  double s_max = 0.0, t_max = 0.0;
  for (const auto& pt : quench::cho2::entanglement_entropy_series(q, ts)) {
    table.rows.push_back(
        {pt.t, pt.entropy, pt.xi, pt.l_xs, pt.l_xa, pt.l_ps, pt.l_pa});
    if (pt.entropy > s_max) {
      s_max = pt.entropy;
      t_max = pt.t;
    }
  }
  scalars["S_max"] = s_max;
  scalars["t_at_S_max"] = t_max;
}

void run_rotor2(const Options& opt, Table& table, json& scalars) {
  const int m = resolve_cutoff(opt);
  const auto ts =
      parse_time_grid(opt.time_grid.empty() ? "0:30:600" : opt.time_grid);

  // an explicit --M is taken as given; the boundary weight is reported in the
  // summary so the truncation quality stays visible
  const auto h_pre = quench::rotor2::build_hamiltonian(m, opt.omega_sq, opt.kappa);
  const auto ground = quench::rotor2::ground_state(h_pre, m, 1.0);
  if (ground.boundary_weight > 1e-8)
    std::cerr << "warning: ground-state boundary weight "
              << ground.boundary_weight << " at M=" << m
              << "; consider a larger cutoff\n";
  const auto h_post = quench::rotor2::build_hamiltonian(m, 0.0, opt.kappa);
  const auto spec = quench::numerics::eig_sym(Eigen::MatrixXd(h_post));
  const Eigen::VectorXcd psi0 = ground.amplitudes.cast<std::complex<double>>();

  quench::cho2::ChoQuench ref{std::sqrt(opt.omega_sq), opt.kappa, 0.0};

  table.columns = {{"t", "time after the quench"},
                   {"S_CR", "rotor single-site entropy, nats"},
                   {"S_CHO_ref", "oscillator closed-form entropy, nats"},
                   {"cos_plus", "<cos(x1+x2)>"},
                   {"cos_minus", "<cos(x1-x2)>"}};
  double s_max = 0.0;
  for (double t : ts) {
    const auto psi = quench::rotor2::evolve(spec, psi0, t);
    const double s =
        quench::rotor2::entanglement_entropy(quench::rotor2::reduce_site(psi, m));
    const double s_ref = quench::cho2::entanglement_point(ref, t).entropy;
    table.rows.push_back(
        {t, s, s_ref,
         quench::rotor2::expectation_cos(psi, m, quench::rotor2::CosObservable::sum),
         quench::rotor2::expectation_cos(psi, m,
                                         quench::rotor2::CosObservable::diff)});
    s_max = std::max(s_max, s);
  }
  scalars["cutoff"] = m;
  scalars["ground_energy"] = ground.energy;
  scalars["boundary_weight"] = ground.boundary_weight;
  scalars["S_CR_max"] = s_max;
}

void run_ensembles(const Options& opt, Table& table, json& scalars) {
  const int m = resolve_cutoff(opt);
  const auto ts =
      parse_time_grid(opt.time_grid.empty() ? "0:30:300" : opt.time_grid);

  const auto h_pre = quench::rotor2::build_hamiltonian(m, opt.omega_sq, opt.kappa);
  const auto ground = quench::rotor2::ground_state(h_pre, m, 1.0);
  if (ground.boundary_weight > 1e-8)
    std::cerr << "warning: ground-state boundary weight "
              << ground.boundary_weight << " at M=" << m
              << "; consider a larger cutoff\n";
  const auto h_post = quench::rotor2::build_hamiltonian(m, 0.0, opt.kappa);
  const auto spec = quench::numerics::eig_sym(Eigen::MatrixXd(h_post));
  const Eigen::VectorXcd psi0 = ground.amplitudes.cast<std::complex<double>>();

  const auto de = quench::ensembles::diagonal_ensemble(spec, ground.amplitudes);
  const auto bde =
      quench::ensembles::block_diagonal_ensemble(spec, ground.amplitudes);
  const double s_de =
      quench::ensembles::entropy(quench::ensembles::reduce_site_mixed(de, m));
  const double s_bde =
      quench::ensembles::entropy(quench::ensembles::reduce_site_mixed(bde, m));

  const auto [e_plus, e_minus] =
      quench::ensembles::conserved_energies(psi0, m, opt.kappa);
  const auto gge = quench::ensembles::gge_solve(opt.kappa, m, e_plus, e_minus);
  const double s_gge = quench::ensembles::gge_reduced_entropy(gge, opt.kappa, m);
  const double s_est = quench::ensembles::analytic_gge_estimate(
      std::sqrt(opt.omega_sq), opt.kappa);
  const auto bound = quench::ensembles::uniform_bound(e_plus + e_minus);

  table.columns = {{"t", "time after the quench"},
                   {"S_CR", "rotor single-site entropy, nats"}};
  double s_max = 0.0;
  for (double t : ts) {
    const auto psi = quench::rotor2::evolve(spec, psi0, t);
    const double s =
        quench::rotor2::entanglement_entropy(quench::rotor2::reduce_site(psi, m));
    table.rows.push_back({t, s});
    s_max = std::max(s_max, s);
  }
  scalars["cutoff"] = m;
  scalars["boundary_weight"] = ground.boundary_weight;
  scalars["S_CR_max"] = s_max;
  scalars["S_DE"] = s_de;
  scalars["S_BDE"] = s_bde;
  scalars["S_GGE"] = s_gge;
  scalars["S_estimate"] = s_est;
  scalars["E_plus"] = e_plus;
  scalars["E_minus"] = e_minus;
  scalars["lambda_plus"] = gge.lambda_plus;
  scalars["lambda_minus"] = gge.lambda_minus;
  scalars["beta_star"] = bound.beta_star;
  scalars["bound"] = bound.bound;
}

void run_chain_harmonic(const Options& opt, Table& table, json& scalars) {
  quench::chains::ChainParams p{opt.sites, opt.omega_sq, opt.kappa, opt.omega_f};
  const auto ts = parse_time_grid(
      opt.time_grid.empty() ? "log:1e-1:1e3:200" : opt.time_grid);

  table.columns = {{"t", "time after the quench"},
                   {"S_half", "half-chain entanglement entropy, nats"}};
  double s_max = 0.0;
  for (double t : ts) {
    const auto gamma = quench::chains::evolve_covariance(p, t);
    const double s = quench::chains::half_chain_entropy(gamma, opt.sites / 2);
    table.rows.push_back({t, s});
    s_max = std::max(s_max, s);
  }
  scalars["sites"] = opt.sites;
  scalars["S_half_max"] = s_max;
}

void run_chain_rotor(const Options& opt, Table& table, json& scalars) {
  if (opt.sites < 2 || opt.sites > 4)
    throw std::invalid_argument("chain-rotor: sites must be 2..4");
  const int m = opt.cutoff == "auto" ? 4 : std::stoi(opt.cutoff);
  const auto ts =
      parse_time_grid(opt.time_grid.empty() ? "0:40:200" : opt.time_grid);

  const auto result = quench::chains::rotor_chain_dynamics(
      opt.sites, m, opt.omega_sq, opt.kappa, ts);

  table.columns = {{"t", "time after the quench"},
                   {"S_half", "half-chain entanglement entropy, nats"}};
  double s_max = 0.0;
  for (size_t i = 0; i < result.times.size(); ++i) {
    table.rows.push_back({result.times[i], result.entropies[i]});
    s_max = std::max(s_max, result.entropies[i]);
  }
  scalars["sites"] = opt.sites;
  scalars["cutoff"] = m;
  scalars["ground_energy"] = result.ground_energy;
  scalars["boundary_weight"] = result.boundary_weight;
  scalars["S_half_max"] = s_max;
}

void run_fieldtheory(const Options& opt, Table& table, json& scalars) {
  const auto p = condensate_from(opt);
  const auto tc = quench::fieldtheory::compactness_timescale(p);
  const auto lattice = quench::fieldtheory::lattice_map(p, opt.sites);

  table.columns = {{"k", "mode index"},
                   {"Omega_i", "pre-quench mode frequency (dimensionless)"},
                   {"Omega_f", "post-quench mode frequency (dimensionless)"},
                   {"r_k", "freezing ratio; 0 for the zero mode"}};
  for (int k = 0; k <= opt.kmax; ++k) {
    const auto mode = quench::fieldtheory::mode_frequencies(p, k);
    const double r =
        k == 0 ? 0.0 : quench::fieldtheory::freezing_ratio(p, k).r_k;
    table.rows.push_back({static_cast<double>(k), mode.omega_pre,
                          mode.omega_post, r});
  }
  scalars["t_c"] = tc.t_c;
  scalars["t_c_exact"] = tc.t_c_exact;
  scalars["sigma_phase_sq"] = tc.sigma_phase_sq;
  scalars["sigma_density_sq"] = tc.sigma_density_sq;
  scalars["deep_quench"] = tc.deep_quench;
  scalars["lattice_omega_sq"] = lattice.omega_sq;
  scalars["lattice_kappa"] = lattice.kappa;
  scalars["lattice_spacing"] = lattice.spacing;
  scalars["lattice_time_unit"] = lattice.time_unit;
  if (!tc.deep_quench)
    std::cerr << "warning: deep-quench assumption not satisfied; the "
                 "simplified t_c is unreliable, use t_c_exact\n";
}

void apply_preset(Options& opt) {
  if (opt.preset.empty()) return;
  const auto p = quench::presets::find(opt.preset);
  if (!p) throw std::invalid_argument("unknown preset: " + opt.preset);
  if (p->condensate) {
    const auto& c = *p->condensate;
    opt.length = c.length;
    opt.density_1d = c.density_1d;
    opt.g_1d = c.g_1d;
    opt.mass = c.mass;
    opt.tunnel_rate = c.tunnel_rate;
    opt.temperature = c.temperature;
  } else {
    opt.omega_sq = p->omega_sq;
    opt.kappa = p->kappa;
    if (!p->chain_sizes.empty()) opt.sites = p->chain_sizes.back();
  }
}

int run_scenario(Options opt) {
  apply_preset(opt);
  if (opt.threads > 0) Eigen::setNbThreads(opt.threads);

  std::filesystem::create_directories(opt.output);
  const std::filesystem::path dir(opt.output);

  const auto t0 = std::chrono::steady_clock::now();
  Table table;
  json scalars;
  if (opt.scenario == "cho2")
    run_cho2(opt, table, scalars);
  else if (opt.scenario == "rotor2")
    run_rotor2(opt, table, scalars);
  else if (opt.scenario == "ensembles")
    run_ensembles(opt, table, scalars);
  else if (opt.scenario == "chain-harmonic")
    run_chain_harmonic(opt, table, scalars);
  else if (opt.scenario == "chain-rotor")
    run_chain_rotor(opt, table, scalars);
  else if (opt.scenario == "fieldtheory")
    run_fieldtheory(opt, table, scalars);
  else
    throw std::invalid_argument("unknown scenario: " + opt.scenario);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();

  write_csv(dir / (opt.scenario + ".csv"), table);
  write_schema(dir / (opt.scenario + "_schema.json"), table);

  json summary;
  summary["scenario"] = opt.scenario;
  summary["version"] = kVersion;
  summary["config"] = config_echo(opt);
  summary["wall_time_s"] = wall;
  summary["rows"] = table.rows.size();
  summary["scalars"] = scalars;
  std::ofstream out(dir / (opt.scenario + "_summary.json"));
  out << summary.dump(2) << "\n";

  std::cout << opt.scenario << ": " << table.rows.size() << " rows -> "
            << (dir / (opt.scenario + ".csv")).string() << "\n";
  return 0;
}

void list_presets() {
  for (const auto& p : quench::presets::all()) {
    std::cout << p.name << ": " << p.description;
    if (p.condensate) {
      const auto& c = *p.condensate;
      std::cout << " (L=" << c.length << " m, n1D=" << c.density_1d
                << " 1/m, J=" << c.tunnel_rate << " 1/s, T=" << c.temperature
                << " K)";
    } else {
      std::cout << " (omega_sq=" << p.omega_sq << ", kappa=" << p.kappa;
      if (!p.chain_sizes.empty()) {
        std::cout << ", N in {";
        for (size_t i = 0; i < p.chain_sizes.size(); ++i)
          std::cout << (i ? "," : "") << p.chain_sizes[i];
        std::cout << "}";
      }
      std::cout << ")";
    }
    std::cout << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"post-quench entanglement dynamics of coupled oscillators, "
               "rotors and chains"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* presets_cmd = app.add_subcommand("presets", "list named parameter sets");

  Options opt;
  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run a scenario and export data");
  run_cmd->add_option("scenario", opt.scenario,
                      "cho2 | rotor2 | ensembles | chain-harmonic | "
                      "chain-rotor | fieldtheory")
      ->required();
  auto* o_omega = run_cmd->add_option("--omega-sq", opt.omega_sq,
                                      "pre-quench on-site strength omega^2");
  auto* o_kappa = run_cmd->add_option("--kappa", opt.kappa, "coupling");
  auto* o_omegaf =
      run_cmd->add_option("--omega-f", opt.omega_f, "post-quench frequency");
  auto* o_cutoff = run_cmd->add_option("--M,--cutoff", opt.cutoff,
                                       "momentum cutoff M, or 'auto'");
  auto* o_sites = run_cmd->add_option("--sites,-N", opt.sites, "chain length");
  auto* o_grid = run_cmd->add_option(
      "--t", opt.time_grid, "time grid, start:stop:count or log:start:stop:count");
  auto* o_preset = run_cmd->add_option("--preset", opt.preset, "named preset");
  auto* o_output = run_cmd->add_option("--output,-o", opt.output,
                                       "output directory (default: .)");
  auto* o_seed = run_cmd->add_option("--seed", opt.seed, "RNG seed");
  auto* o_threads =
      run_cmd->add_option("--threads", opt.threads, "internal parallelism");
  auto* o_kmax =
      run_cmd->add_option("--kmax", opt.kmax, "highest reported field mode");
  auto* o_length = run_cmd->add_option("--length", opt.length, "L, m");
  auto* o_density =
      run_cmd->add_option("--density-1d", opt.density_1d, "n_1D, 1/m");
  auto* o_g = run_cmd->add_option("--g-1d", opt.g_1d, "interaction strength");
  auto* o_mass = run_cmd->add_option("--mass", opt.mass, "atomic mass, kg");
  auto* o_tunnel =
      run_cmd->add_option("--tunnel-rate", opt.tunnel_rate, "J, 1/s");
  auto* o_temp =
      run_cmd->add_option("--temperature", opt.temperature, "T, K");
  run_cmd->add_option("--config", config_path,
                      "flat key=value config file; flags override it");

  // Apply the config file before CLI11 overrides the bound variables.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") config_path = argv[i + 1];

  try {
    if (!config_path.empty()) {
      const auto kv = load_config(config_path);
      auto get = [&](const char* key, auto& target) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        std::istringstream ss(it->second);
        ss >> target;
        if (ss.fail())
          throw std::invalid_argument(std::string("config: bad value for ") +
                                      key);
      };
      get("scenario", opt.scenario);
      get("omega_sq", opt.omega_sq);
      get("kappa", opt.kappa);
      get("omega_f", opt.omega_f);
      get("m", opt.cutoff);
      get("cutoff", opt.cutoff);
      get("sites", opt.sites);
      get("t", opt.time_grid);
      get("preset", opt.preset);
      get("output", opt.output);
      get("seed", opt.seed);
      get("threads", opt.threads);
      get("kmax", opt.kmax);
      get("length", opt.length);
      get("density_1d", opt.density_1d);
      get("g_1d", opt.g_1d);
      get("mass", opt.mass);
      get("tunnel_rate", opt.tunnel_rate);
      get("temperature", opt.temperature);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  (void)o_omega; (void)o_kappa; (void)o_omegaf; (void)o_cutoff; (void)o_sites;
  (void)o_grid; (void)o_preset; (void)o_output; (void)o_seed; (void)o_threads;
  (void)o_kmax; (void)o_length; (void)o_density; (void)o_g; (void)o_mass;
  (void)o_tunnel; (void)o_temp;

  try {
    if (presets_cmd->parsed()) {
      list_presets();
      return 0;
    }
    return run_scenario(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
