// mallows: command-line front end.
//
//   mallows ztable    --n 5 --out z5.txt
//   mallows simulate  --rho 2,1,4,3 --theta 0.06 --count 30 --seed 7 --out s.csv
//   mallows fit       --data s.csv --rho0 2,1,3,4 --n0 5 --out fit.json
//   mallows elicit    --covariates cov.csv --orient oil=lower --out rho0.json
//   mallows reproduce table1 --out table1.txt
//   mallows rerun     table1.txt.manifest.json
//
// Exit codes: 0 ok, 2 usage, 3 invalid data, 4 numerical failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mallows/errors.hpp"
#include "mallows/inference.hpp"
#include "mallows/io.hpp"
#include "mallows/model.hpp"
#include "mallows/partition.hpp"
#include "mallows/prior.hpp"
#include "mallows/reproduce.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace mallows;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Collects what a command read and wrote, for the run manifest.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  json config = json::object();
  std::optional<std::uint64_t> seed;
  json inputs = json::object();
  json outputs = json::object();

  void input(const std::string& path, const std::string& bytes) { inputs[path] = digest_hex(bytes); }
};

void write_output(Manifest& m, const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << bytes;
  if (!out) throw ValidationError("failed writing " + path.string());
  m.outputs[path.string()] = digest_hex(bytes);
}

void write_manifest(const Manifest& m, const fs::path& path, double wall_seconds) {
  json j;
  j["command"] = m.command;
  j["argv"] = m.argv;
  j["config"] = m.config;
  j["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  j["wall_time_seconds"] = wall_seconds;
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write manifest " + path.string());
  out << j.dump(2) << '\n';
}

fs::path table_dir() {
  const char* dir = std::getenv("MALLOWS_TABLE_DIR");
  return dir ? fs::path(dir) : fs::path();
}

std::string read_input(Manifest& m, const std::string& path) {
  if (!fs::exists(path)) throw ValidationError("input file not found: " + path);
  auto bytes = read_file(path);
  m.input(path, bytes);
  return bytes;
}

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::string s = text;
  for (char& c : s) {
    if (c == ',' || c == '(' || c == ')') c = ' ';
  }
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ValidationError(what + ": '" + tok + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ValidationError(what + " is empty");
  return out;
}

/// "--rho0 2,1,3,4", "--rho0 2.5,2.5,1,4" or "--rho0 topk:1=A,2=D,3=C". Items
/// in top-k form are matched against the data header, else read as 1-based
/// indices.
PermutohedronPoint parse_rho0(const std::string& text, const std::vector<std::string>& items, int n) {
  if (text.rfind("topk:", 0) == 0) {
    std::map<int, int> top;
    for (const auto& part : split_csv_line(text.substr(5))) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw ValidationError("top-k entry '" + part + "' is not <rank>=<item>");
      const auto rank_text = trim(part.substr(0, eq));
      const auto item_text = trim(part.substr(eq + 1));
      int rank = 0;
      try {
        rank = std::stoi(rank_text);
      } catch (const std::exception&) {
        throw ValidationError("top-k rank '" + rank_text + "' is not an integer");
      }
      int item = -1;
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i] == item_text) item = static_cast<int>(i);
      }
      if (item < 0) {
        try {
          item = std::stoi(item_text) - 1;
        } catch (const std::exception&) {
          throw ValidationError("top-k item '" + item_text + "' is neither a column name nor an index");
        }
      }
      if (!top.emplace(item, rank).second) throw ValidationError("item '" + item_text + "' ranked twice");
    }
    return elicit_topk(n, top);
  }
  auto coords = parse_reals(text, "--rho0");
  if (static_cast<int>(coords.size()) != n) throw DimensionMismatch(coords.size(), static_cast<std::size_t>(n));
  return PermutohedronPoint(std::move(coords));
}

json epp_json(const std::map<Ranking, double>& epp) {
  std::vector<std::pair<Ranking, double>> rows(epp.begin(), epp.end());
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  json out = json::array();
  for (const auto& [r, p] : rows) out.push_back({{"rho", r.str()}, {"epp", p}});
  return out;
}

// ---------------------------------------------------------------- ztable

struct ZtableArgs {
  int n = 0;
  std::string out;
  bool allow_long = false;
};

void cmd_ztable(const ZtableArgs& a, Manifest& m) {
  m.config = {{"n", a.n}, {"allow_long", a.allow_long}};
  if (a.n > kEnumerationLimit && !a.allow_long && a.n <= kLongEnumerationLimit) {
    throw LimitExceeded("n=" + std::to_string(a.n) + " is above " + std::to_string(kEnumerationLimit) +
                        "; pass --allow-long to enumerate up to n=" + std::to_string(kLongEnumerationLimit));
  }
  const auto table = build_frequency_table(a.n, a.allow_long);
  std::ostringstream os;
  save_table(table, os);
  write_output(m, a.out, os.str());
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string rho;
  double theta = 0.0;
  std::size_t count = 0;
  std::uint64_t seed = 1;
  std::string method = "auto";
  std::size_t burn_in = 1000;
  std::size_t thin = 10;
  int leap = 1;
  std::string out;
};

void cmd_simulate(const SimulateArgs& a, Manifest& m) {
  const MmsParams params(parse_ranking(a.rho), a.theta);
  std::string method = a.method;
  if (method == "auto") method = params.rho.size() <= kEnumerationLimit ? "exact" : "mcmc";
  m.seed = a.seed;
  m.config = {{"rho", params.rho.str()}, {"theta", a.theta}, {"count", a.count}, {"method", method}};
  RankingSample s(params.rho.size());
  if (method == "exact") {
    s = sample_exact(params, a.count, RngSeed{a.seed});
  } else if (method == "mcmc") {
    if (params.rho.size() >= 2 && (a.leap < 1 || a.leap > params.rho.size() - 1)) {
      throw UsageError("--leap must lie in [1, n-1]");
    }
    ChainSettings cs;
    cs.burn_in = a.burn_in;
    cs.thin = a.thin;
    cs.leap = a.leap;
    m.config["burn_in"] = a.burn_in;
    m.config["thin"] = a.thin;
    m.config["leap"] = a.leap;
    s = sample_mcmc(params, a.count, cs, RngSeed{a.seed});
  } else {
    throw UsageError("--method must be auto, exact or mcmc");
  }
  std::ostringstream os;
  write_rankings_csv(os, s);
  write_output(m, a.out, os.str());
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string data;
  std::string rho0;
  std::optional<double> n0;
  std::optional<double> eta0;
  std::string theta_prior = "jeffreys";
  bool theta_prior_given = false;
  std::string inference_case;
  std::optional<double> theta;
  bool exact = false;
  std::size_t iterations = 55000;
  std::size_t burn_in = 5000;
  std::size_t thin = 1;
  int leap = 1;
  double theta_sd = 0.5;
  std::uint64_t seed = 1;
  int chains = 1;
  std::string out;
  std::string trace;
};

void check_fit_flags(const FitArgs& a) {
  if (a.n0 && a.eta0) throw UsageError("--n0 and --eta0 are mutually exclusive");
  if ((a.n0 || a.eta0) && a.rho0.empty()) throw UsageError("--n0/--eta0 need --rho0");
  if (!a.rho0.empty() && !a.n0 && !a.eta0) throw UsageError("--rho0 needs a precision: --n0 or --eta0");
  if (a.inference_case == "a" && a.n0) throw UsageError("--case a takes --eta0, not --n0");
  if ((a.inference_case == "b" || a.inference_case == "c") && !a.n0) {
    throw UsageError("--case " + a.inference_case + " needs --n0 (eta0 = theta * n0)");
  }
  if (a.theta && a.theta_prior_given) throw UsageError("--theta fixes theta; --theta-prior would be unused");
  if (a.inference_case == "c" && a.theta_prior_given) {
    throw UsageError("--case c implies a theta prior proportional to Z*; drop --theta-prior");
  }
  if (a.exact && a.chains != 1) throw UsageError("--exact does not run chains; drop --chains");
  if (a.exact && !a.trace.empty()) throw UsageError("--exact produces no trace; drop --trace");
  if (a.chains < 1) throw UsageError("--chains must be >= 1");
  if (a.burn_in >= a.iterations) throw UsageError("--burn-in must be smaller than --iterations");
}

void cmd_fit(FitArgs a, Manifest& m) {
  check_fit_flags(a);
  const auto text = read_input(m, a.data);
  const auto dataset = parse_rankings_csv(text);
  const auto& s = dataset.sample;
  const int n = s.n();

  std::optional<EmmsPrior> prior;
  if (a.rho0.empty()) {
    prior.emplace(EmmsPrior::uniform(n));
  } else if (a.n0) {
    prior.emplace(parse_rho0(a.rho0, dataset.items, n), LinkedPrecision{*a.n0});
  } else {
    prior.emplace(parse_rho0(a.rho0, dataset.items, n), FixedPrecision{*a.eta0});
  }
  if (a.inference_case.empty()) a.inference_case = a.n0 ? (n <= kEnumerationLimit ? "b" : "c") : "a";
  const auto icase = parse_case(a.inference_case);
  const ThetaPrior theta_prior =
      icase == InferenceCase::c_linked_large_n ? ThetaPrior::zstar_proportional() : ThetaPrior::parse(a.theta_prior);

  m.config = {{"data", a.data},
              {"n", n},
              {"N", s.size()},
              {"rho0", prior->rho0().str()},
              {"precision", a.n0 ? json{{"n0", *a.n0}} : json{{"eta0", prior->eta0()}}},
              {"case", to_string(icase)},
              {"theta_prior", a.theta ? json(nullptr) : json(theta_prior.str())},
              {"fixed_theta", a.theta ? json(*a.theta) : json(nullptr)},
              {"exact", a.exact}};

  json summary;
  if (a.exact) {
    if (a.theta) {
      summary["epp"] = epp_json(exact_posterior_fixed_theta(s, *a.theta, *prior));
      summary["theta_mean"] = *a.theta;
    } else {
      const auto joint = exact_posterior_joint(s, *prior, theta_prior);
      summary["epp"] = epp_json(joint.rho);
      summary["theta_mean"] = joint.theta_mean;
    }
    summary["method"] = "exact";
  } else {
    McmcConfig cfg;
    cfg.iterations = a.iterations;
    cfg.burn_in = a.burn_in;
    cfg.thin = a.thin;
    cfg.leap = a.leap;
    cfg.theta_proposal_sd = a.theta_sd;
    cfg.seed = RngSeed{a.seed};
    cfg.inference_case = icase;
    cfg.fixed_theta = a.theta;
    m.seed = a.seed;
    m.config["iterations"] = a.iterations;
    m.config["burn_in"] = a.burn_in;
    m.config["thin"] = a.thin;
    m.config["leap"] = a.leap;
    m.config["theta_sd"] = a.theta_sd;
    m.config["chains"] = a.chains;
    const auto table = table_for(n, table_dir(), n > kEnumerationLimit);
    const auto traces = run_chains(s, *prior, theta_prior, cfg, table, a.chains);
    const auto merged = merge_traces(traces);
    const auto sum = summarize(merged);
    summary["method"] = "mcmc";
    summary["epp"] = epp_json(sum.epp);
    summary["theta_mean"] = sum.theta_mean;
    summary["theta_ci"] = {sum.theta_ci.first, sum.theta_ci.second};
    summary["accept_rho"] = merged.accept_rho;
    summary["accept_theta"] = merged.accept_theta;
    summary["states"] = sum.states;
    if (a.chains > 1) summary["cross_chain_max_discrepancy"] = cross_chain_discrepancy(traces);
    if (!a.trace.empty()) {
      std::ostringstream os;
      write_trace_csv(os, merged);
      write_output(m, a.trace, os.str());
    }
  }
  const json epp = summary["epp"];
  summary["map"] = epp.empty() ? json(nullptr) : epp.front()["rho"];
  summary["map_tied"] = epp.size() > 1 && epp[0]["epp"] == epp[1]["epp"];
  json doc;
  doc["summary"] = summary;
  doc["config"] = m.config;
  doc["seed"] = m.seed ? json(*m.seed) : json(nullptr);
  write_output(m, a.out, doc.dump(2) + "\n");
}

// ---------------------------------------------------------------- elicit

struct ElicitArgs {
  std::string covariates;
  bool sushi = false;
  std::vector<std::string> orient;
  std::string out;
  std::string table_out;
};

json elicitation_json(const std::vector<std::string>& items, const CovariateElicitation& e) {
  json j;
  j["items"] = items;
  j["covariates"] = e.covariates;
  json cols = json::object();
  for (std::size_t c = 0; c < e.covariates.size(); ++c) cols[e.covariates[c]] = e.rank_vectors[c];
  j["rank_vectors"] = cols;
  j["rho01"] = std::vector<double>(e.rho0.begin(), e.rho0.end());
  j["rho02"] = midrank_vector(e.rho0.coords());
  j["warnings"] = e.warnings;
  return j;
}

void cmd_elicit(const ElicitArgs& a, Manifest& m) {
  if (a.sushi == !a.covariates.empty()) throw UsageError("give exactly one of --covariates or --sushi");
  const std::string text = a.sushi ? reproduce::sushi_covariates_csv() : read_input(m, a.covariates);
  const auto table = parse_covariates_csv(text);
  std::vector<Orientation> orientations(table.covariates.size(), Orientation::higher_is_better);
  if (a.sushi) orientations = reproduce::sushi_orientations();
  for (const auto& o : a.orient) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw UsageError("--orient takes <covariate>=lower|higher, got '" + o + "'");
    const auto name = o.substr(0, eq);
    const auto dir = o.substr(eq + 1);
    auto it = std::find(table.covariates.begin(), table.covariates.end(), name);
    if (it == table.covariates.end()) throw UsageError("--orient: no covariate named '" + name + "'");
    if (dir != "lower" && dir != "higher") throw UsageError("--orient direction must be lower or higher");
    orientations[static_cast<std::size_t>(it - table.covariates.begin())] =
        dir == "lower" ? Orientation::lower_is_better : Orientation::higher_is_better;
  }
  json orient = json::object();
  for (std::size_t c = 0; c < table.covariates.size(); ++c) {
    orient[table.covariates[c]] = orientations[c] == Orientation::lower_is_better ? "lower" : "higher";
  }
  m.config = {{"source", a.sushi ? "embedded sushi covariates" : a.covariates}, {"orientation", orient}};
  const auto e = elicit_from_covariates(table, orientations);
  for (const auto& w : e.warnings) std::cerr << "warning: " << w << '\n';
  write_output(m, a.out, elicitation_json(table.items, e).dump(2) + "\n");
  if (!a.table_out.empty()) {
    reproduce::SushiResult r{e, table.items, {}};
    write_output(m, a.table_out, reproduce::format_sushi_table(r));
  }
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
  std::string which;
  std::size_t iterations = 55000;
  std::size_t burn_in = 5000;
  std::uint64_t seed = reproduce::kTable1ChainSeed;
  std::string inference_case = "b";
  bool exact = false;
  std::string out;
};

void cmd_reproduce(const ReproduceArgs& a, Manifest& m) {
  std::string text;
  if (a.which == "table1") {
    if (a.burn_in >= a.iterations) throw UsageError("--burn-in must be smaller than --iterations");
    reproduce::Table1Options opt;
    opt.iterations = a.iterations;
    opt.burn_in = a.burn_in;
    opt.seed = a.seed;
    opt.inference_case = parse_case(a.inference_case);
    if (opt.inference_case == InferenceCase::a_independent) throw UsageError("table1 uses eta0 = theta N0: case b or c");
    opt.exact = a.exact;
    m.seed = a.seed;
    m.config = {{"table", "table1"},
                {"sample_seed", reproduce::kTable1SampleSeed},
                {"iterations", a.iterations},
                {"burn_in", a.burn_in},
                {"case", a.inference_case},
                {"exact", a.exact}};
    text = reproduce::format_table1(reproduce::reproduce_table1(opt));
  } else if (a.which == "sushi") {
    m.config = {{"table", "sushi"}};
    const auto r = reproduce::reproduce_sushi();
    std::ostringstream os;
    os << reproduce::format_sushi_table(r);
    os << "rho01";
    for (double v : r.elicitation.rho0) os << ',' << v;
    os << "\nrho02";
    for (double v : r.rho02) os << ',' << v;
    os << '\n';
    text = os.str();
  } else {
    throw UsageError("reproduce takes table1 or sushi");
  }
  std::cout << text;
  if (a.out.empty()) {
    m.outputs["<stdout>"] = digest_hex(text);
  } else {
    write_output(m, a.out, text);
  }
}

// ---------------------------------------------------------------- driver

int run(const std::vector<std::string>& args, bool from_rerun);

int cmd_rerun(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw ValidationError("cannot read manifest " + manifest_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("manifest is not valid JSON: ") + e.what());
  }
  const auto argv = j.at("argv").get<std::vector<std::string>>();
  const auto recorded = j.at("outputs");
  const int rc = run(argv, true);
  if (rc != 0) return rc;
  int mismatches = 0;
  for (const auto& [path, digest] : recorded.items()) {
    if (path == "<stdout>") continue;
    const auto now = fs::exists(path) ? digest_hex(read_file(path)) : std::string("missing");
    const bool same = now == digest.get<std::string>();
    std::cout << (same ? "identical " : "DIFFERENT ") << path << '\n';
    mismatches += !same;
  }
  return mismatches == 0 ? 0 : kExitNumeric;
}

int run(const std::vector<std::string>& args, bool from_rerun) {
  CLI::App app{"Bayesian inference for the Mallows model with Spearman's distance", "mallows"};
  app.require_subcommand(1);
  std::string manifest_path;

  ZtableArgs za;
  auto* zt = app.add_subcommand("ztable", "Write the distance-frequency table for n");
  zt->add_option("--n", za.n, "Number of items")->required();
  zt->add_option("--out", za.out, "Output file")->required();
  zt->add_flag("--allow-long", za.allow_long, "Permit n up to 13 (slow)");

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "Draw rankings from the Mallows model");
  sim->add_option("--rho", sa.rho, "Consensus ranking, e.g. 2,1,4,3")->required();
  sim->add_option("--theta", sa.theta, "Precision")->required();
  sim->add_option("--count,-N", sa.count, "Number of rankings")->required();
  sim->add_option("--seed", sa.seed, "RNG seed");
  sim->add_option("--method", sa.method, "auto, exact or mcmc");
  sim->add_option("--burn-in", sa.burn_in, "MCMC burn-in");
  sim->add_option("--thin", sa.thin, "MCMC thinning");
  sim->add_option("--leap", sa.leap, "Leap-and-Shift window");
  sim->add_option("--out", sa.out, "Output rankings CSV")->required();

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Posterior inference for (rho, theta)");
  fit->add_option("--data", fa.data, "Rankings CSV")->required();
  fit->add_option("--rho0", fa.rho0, "Prior mode: a point of the permutohedron or topk:1=A,2=B,...");
  fit->add_option("--n0", fa.n0, "Prior sample size (eta0 = theta * n0)");
  fit->add_option("--eta0", fa.eta0, "Prior precision independent of theta");
  auto* tp = fit->add_option("--theta-prior", fa.theta_prior, "jeffreys, exp:<rate> or flat:<upper>");
  fit->add_option("--case", fa.inference_case, "Inference case a, b or c");
  fit->add_option("--theta", fa.theta, "Hold theta fixed at this value");
  fit->add_flag("--exact", fa.exact, "Enumerate the posterior instead of sampling");
  fit->add_option("--iterations", fa.iterations, "Total MCMC iterations including burn-in");
  fit->add_option("--burn-in", fa.burn_in, "Burn-in iterations");
  fit->add_option("--thin", fa.thin, "Keep every k-th state");
  fit->add_option("--leap", fa.leap, "Leap-and-Shift window");
  fit->add_option("--theta-sd", fa.theta_sd, "Initial log-normal proposal sd");
  fit->add_option("--seed", fa.seed, "RNG seed");
  fit->add_option("--chains", fa.chains, "Independent chains");
  fit->add_option("--out", fa.out, "Summary JSON")->required();
  fit->add_option("--trace", fa.trace, "Trace CSV");

  ElicitArgs ea;
  auto* eli = app.add_subcommand("elicit", "Prior mode from item covariates");
  eli->add_option("--covariates", ea.covariates, "Covariates CSV (items as rows)");
  eli->add_flag("--sushi", ea.sushi, "Use the embedded sushi covariates");
  eli->add_option("--orient", ea.orient, "<covariate>=lower|higher (which end is preferred)");
  eli->add_option("--out", ea.out, "Output JSON")->required();
  eli->add_option("--table", ea.table_out, "Also write the rank-vector table as CSV");

  ReproduceArgs ra;
  auto* rep = app.add_subcommand("reproduce", "Regenerate a reference table");
  rep->add_option("table", ra.which, "table1 or sushi")->required();
  rep->add_option("--iterations", ra.iterations, "Total MCMC iterations including burn-in");
  rep->add_option("--burn-in", ra.burn_in, "Burn-in iterations");
  rep->add_option("--seed", ra.seed, "Chain seed");
  rep->add_option("--case", ra.inference_case, "Inference case b or c");
  rep->add_flag("--exact", ra.exact, "Enumerate instead of sampling");
  rep->add_option("--out", ra.out, "Also write the table to this file");

  std::string rerun_path;
  auto* rerun = app.add_subcommand("rerun", "Re-run a command from its manifest and compare outputs");
  rerun->add_option("manifest", rerun_path, "Manifest JSON")->required();

  for (auto* sc : {zt, sim, fit, eli, rep}) {
    sc->add_option("--manifest", manifest_path, "Manifest path (default <out>.manifest.json)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  if (rerun->parsed()) {
    if (from_rerun) throw UsageError("a manifest cannot re-run another rerun");
    return cmd_rerun(rerun_path);
  }

  Manifest m;
  m.argv = args;
  const auto start = std::chrono::steady_clock::now();
  std::string primary_out;
  if (zt->parsed()) {
    m.command = "ztable";
    cmd_ztable(za, m);
    primary_out = za.out;
  } else if (sim->parsed()) {
    m.command = "simulate";
    cmd_simulate(sa, m);
    primary_out = sa.out;
  } else if (fit->parsed()) {
    m.command = "fit";
    fa.theta_prior_given = tp->count() > 0;
    cmd_fit(fa, m);
    primary_out = fa.out;
  } else if (eli->parsed()) {
    m.command = "elicit";
    cmd_elicit(ea, m);
    primary_out = ea.out;
  } else {
    m.command = "reproduce";
    cmd_reproduce(ra, m);
    primary_out = ra.out.empty() ? "reproduce-" + ra.which + ".txt" : ra.out;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(m, manifest_path.empty() ? primary_out + ".manifest.json" : manifest_path, wall);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    return run(args, false);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
